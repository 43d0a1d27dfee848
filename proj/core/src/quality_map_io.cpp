#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <string>

#include "latqpa/detail/text.hpp"
#include "latqpa/errors.hpp"
#include "latqpa/qpa.hpp"

namespace latqpa {

namespace {

constexpr std::string_view kFormatName = "latqpa-qmap";
constexpr int kFormatVersion = 1;

}  // namespace

void write_quality_map(std::ostream& out, const QualityMap& map) {
  using detail::shortest_repr;
  const QpaConfig& config = map.config();
  out << "# latitude-adapted quality map, one value per ERP row (top row first)\n"
      << "format = " << kFormatName << '\n'
      << "version = " << kFormatVersion << '\n'
      << "rows = " << map.rows() << '\n'
      << "lambda_min = " << shortest_repr(config.lambda_min) << '\n'
      << "lambda_max = " << shortest_repr(config.lambda_max) << '\n'
      << "q_num = " << config.q_num << '\n'
      << "q0 = " << shortest_repr(config.q0) << '\n'
      << "clamp = " << (map.clamped() ? 1 : 0) << '\n'
      << "q_tilde =";
  for (double q : map.values()) out << ' ' << shortest_repr(q);
  out << '\n';
  if (!out) throw Error(ErrorCode::io, "failed writing quality map");
}

QualityMap read_quality_map(std::istream& in) {
  std::map<std::string, std::string, std::less<>> entries;
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    const auto text = detail::trim(line);
    if (text.empty() || text.front() == '#') continue;
    const auto eq = text.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorCode::parse, "quality map line " + std::to_string(line_number) +
                                        " is not a key = value pair");
    }
    std::string key(detail::trim(text.substr(0, eq)));
    if (!entries.emplace(key, std::string(detail::trim(text.substr(eq + 1)))).second) {
      throw Error(ErrorCode::parse, "duplicate key '" + key + "' in quality map");
    }
  }

  auto require = [&](std::string_view key) -> const std::string& {
    const auto it = entries.find(key);
    if (it == entries.end()) {
      throw Error(ErrorCode::parse, "quality map is missing key '" + std::string(key) + "'");
    }
    return it->second;
  };

  if (require("format") != kFormatName) {
    throw Error(ErrorCode::bad_magic, "not a quality map document: format = " + require("format"));
  }
  if (detail::parse_integer(require("version"), "version") != kFormatVersion) {
    throw Error(ErrorCode::unsupported_version, "quality map version " + require("version"));
  }

  QpaConfig config;
  config.lambda_min = detail::parse_double(require("lambda_min"), "lambda_min");
  config.lambda_max = detail::parse_double(require("lambda_max"), "lambda_max");
  config.q_num = static_cast<int>(detail::parse_integer(require("q_num"), "q_num"));
  config.q0 = detail::parse_double(require("q0"), "q0");
  const auto clamp = detail::parse_integer(require("clamp"), "clamp");
  if (clamp != 0 && clamp != 1) {
    throw Error(ErrorCode::parse, "clamp must be 0 or 1");
  }
  const auto rows = detail::parse_integer(require("rows"), "rows");

  std::vector<double> values;
  for (auto field : detail::split_fields(require("q_tilde"))) {
    values.push_back(detail::parse_double(field, "q_tilde"));
  }
  if (static_cast<long long>(values.size()) != rows) {
    throw Error(ErrorCode::dimension_mismatch, "quality map declares " + std::to_string(rows) +
                                                   " rows but lists " +
                                                   std::to_string(values.size()) + " values");
  }
  return QualityMap(config, clamp == 1, std::move(values));
}

void save_quality_map(const QualityMap& map, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::io, "cannot open " + path.string() + " for writing");
  write_quality_map(out, map);
}

QualityMap load_quality_map(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io, "cannot open " + path.string());
  return read_quality_map(in);
}

}  // namespace latqpa
