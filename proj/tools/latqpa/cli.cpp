#include "latqpa/cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "latqpa/detail/text.hpp"
#include "latqpa/errors.hpp"
#include "latqpa/metrics.hpp"
#include "latqpa/qpa.hpp"
#include "latqpa/rd_eval.hpp"
#include "latqpa/rd_sim.hpp"
#include "latqpa/vector_bank.hpp"

namespace latqpa::cli {

namespace {

namespace fs = std::filesystem;

std::string number(double v, int digits) {
  return digits <= 0 ? detail::shortest_repr(v) : fmt::format("{:.{}g}", v, digits);
}

const CLI::Validator kWritablePath(
    [](const std::string& path) -> std::string {
      const auto parent = fs::path(path).parent_path();
      if (!parent.empty() && !fs::is_directory(parent)) {
        return "directory " + parent.string() + " does not exist";
      }
      return {};
    },
    "WRITABLE_PATH");

// Sends subcommand output to --out when given, else to the data stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) {
    if (path.empty()) {
      stream_ = &fallback;
      return;
    }
    file_.open(path);
    if (!file_) throw Error(ErrorCode::io, "cannot open " + path + " for writing");
    stream_ = &file_;
  }
  std::ostream& stream() { return *stream_; }
  bool to_file() const { return file_.is_open(); }

 private:
  std::ofstream file_;
  std::ostream* stream_ = nullptr;
};

struct QmapOptions {
  int rows = 0;
  double q0 = 0.0;
  double lambda_min = 1.0;
  double lambda_max = 768.0;
  int q_num = 64;
  bool clamp = false;
  std::string out;
  int digits = 6;
};

struct WspsnrOptions {
  std::string ref;
  std::string test;
  int width = 0;
  int height = 0;
  int bit_depth = 8;
  int frames = 1;
  std::string out;
  unsigned threads = 0;
  int digits = 6;
};

struct BdrateOptions {
  std::string ref_curve;
  std::string test_curve;
  std::string method = "pchip";
};

struct SimulateOptions {
  int bands = 0;
  double c = 0.0;
  double k = 0.0;
  std::vector<double> lambda0;
  std::string out;
  int digits = 6;
};

struct BankOptions {
  std::string bank_file;
  std::optional<double> q_tilde;
  std::string qmap;
  std::string bank;
  std::string out;
  int digits = 6;
};

int cmd_qmap(const QmapOptions& o, std::ostream& out) {
  QpaConfig config{o.lambda_min, o.lambda_max, o.q_num, o.q0};
  config.validate();
  const auto map = build_quality_map(o.rows, config, o.clamp);

  Sink sink(o.out, out);
  write_quality_map(sink.stream(), map);

  // Appended as comments when sharing a stream with the document.
  const std::string prefix = sink.to_file() ? "" : "# ";
  out << prefix << "rows = " << map.rows() << '\n'
      << prefix << "min_q = " << number(map.min(), o.digits) << '\n'
      << prefix << "max_q = " << number(map.max(), o.digits) << '\n'
      << prefix << "mean_q = " << number(map.mean(), o.digits) << '\n'
      << prefix << "mean_delta_q = " << number(mean_delta_q(config), o.digits) << '\n';
  return 0;
}

int cmd_wspsnr(const WspsnrOptions& o, std::ostream& out) {
  const VideoSpec spec{o.width, o.height, o.bit_depth, o.frames};
  spec.validate();
  const auto report = sequence_metrics(o.ref, o.test, spec, o.threads);
  Sink sink(o.out, out);
  write_report(sink.stream(), report, o.digits);
  return 0;
}

std::string format_percent(double percent) {
  auto text = fmt::format("{:+.2f}", percent);
  if (text == "+0.00" || text == "-0.00") text = "0.00";
  return text;
}

int cmd_bdrate(const BdrateOptions& o, std::ostream& out) {
  const auto method = parse_bd_method(o.method);
  const auto ref = load_curve(o.ref_curve);
  const auto test = load_curve(o.test_curve);
  out << format_percent(bd_rate(ref, test, method)) << '\n';
  return 0;
}

int cmd_simulate(const SimulateOptions& o, std::ostream& out) {
  const RdModel model{o.c, o.k};
  model.validate();
  const auto latitudes = erp_band_latitudes(o.bands);
  const auto result = simulate_bd_gain(model, latitudes, o.lambda0);
  Sink sink(o.out, out);
  write_simulation_report(sink.stream(), result, o.digits);
  if (sink.to_file()) out << "bd_rate_percent," << number(result.bd_rate, o.digits) << '\n';
  return 0;
}

std::vector<BankRole> selected_roles(const std::string& name) {
  if (name == "all") return {kBankRoles.begin(), kBankRoles.end()};
  return {parse_bank_role(name)};
}

int cmd_bank_info(const BankOptions& o, std::ostream& out) {
  const auto set = load_bank_set(o.bank_file);
  out << "format = VBANKSET\n"
      << "version = " << kBankContainerVersion << '\n'
      << "q_num = " << set.q_num() << '\n'
      << "banks = " << kBankRoles.size() << '\n';
  for (BankRole role : kBankRoles) {
    out << to_string(role) << ".channels = " << set.bank(role).channels() << '\n';
  }
  return 0;
}

int cmd_bank_interp(const BankOptions& o, std::ostream& out) {
  const auto set = load_bank_set(o.bank_file);
  Sink sink(o.out, out);
  for (BankRole role : selected_roles(o.bank.empty() ? "all" : o.bank)) {
    auto& s = sink.stream();
    s << to_string(role);
    for (double v : interpolate(set.bank(role), *o.q_tilde)) s << ',' << number(v, o.digits);
    s << '\n';
  }
  return 0;
}

int cmd_bank_rowmod(const BankOptions& o, std::ostream& out) {
  const auto set = load_bank_set(o.bank_file);
  const auto map = load_quality_map(o.qmap);
  const auto role = parse_bank_role(o.bank.empty() ? "encoder" : o.bank);
  const auto matrix = row_modulation_matrix(set.bank(role), map);
  Sink sink(o.out, out);
  auto& s = sink.stream();
  s << "row,q_tilde";
  for (int c = 0; c < matrix.channels(); ++c) s << ",c" << c;
  s << '\n';
  for (int r = 0; r < matrix.rows(); ++r) {
    s << r << ',' << number(map.at(r), o.digits);
    for (double v : matrix.row(r)) s << ',' << number(v, o.digits);
    s << '\n';
  }
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Latitude-adaptive quality parameters for equirectangular 360-degree video", "latqpa"};
  app.require_subcommand(1);
  std::function<int()> action;

  const std::string digits_help = "Significant digits of printed values (0 = shortest exact form)";

  QmapOptions qmap;
  auto* qmap_cmd = app.add_subcommand("qmap", "Build the per-row adapted quality map of an ERP plane");
  qmap_cmd->add_option("--rows", qmap.rows, "Rows of the ERP frame or latent plane")->required()->check(CLI::PositiveNumber);
  qmap_cmd->add_option("--q0", qmap.q0, "Base quality parameter")->required();
  qmap_cmd->add_option("--lambda-min", qmap.lambda_min, "Smallest Lagrange multiplier")->capture_default_str();
  qmap_cmd->add_option("--lambda-max", qmap.lambda_max, "Largest Lagrange multiplier")->capture_default_str();
  qmap_cmd->add_option("--q-num", qmap.q_num, "Number of trained quality parameters")->capture_default_str();
  qmap_cmd->add_flag("--clamp", qmap.clamp, "Clip adapted values to [0, q_num - 1]");
  qmap_cmd->add_option("--out", qmap.out, "Quality map document (default: stdout)")->check(kWritablePath);
  qmap_cmd->add_option("--digits", qmap.digits, digits_help)->capture_default_str();
  qmap_cmd->callback([&] { action = [&] { return cmd_qmap(qmap, out); }; });

  WspsnrOptions ws;
  auto* ws_cmd = app.add_subcommand("wspsnr", "PSNR and WS-PSNR of raw I420 sequences");
  ws_cmd->add_option("--ref", ws.ref, "Reference YUV file")->required()->check(CLI::ExistingFile);
  ws_cmd->add_option("--test", ws.test, "Test YUV file")->required()->check(CLI::ExistingFile);
  ws_cmd->add_option("--width", ws.width, "Luma width")->required();
  ws_cmd->add_option("--height", ws.height, "Luma height")->required();
  ws_cmd->add_option("--bit-depth", ws.bit_depth, "8 or 10")->capture_default_str()->check(CLI::IsMember({8, 10}));
  ws_cmd->add_option("--frames", ws.frames, "Frames to compare")->capture_default_str();
  ws_cmd->add_option("--out", ws.out, "Report file (default: stdout)")->check(kWritablePath);
  ws_cmd->add_option("--threads", ws.threads, "Worker threads (0 = all cores)")->capture_default_str();
  ws_cmd->add_option("--digits", ws.digits, digits_help)->capture_default_str();
  ws_cmd->callback([&] { action = [&] { return cmd_wspsnr(ws, out); }; });

  BdrateOptions bd;
  auto* bd_cmd = app.add_subcommand("bdrate", "BD-Rate of a test curve against a reference curve");
  bd_cmd->add_option("--ref-curve", bd.ref_curve, "Reference (rate, quality) file")->required()->check(CLI::ExistingFile);
  bd_cmd->add_option("--test-curve", bd.test_curve, "Test (rate, quality) file")->required()->check(CLI::ExistingFile);
  bd_cmd->add_option("--method", bd.method, "pchip or poly")->capture_default_str()->check(CLI::IsMember({"pchip", "poly"}));
  bd_cmd->callback([&] { action = [&] { return cmd_bdrate(bd, out); }; });

  SimulateOptions sim;
  auto* sim_cmd = app.add_subcommand("simulate", "Exponential R-D model: adapted vs. uniform multipliers");
  sim_cmd->add_option("--bands", sim.bands, "ERP rows, one band each")->required()->check(CLI::PositiveNumber);
  sim_cmd->add_option("--C", sim.c, "Model scale C in D = C exp(-K R)")->required();
  sim_cmd->add_option("--K", sim.k, "Model decay K in D = C exp(-K R)")->required();
  sim_cmd->add_option("--lambda0", sim.lambda0, "Equator multipliers to sweep (comma separated)")
      ->required()
      ->delimiter(',');
  sim_cmd->add_option("--out", sim.out, "Report file (default: stdout)")->check(kWritablePath);
  sim_cmd->add_option("--digits", sim.digits, digits_help)->capture_default_str();
  sim_cmd->callback([&] { action = [&] { return cmd_simulate(sim, out); }; });

  BankOptions bank;
  auto* bank_cmd = app.add_subcommand("bank", "Inspect and interpolate VBANKSET vector banks");
  bank_cmd->require_subcommand(1);
  auto* info_cmd = bank_cmd->add_subcommand("info", "Print container dimensions");
  auto* interp_cmd = bank_cmd->add_subcommand("interp", "Interpolated vector at one quality");
  auto* rowmod_cmd = bank_cmd->add_subcommand("rowmod", "Per-row modulation matrix for a quality map");
  for (auto* sub : {info_cmd, interp_cmd, rowmod_cmd}) {
    sub->add_option("--bank-file", bank.bank_file, "VBANKSET container")->required()->check(CLI::ExistingFile);
  }
  for (auto* sub : {interp_cmd, rowmod_cmd}) {
    sub->add_option("--out", bank.out, "Output file (default: stdout)")->check(kWritablePath);
    sub->add_option("--digits", bank.digits, digits_help)->capture_default_str();
  }
  interp_cmd->add_option("--q-tilde", bank.q_tilde, "Real quality parameter")->required();
  interp_cmd->add_option("--bank", bank.bank, "encoder, decoder, reconstruction, feature or all (default all)");
  rowmod_cmd->add_option("--qmap", bank.qmap, "Quality map document")->required()->check(CLI::ExistingFile);
  rowmod_cmd->add_option("--bank", bank.bank, "encoder, decoder, reconstruction or feature (default encoder)");
  info_cmd->callback([&] { action = [&] { return cmd_bank_info(bank, out); }; });
  interp_cmd->callback([&] { action = [&] { return cmd_bank_interp(bank, out); }; });
  rowmod_cmd->callback([&] { action = [&] { return cmd_bank_rowmod(bank, out); }; });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    return action ? action() : 1;
  } catch (const std::exception& e) {
    err << "latqpa: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace latqpa::cli
