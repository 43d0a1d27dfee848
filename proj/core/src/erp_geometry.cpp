#include "latqpa/erp_geometry.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "latqpa/errors.hpp"

namespace latqpa {

double row_to_latitude(int row, int rows) {
  if (rows < 1) {
    throw Error(ErrorCode::domain, "row count must be positive, got " + std::to_string(rows));
  }
  if (row < 0 || row >= rows) {
    throw Error(ErrorCode::domain,
                "row " + std::to_string(row) + " outside [0, " + std::to_string(rows) + ")");
  }
  const double n = rows;
  return (n / 2.0 - row - 0.5) * std::numbers::pi / n;
}

void require_off_pole(double latitude) {
  if (!(std::abs(latitude) < std::numbers::pi / 2.0)) {
    throw Error(ErrorCode::pole_singularity,
                "latitude " + std::to_string(latitude) + " is not strictly inside (-pi/2, pi/2)");
  }
}

double area_stretch(double latitude) {
  require_off_pole(latitude);
  return 1.0 / std::cos(latitude);
}

LatitudeGrid::LatitudeGrid(int rows) {
  if (rows < 1) {
    throw Error(ErrorCode::domain, "row count must be positive, got " + std::to_string(rows));
  }
  latitudes_.resize(static_cast<std::size_t>(rows));
  weights_.resize(static_cast<std::size_t>(rows));
  for (int r = 0; r < rows; ++r) {
    latitudes_[r] = row_to_latitude(r, rows);
    weights_[r] = std::cos(latitudes_[r]);
  }
}

namespace {

void check_dims(int rows, int cols) {
  if (rows < 1 || cols < 1) {
    throw Error(ErrorCode::domain, "weight grid dimensions must be positive, got " +
                                       std::to_string(rows) + "x" + std::to_string(cols));
  }
}

void check_weights(std::span<const double> values) {
  for (double w : values) {
    if (!std::isfinite(w) || w < 0.0) {
      throw Error(ErrorCode::domain, "weights must be finite and nonnegative");
    }
  }
}

}  // namespace

WeightGrid::WeightGrid(int rows, int cols, bool column_invariant, std::vector<double> values)
    : rows_(rows), cols_(cols), column_invariant_(column_invariant), values_(std::move(values)) {}

WeightGrid WeightGrid::column_invariant(std::vector<double> row_weights, int cols) {
  const int rows = static_cast<int>(row_weights.size());
  check_dims(rows, cols);
  check_weights(row_weights);
  return WeightGrid(rows, cols, true, std::move(row_weights));
}

WeightGrid WeightGrid::dense(int rows, int cols, std::vector<double> values) {
  check_dims(rows, cols);
  if (values.size() != static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols)) {
    throw Error(ErrorCode::dimension_mismatch, "dense weight grid expects " +
                                                   std::to_string(rows * cols) + " values, got " +
                                                   std::to_string(values.size()));
  }
  check_weights(values);
  return WeightGrid(rows, cols, false, std::move(values));
}

WeightGrid WeightGrid::uniform(int rows, int cols, double value) {
  check_dims(rows, cols);
  return column_invariant(std::vector<double>(static_cast<std::size_t>(rows), value), cols);
}

std::span<const double> WeightGrid::row_weights() const {
  if (!column_invariant_) {
    throw Error(ErrorCode::domain, "row weights requested from a dense weight grid");
  }
  return values_;
}

double WeightGrid::sum() const {
  const double s = std::accumulate(values_.begin(), values_.end(), 0.0);
  return column_invariant_ ? s * cols_ : s;
}

WeightGrid sphere_weight_map(int rows, int cols) {
  check_dims(rows, cols);
  const LatitudeGrid grid(rows);
  return WeightGrid::column_invariant({grid.weights().begin(), grid.weights().end()}, cols);
}

WeightGrid chroma_weight_map(int luma_rows, int luma_cols) {
  if (luma_rows < 2 || luma_cols < 2 || luma_rows % 2 != 0 || luma_cols % 2 != 0) {
    throw Error(ErrorCode::domain, "4:2:0 luma dimensions must be positive and even, got " +
                                       std::to_string(luma_cols) + "x" + std::to_string(luma_rows));
  }
  return sphere_weight_map(luma_rows / 2, luma_cols / 2);
}

}  // namespace latqpa
