#pragma once

#include <span>
#include <vector>

namespace latqpa {

/// Latitude of the centre of row `row` in an equirectangular plane of `rows`
/// rows. Row 0 is the top (northernmost) row; samples sit at row + 0.5, so
/// no row ever lands exactly on a pole.
double row_to_latitude(int row, int rows);

/// Horizontal stretch of an ERP row relative to the equator, 1 / cos(latitude).
double area_stretch(double latitude);

/// Throws ErrorCode::pole_singularity unless |latitude| < pi/2.
void require_off_pole(double latitude);

class LatitudeGrid {
 public:
  explicit LatitudeGrid(int rows);

  int rows() const noexcept { return static_cast<int>(latitudes_.size()); }
  std::span<const double> latitudes() const noexcept { return latitudes_; }
  std::span<const double> weights() const noexcept { return weights_; }
  double latitude(int row) const { return latitudes_.at(row); }
  double weight(int row) const { return weights_.at(row); }

 private:
  std::vector<double> latitudes_;
  std::vector<double> weights_;
};

/// Per-pixel weights for a plane. ERP weights depend only on the row, so the
/// common case stores one value per row; arbitrary grids are stored densely.
class WeightGrid {
 public:
  static WeightGrid column_invariant(std::vector<double> row_weights, int cols);
  static WeightGrid dense(int rows, int cols, std::vector<double> values);
  static WeightGrid uniform(int rows, int cols, double value = 1.0);

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }
  bool is_column_invariant() const noexcept { return column_invariant_; }

  double at(int row, int col) const {
    return column_invariant_ ? values_[static_cast<std::size_t>(row)]
                             : values_[static_cast<std::size_t>(row) * cols_ + col];
  }

  /// Only meaningful for column-invariant grids.
  std::span<const double> row_weights() const;

  /// Values in storage order: one per row, or rows*cols row-major.
  std::span<const double> storage() const noexcept { return values_; }

  double sum() const;

 private:
  WeightGrid(int rows, int cols, bool column_invariant, std::vector<double> values);

  int rows_ = 0;
  int cols_ = 0;
  bool column_invariant_ = true;
  std::vector<double> values_;
};

/// WS-PSNR weights of an ERP plane: cos(latitude) of each row, constant across columns.
WeightGrid sphere_weight_map(int rows, int cols);

/// Weights for the half-resolution chroma planes of a 4:2:0 frame. The chroma
/// plane is treated as an ERP grid of its own (luma_rows / 2 rows).
WeightGrid chroma_weight_map(int luma_rows, int luma_cols);

}  // namespace latqpa
