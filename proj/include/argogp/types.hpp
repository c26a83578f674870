#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace argogp {

enum class InputMode { Full7D, NoSeason5D };

int active_dims(InputMode mode);
const char* input_mode_name(InputMode mode);
InputMode input_mode_from(const std::string& name);

// Model coordinate order: l, L_s, L_c, p, y, d_s, d_c. NoSeason5D drops the
// last two from all distance computations.
const std::array<const char*, 7>& dim_labels();

struct Measurement {
  std::int64_t profile_id = 0;
  double latitude = 0.0;    // degrees, [-90, 90]
  double longitude = 0.0;   // degrees, [-180, 180]
  double pressure = 0.0;    // dbar, >= 0
  double day_of_year = 1.0; // [1, 366)
  int year = 0;
  double value = 0.0;
};

struct Input7D {
  double l = 0.0;
  double L_s = 0.0;
  double L_c = 1.0;
  double p = 0.0;
  double y = 0.0;
  double d_s = 0.0;
  double d_c = 1.0;
  InputMode mode = InputMode::Full7D;

  std::array<double, 7> coords() const { return {l, L_s, L_c, p, y, d_s, d_c}; }
};

struct Dataset {
  std::vector<Measurement> measurements;
  std::vector<Input7D> inputs;  // index-aligned with measurements
  std::string provenance;

  std::size_t size() const { return measurements.size(); }
  bool empty() const { return measurements.empty(); }
  std::vector<double> values() const;
  std::size_t profile_count() const;
  void append_provenance(const std::string& line);
};

// Structure-of-arrays point storage consumed by the distance kernels.
struct PointSet {
  std::size_t n = 0;
  std::size_t q = 0;
  std::array<std::vector<double>, 7> dim;

  static PointSet from_dataset(const Dataset& d, InputMode mode);
  static PointSet from_inputs(std::span<const Input7D> inputs, InputMode mode);
  static PointSet from_matrix(const Eigen::MatrixXd& pts);  // n x q

  PointSet scaled_by(std::span<const double> w) const;
  PointSet gather(std::span<const std::uint32_t> idx) const;

  std::array<const double*, 7> dim_ptrs() const;
  std::array<double, 7> point(std::size_t i) const;
  void reserve(std::size_t cap);
  void push_point(std::span<const double> x);
};

}  // namespace argogp
