#include "argogp/types.hpp"

#include "argogp/common.hpp"

namespace argogp {

int active_dims(InputMode mode) { return mode == InputMode::Full7D ? 7 : 5; }

const char* input_mode_name(InputMode mode) {
  return mode == InputMode::Full7D ? "Full7D" : "NoSeason5D";
}

InputMode input_mode_from(const std::string& name) {
  if (name == "Full7D" || name == "7d" || name == "7D") return InputMode::Full7D;
  if (name == "NoSeason5D" || name == "5d" || name == "5D") return InputMode::NoSeason5D;
  throw ConfigError("unknown input mode '" + name + "' (expected Full7D or NoSeason5D)");
}

const std::array<const char*, 7>& dim_labels() {
  static const std::array<const char*, 7> labels{"l", "L_s", "L_c", "p", "y", "d_s", "d_c"};
  return labels;
}

std::vector<double> Dataset::values() const {
  std::vector<double> z;
  z.reserve(measurements.size());
  for (const auto& m : measurements) z.push_back(m.value);
  return z;
}

std::size_t Dataset::profile_count() const {
  std::vector<std::int64_t> ids;
  ids.reserve(measurements.size());
  for (const auto& m : measurements) ids.push_back(m.profile_id);
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids.size();
}

void Dataset::append_provenance(const std::string& line) {
  provenance += line;
  provenance += '\n';
}

PointSet PointSet::from_dataset(const Dataset& d, InputMode mode) {
  return from_inputs(d.inputs, mode);
}

PointSet PointSet::from_inputs(std::span<const Input7D> inputs, InputMode mode) {
  PointSet ps;
  ps.n = inputs.size();
  ps.q = static_cast<std::size_t>(active_dims(mode));
  for (std::size_t k = 0; k < ps.q; ++k) ps.dim[k].resize(ps.n);
  for (std::size_t i = 0; i < ps.n; ++i) {
    auto c = inputs[i].coords();
    for (std::size_t k = 0; k < ps.q; ++k) ps.dim[k][i] = c[k];
  }
  return ps;
}

PointSet PointSet::from_matrix(const Eigen::MatrixXd& pts) {
  PointSet ps;
  ps.n = static_cast<std::size_t>(pts.rows());
  ps.q = static_cast<std::size_t>(pts.cols());
  if (ps.q > 7) throw ConfigError("PointSet supports at most 7 dimensions");
  for (std::size_t k = 0; k < ps.q; ++k) {
    ps.dim[k].resize(ps.n);
    for (std::size_t i = 0; i < ps.n; ++i) ps.dim[k][i] = pts(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k));
  }
  return ps;
}

PointSet PointSet::scaled_by(std::span<const double> w) const {
  if (w.size() != q) throw ConfigError("scaling weight dimension mismatch");
  PointSet ps;
  ps.n = n;
  ps.q = q;
  for (std::size_t k = 0; k < q; ++k) {
    ps.dim[k].resize(n);
    for (std::size_t i = 0; i < n; ++i) ps.dim[k][i] = dim[k][i] * w[k];
  }
  return ps;
}

PointSet PointSet::gather(std::span<const std::uint32_t> idx) const {
  PointSet ps;
  ps.n = idx.size();
  ps.q = q;
  for (std::size_t k = 0; k < q; ++k) {
    ps.dim[k].resize(ps.n);
    for (std::size_t i = 0; i < ps.n; ++i) ps.dim[k][i] = dim[k][idx[i]];
  }
  return ps;
}

std::array<const double*, 7> PointSet::dim_ptrs() const {
  std::array<const double*, 7> p{};
  for (std::size_t k = 0; k < q; ++k) p[k] = dim[k].data();
  return p;
}

std::array<double, 7> PointSet::point(std::size_t i) const {
  std::array<double, 7> x{};
  for (std::size_t k = 0; k < q; ++k) x[k] = dim[k][i];
  return x;
}

void PointSet::reserve(std::size_t cap) {
  for (std::size_t k = 0; k < q; ++k) dim[k].reserve(cap);
}

void PointSet::push_point(std::span<const double> x) {
  if (x.size() != q) throw ConfigError("push_point dimension mismatch");
  for (std::size_t k = 0; k < q; ++k) dim[k].push_back(x[k]);
  ++n;
}

}  // namespace argogp
