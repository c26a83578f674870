#include "argogp/covariance.hpp"

#include <cmath>

#include "argogp/common.hpp"
#include "argogp/kernels.hpp"

namespace argogp {

namespace {

constexpr double kSeriesEps = 1e-16;
constexpr int kMaxIter = 10000;

bool near(double a, double b) { return std::abs(a - b) < 1e-12; }

// gam1 = (1/Gamma(1-mu) - 1/Gamma(1+mu)) / (2 mu), gam2 = their average,
// for |mu| <= 1/2. Direct evaluation cancels near mu = 0, where a short
// Taylor series takes over.
void temme_gammas(double mu, double& gam1, double& gam2, double& one_over_gamma_1_plus,
                  double& one_over_gamma_1_minus) {
  one_over_gamma_1_plus = 1.0 / std::tgamma(1.0 + mu);
  one_over_gamma_1_minus = 1.0 / std::tgamma(1.0 - mu);
  gam2 = 0.5 * (one_over_gamma_1_minus + one_over_gamma_1_plus);
  if (std::abs(mu) < 1e-3) {
    constexpr double euler = 0.57721566490153286061;
    constexpr double a3 = -0.04200263503409523553;  // x^3 coefficient of 1/Gamma(1+x)
    gam1 = -(euler + a3 * mu * mu);
  } else {
    gam1 = (one_over_gamma_1_minus - one_over_gamma_1_plus) / (2.0 * mu);
  }
}

}  // namespace

void KernelParams::validate() const {
  if (!(sigma2 > 0.0) || !std::isfinite(sigma2))
    throw ConfigError("sigma2 must be positive and finite");
  if (ranges.empty()) throw ConfigError("at least one range parameter is required");
  for (double r : ranges)
    if (!(r > 0.0) || !std::isfinite(r)) throw ConfigError("ranges must be positive and finite");
  if (!(nu >= kNuMin && nu <= kNuMax))
    throw ConfigError("nu outside [" + format_double(kNuMin) + ", " + format_double(kNuMax) + "]");
  if (!(tau2 >= 0.0) || !std::isfinite(tau2))
    throw ConfigError("tau2 must be non-negative and finite");
  if (!std::isfinite(mu)) throw ConfigError("mu must be finite");
}

double nu_to_logit(double nu) {
  return std::log((nu - kNuMin) / (kNuMax - nu));
}

double nu_from_logit(double t) {
  double s = 1.0 / (1.0 + std::exp(-t));
  return kNuMin + (kNuMax - kNuMin) * s;
}

double nu_dlogit(double t) {
  double s = 1.0 / (1.0 + std::exp(-t));
  return (kNuMax - kNuMin) * s * (1.0 - s);
}

Eigen::VectorXd to_unconstrained(const KernelParams& p) {
  Eigen::VectorXd u(p.q() + 3);
  u[0] = std::log(p.sigma2);
  for (std::size_t k = 0; k < p.q(); ++k) u[1 + k] = std::log(p.ranges[k]);
  u[p.q() + 1] = nu_to_logit(p.nu);
  u[p.q() + 2] = std::log(p.tau2);
  return u;
}

KernelParams from_unconstrained(const Eigen::VectorXd& u, double mu) {
  if (u.size() < 4) throw ConfigError("unconstrained vector too short");
  KernelParams p;
  std::size_t q = static_cast<std::size_t>(u.size()) - 3;
  p.sigma2 = std::exp(u[0]);
  p.ranges.resize(q);
  for (std::size_t k = 0; k < q; ++k) p.ranges[k] = std::exp(u[1 + k]);
  p.nu = nu_from_logit(u[q + 1]);
  p.tau2 = std::exp(u[q + 2]);
  p.mu = mu;
  return p;
}

BesselKPair bessel_k_pair(double nu, double x) {
  if (!(nu >= 0.0) || !(x > 0.0)) throw NumericError("bessel_k_pair requires nu >= 0 and x > 0");
  int nl = static_cast<int>(nu + 0.5);
  double mu = nu - nl;  // in [-1/2, 1/2]
  double mu2 = mu * mu;
  double rkmu, rk1;

  if (x <= 2.0) {
    double x2 = 0.5 * x;
    double pimu = M_PI * mu;
    double fact = std::abs(pimu) < 1e-15 ? 1.0 : pimu / std::sin(pimu);
    double d = -std::log(x2);
    double e = mu * d;
    double fact2 = std::abs(e) < 1e-15 ? 1.0 : std::sinh(e) / e;
    double gam1, gam2, gampl, gammi;
    temme_gammas(mu, gam1, gam2, gampl, gammi);
    double ff = fact * (gam1 * std::cosh(e) + gam2 * fact2 * d);
    double sum = ff;
    e = std::exp(e);
    double p = 0.5 * e / gampl;
    double q = 0.5 / (e * gammi);
    double c = 1.0;
    double d2 = x2 * x2;
    double sum1 = p;
    int i = 1;
    for (; i <= kMaxIter; ++i) {
      ff = (i * ff + p + q) / (i * i - mu2);
      c *= d2 / i;
      p /= (i - mu);
      q /= (i + mu);
      double del = c * ff;
      sum += del;
      double del1 = c * (p - i * ff);
      sum1 += del1;
      if (std::abs(del) < std::abs(sum) * kSeriesEps) break;
    }
    if (i > kMaxIter) throw NumericError("bessel_k_pair series failed to converge");
    rkmu = sum;
    rk1 = sum1 * (2.0 / x);
  } else {
    double b = 2.0 * (1.0 + x);
    double d = 1.0 / b;
    double h = d;
    double delh = d;
    double q1 = 0.0;
    double q2 = 1.0;
    double a1 = 0.25 - mu2;
    double q = a1;
    double c = a1;
    double a = -a1;
    double s = 1.0 + q * delh;
    int i = 2;
    for (; i <= kMaxIter; ++i) {
      a -= 2 * (i - 1);
      c = -a * c / i;
      double qnew = (q1 - b * q2) / a;
      q1 = q2;
      q2 = qnew;
      q += c * qnew;
      b += 2.0;
      d = 1.0 / (b + a * d);
      delh = (b * d - 1.0) * delh;
      h += delh;
      double dels = q * delh;
      s += dels;
      if (std::abs(dels / s) < kSeriesEps) break;
    }
    if (i > kMaxIter) throw NumericError("bessel_k_pair continued fraction failed to converge");
    h = a1 * h;
    rkmu = std::sqrt(M_PI / (2.0 * x)) * std::exp(-x) / s;
    rk1 = rkmu * (mu + x + 0.5 - h) / x;
  }

  for (int i = 1; i <= nl; ++i) {
    double next = (mu + i) * (2.0 / x) * rk1 + rkmu;
    rkmu = rk1;
    rk1 = next;
  }
  return {rkmu, rk1};
}

double matern_correlation_general(double u, double nu) {
  if (u < kZeroDistance) return 1.0;
  if (u > kern::kExpArgLimit) return 0.0;
  double scale = std::exp2(1.0 - nu) / std::tgamma(nu);
  double v = scale * std::pow(u, nu) * bessel_k_pair(nu, u).k_nu;
  if (!std::isfinite(v)) throw NumericError("matern correlation evaluated to a non-finite value");
  return v;
}

double matern_correlation(double u, double nu) {
  if (u < kZeroDistance) return 1.0;
  if (near(nu, 0.5)) return std::exp(-u);
  if (near(nu, 1.5)) return (1.0 + u) * std::exp(-u);
  if (near(nu, 2.5)) return (1.0 + u + u * u / 3.0) * std::exp(-u);
  return matern_correlation_general(u, nu);
}

double matern_dlogr_factor(double u, double nu) {
  if (u < kZeroDistance) return 0.0;
  if (u > kern::kExpArgLimit) return 0.0;
  if (near(nu, 0.5)) return std::exp(-u) / u;
  if (near(nu, 1.5)) return std::exp(-u);
  if (near(nu, 2.5)) return (1.0 + u) * std::exp(-u) / 3.0;
  double order = std::abs(nu - 1.0);  // K_{nu-1} = K_{|nu-1|}
  double scale = std::exp2(1.0 - nu) / std::tgamma(nu);
  double v = scale * std::pow(u, nu - 1.0) * bessel_k_pair(order, u).k_nu;
  if (!std::isfinite(v)) throw NumericError("matern derivative evaluated to a non-finite value");
  return v;
}

void correlation_batch(const double* u2, std::size_t n, double nu, double sigma2,
                       double* out) {
  if (near(nu, 0.5)) {
    kern::active().matern_halfint(u2, n, kern::HalfIntNu::half, sigma2, out);
    return;
  }
  if (near(nu, 1.5)) {
    kern::active().matern_halfint(u2, n, kern::HalfIntNu::three_half, sigma2, out);
    return;
  }
  if (near(nu, 2.5)) {
    kern::active().matern_halfint(u2, n, kern::HalfIntNu::five_half, sigma2, out);
    return;
  }
  for (std::size_t i = 0; i < n; ++i)
    out[i] = sigma2 * matern_correlation_general(std::sqrt(u2[i]), nu);
}

double scaled_distance(const Input7D& a, const Input7D& b, std::span<const double> ranges) {
  if (a.mode != b.mode) throw ConfigError("scaled_distance: mixed input modes");
  std::size_t q = static_cast<std::size_t>(active_dims(a.mode));
  if (ranges.size() != q) throw ConfigError("scaled_distance: range dimension mismatch");
  auto ca = a.coords();
  auto cb = b.coords();
  double acc = 0.0;
  for (std::size_t k = 0; k < q; ++k) {
    double d = (ca[k] - cb[k]) / ranges[k];
    acc = std::fma(d, d, acc);
  }
  return std::sqrt(acc);
}

double matern_ard(const Input7D& a, const Input7D& b, const KernelParams& p) {
  double u = scaled_distance(a, b, p.ranges);
  return p.sigma2 * matern_correlation(u, p.nu);
}

double exp_ard(double sigma2, double dlat, double dlon, std::optional<double> dday,
               double r_l, double r_L, double r_d) {
  double a = dlat / r_l;
  double b = dlon / r_L;
  double acc = a * a + b * b;
  if (dday.has_value()) {
    double c = *dday / r_d;
    acc += c * c;
  }
  return sigma2 * std::exp(-std::sqrt(acc));
}

namespace {

// Scales each dimension by 1/r_k so plain squared distances become scaled ones.
PointSet inv_range_scaled(const PointSet& pts, const KernelParams& p) {
  if (pts.q != p.q()) throw ConfigError("covariance: point/range dimension mismatch");
  std::vector<double> w(p.q());
  for (std::size_t k = 0; k < p.q(); ++k) w[k] = 1.0 / p.ranges[k];
  return pts.scaled_by(w);
}

}  // namespace

Eigen::MatrixXd cov_matrix(const PointSet& pts, const KernelParams& p, bool add_nugget) {
  PointSet s = inv_range_scaled(pts, p);
  auto ptrs = s.dim_ptrs();
  const auto n = static_cast<Eigen::Index>(pts.n);
  Eigen::MatrixXd K(n, n);
  std::vector<double> u2(pts.n), vals(pts.n);
  for (Eigen::Index i = 0; i < n; ++i) {
    auto query = s.point(static_cast<std::size_t>(i));
    std::size_t count = pts.n - static_cast<std::size_t>(i) - 1;
    if (count > 0) {
      std::array<const double*, 7> shifted{};
      for (std::size_t k = 0; k < s.q; ++k) shifted[k] = ptrs[k] + i + 1;
      kern::active().sqdist(shifted.data(), s.q, query.data(), count, u2.data());
      correlation_batch(u2.data(), count, p.nu, p.sigma2, vals.data());
      for (std::size_t j = 0; j < count; ++j) {
        K(i, i + 1 + static_cast<Eigen::Index>(j)) = vals[j];
        K(i + 1 + static_cast<Eigen::Index>(j), i) = vals[j];
      }
    }
    K(i, i) = p.sigma2 + (add_nugget ? p.tau2 : 0.0);
  }
  return K;
}

Eigen::MatrixXd cov_cross(const PointSet& a, const PointSet& b, const KernelParams& p) {
  PointSet sa = inv_range_scaled(a, p);
  PointSet sb = inv_range_scaled(b, p);
  auto ptrs = sb.dim_ptrs();
  Eigen::MatrixXd K(static_cast<Eigen::Index>(a.n), static_cast<Eigen::Index>(b.n));
  std::vector<double> u2(b.n), vals(b.n);
  for (std::size_t i = 0; i < a.n; ++i) {
    auto query = sa.point(i);
    kern::active().sqdist(ptrs.data(), sb.q, query.data(), b.n, u2.data());
    correlation_batch(u2.data(), b.n, p.nu, p.sigma2, vals.data());
    for (std::size_t j = 0; j < b.n; ++j)
      K(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = vals[j];
  }
  return K;
}

Eigen::MatrixXd cov_block(const PointSet& a, const PointSet& b, const KernelParams& p,
                          bool add_nugget_on_diagonal) {
  if (&a == &b) return cov_matrix(a, p, add_nugget_on_diagonal);
  return cov_cross(a, b, p);
}

Eigen::VectorXd kernel_gradient(const Input7D& a, const Input7D& b, const KernelParams& p) {
  p.validate();
  std::size_t q = p.q();
  Eigen::VectorXd g = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(q) + 3);

  auto ca = a.coords();
  auto cb = b.coords();
  bool coincident = true;
  for (std::size_t k = 0; k < q; ++k)
    if (ca[k] != cb[k]) coincident = false;

  double u = scaled_distance(a, b, p.ranges);
  double rho = matern_correlation(u, p.nu);

  g[0] = p.sigma2 * rho;  // d/d log sigma2

  double dfac = matern_dlogr_factor(u, p.nu);
  for (std::size_t k = 0; k < q; ++k) {
    double s = (ca[k] - cb[k]) / p.ranges[k];
    g[1 + static_cast<Eigen::Index>(k)] = p.sigma2 * dfac * s * s;
  }

  double t = nu_to_logit(p.nu);
  double rho_plus = matern_correlation(u, nu_from_logit(t + kNuFdStep));
  double rho_minus = matern_correlation(u, nu_from_logit(t - kNuFdStep));
  g[static_cast<Eigen::Index>(q) + 1] = p.sigma2 * (rho_plus - rho_minus) / (2.0 * kNuFdStep);

  g[static_cast<Eigen::Index>(q) + 2] = coincident ? p.tau2 : 0.0;  // d/d log tau2
  return g;
}

}  // namespace argogp
