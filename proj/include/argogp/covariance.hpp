#pragma once

#include <optional>
#include <span>

#include "argogp/types.hpp"

namespace argogp {

inline constexpr double kNuMin = 0.05;
inline constexpr double kNuMax = 3.5;
inline constexpr double kNuFdStep = 1e-5;        // central step in logit-nu
inline constexpr double kZeroDistance = 1e-12;   // below this u the limit value applies

struct KernelParams {
  double sigma2 = 1.0;
  std::vector<double> ranges;  // one positive lengthscale per active dimension
  double nu = 0.5;
  double tau2 = 0.0;
  double mu = 0.0;

  std::size_t q() const { return ranges.size(); }
  void validate() const;  // throws ConfigError
};

// Unconstrained layout: [log sigma2, log r_1 .. log r_q, logit nu, log tau2].
// The mean is profiled during estimation and therefore excluded.
Eigen::VectorXd to_unconstrained(const KernelParams& p);
KernelParams from_unconstrained(const Eigen::VectorXd& u, double mu = 0.0);
double nu_to_logit(double nu);
double nu_from_logit(double t);
double nu_dlogit(double t);  // d nu / d t

struct BesselKPair {
  double k_nu;
  double k_nu_plus_1;
};

// Modified Bessel function of the second kind: K_nu(x) and K_{nu+1}(x) for
// real order nu >= 0 and x > 0. Temme's series below x = 2, Steed's
// continued fraction above, upward recurrence in the order.
BesselKPair bessel_k_pair(double nu, double x);

// Matern correlation rho(u) = 2^{1-nu}/Gamma(nu) u^nu K_nu(u), equal to 1 at
// u = 0. The plain dispatcher takes half-integer shortcuts; the general
// entry point always runs the Bessel path (used for cross-validation).
double matern_correlation(double u, double nu);
double matern_correlation_general(double u, double nu);

// d rho / d log r_k = matern_dlogr_factor(u, nu) * (delta_k / r_k)^2.
double matern_dlogr_factor(double u, double nu);

// out[i] = sigma2 * rho(sqrt(u2[i])); batches through the SIMD kernels when
// nu is half-integer.
void correlation_batch(const double* u2, std::size_t n, double nu, double sigma2,
                       double* out);

double scaled_distance(const Input7D& a, const Input7D& b, std::span<const double> ranges);
double matern_ard(const Input7D& a, const Input7D& b, const KernelParams& p);

// Exponential ARD covariance over (lat, lon, day) differences; pass
// std::nullopt for dday to get the spatial-only variant.
double exp_ard(double sigma2, double dlat, double dlon, std::optional<double> dday,
               double r_l, double r_L, double r_d);

Eigen::MatrixXd cov_matrix(const PointSet& pts, const KernelParams& p, bool add_nugget);
Eigen::MatrixXd cov_cross(const PointSet& a, const PointSet& b, const KernelParams& p);

// Entry (i,j) = matern covariance between a_i and b_j; the nugget lands on
// the diagonal only when requested and a and b are the same object.
Eigen::MatrixXd cov_block(const PointSet& a, const PointSet& b, const KernelParams& p,
                          bool add_nugget_on_diagonal);

// Partials of the observed-process covariance (matern plus nugget at
// coinciding coordinates) with respect to the unconstrained parameters, in
// to_unconstrained order.
Eigen::VectorXd kernel_gradient(const Input7D& a, const Input7D& b, const KernelParams& p);

}  // namespace argogp
