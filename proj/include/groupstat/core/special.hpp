#pragma once

#include <cstddef>

namespace groupstat::core {

/// Tolerances for the Newton and continued-fraction routines.
struct SpecialFnConfig {
  double newton_tolerance = 1e-12;  ///< relative error target
  int max_iterations = 100;

  void validate() const;
};

/// ln Gamma(x) for x > 0.
double log_gamma(double x);

/// Standard normal CDF.
double normal_cdf(double t);

/// Regularized incomplete beta I_x(a, b) via the Lentz continued fraction.
double regularized_incomplete_beta(double x, double a, double b);

/// Student t CDF for df > 0.
double student_t_cdf(double t, double df);

/// Principal-branch Lambert W for z >= 0: the w >= 0 with w e^w = z.
/// Newton iteration started at ln(z+1), which bounds w from above.
double lambert_w0(double z, const SpecialFnConfig& config = {});

/// ln C(n, k).
double log_binomial(std::size_t n, std::size_t k);

/// ln of the hypergeometric pmf C(n,j) C(m,m-j) / C(n+m,m), 0 <= j <= m <= n.
double log_hypergeom_weight(std::size_t j, std::size_t n, std::size_t m);

}  // namespace groupstat::core
