#pragma once

// Generalized degrees of freedom of the symmetric channel with INR = SNR^alpha.

#include <cstdint>
#include <vector>

#include <boost/rational.hpp>

#include "icor/regions.hpp"

namespace icor {

using Rational = boost::rational<std::int64_t>;

/// Normalized symmetric sum-capacity of the classical channel:
/// min(1, max(alpha/2, 1 - alpha/2), max(alpha, 1 - alpha)).
double wcurve(double alpha);
Rational wcurve(Rational alpha);

/// Normalized sum-rate of Gaussian inputs at both transmitters:
/// 1/2 + [1/2 - alpha]^+.
double gdof_gg(double alpha);

/// Normalized sum-rate of time division, 1/2 for every alpha.
double gdof_td(double alpha);

/// Classical G-IC gDoF region. The 2d1+d2 and d1+2d2 constraints are present
/// only for alpha in [1/2, 1].
GdofRegion gdof_gic_region(double alpha);

/// gDoF region of Scheme I with PAM size SNR^(beta/2).
GdofRegion gdof_scheme1(double alpha, double beta);

/// gDoF region of Scheme II with PAM size SNR^(beta/2).
GdofRegion gdof_scheme2(double alpha, double beta);

/// gDoF region reached by the oblivious-receiver schemes:
///   alpha >= 2       : gdof_scheme1(alpha, 1)
///   1 <= alpha < 2   : hull of gdof_scheme1 at beta = 1 and beta = alpha - 1
///   1/2 < alpha < 1  : hull of (1,0), (0,1) and gdof_scheme2 at
///                      beta = 2 alpha - 1 and beta = 1 - alpha
///   alpha <= 1/2     : gdof_gic_region (treating interference as noise with
///                      power control)
GdofRegion gdof_icor_region(double alpha);

struct GdofRow {
  double alpha;
  int a1;
  int a2;
  double b_inner;
  double b_outer;
};

/// Support values of gdof_icor_region (inner) and gdof_gic_region (outer) in
/// every direction, for each alpha.
std::vector<GdofRow> gdof_table(const std::vector<double>& alphas);

}  // namespace icor
