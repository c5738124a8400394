#include "icor/gdof.hpp"

#include <algorithm>
#include <cmath>

namespace icor {

namespace {

void check(double x, const char* what) {
  if (!(x >= 0.0) || !std::isfinite(x)) throw DomainError(std::string(what) + " must be finite and >= 0");
}

double pos(double x) { return positive_part(x); }

}  // namespace

double wcurve(double alpha) {
  check(alpha, "alpha");
  return std::min({1.0, std::max(alpha / 2.0, 1.0 - alpha / 2.0), std::max(alpha, 1.0 - alpha)});
}

Rational wcurve(Rational alpha) {
  if (alpha < Rational(0)) throw DomainError("alpha must be >= 0");
  const Rational one(1);
  const Rational half(1, 2);
  return std::min({one, std::max(alpha * half, one - alpha * half), std::max(alpha, one - alpha)});
}

double gdof_gg(double alpha) {
  check(alpha, "alpha");
  return 0.5 + pos(0.5 - alpha);
}

double gdof_td(double alpha) {
  check(alpha, "alpha");
  return 0.5;
}

GdofRegion gdof_gic_region(double alpha) {
  check(alpha, "alpha");
  GdofRegion r(1.0, 1.0);
  r.limit(Direction::sum, std::max(alpha, 2.0 - alpha));
  r.limit(Direction::sum, std::max(2.0 * alpha, 2.0 - 2.0 * alpha));
  if (alpha >= 0.5 && alpha <= 1.0) {
    r.limit(Direction::two_r1_plus_r2, 2.0);
    r.limit(Direction::r1_plus_two_r2, 2.0);
  }
  return r;
}

GdofRegion gdof_scheme1(double alpha, double beta) {
  check(alpha, "alpha");
  check(beta, "beta");
  GdofRegion r(std::min(beta, 1.0), std::min(beta, pos(alpha - 1.0)) + 1.0 - std::min(beta, alpha));
  r.limit(Direction::sum, std::min(beta, pos(1.0 - alpha)) + alpha);
  return r;
}

GdofRegion gdof_scheme2(double alpha, double beta) {
  check(alpha, "alpha");
  check(beta, "beta");
  const double d1 = std::min(beta, 1.0 + alpha - std::max(1.0, alpha)) + pos(1.0 - alpha);
  const double d2 = std::min(beta, pos(alpha - 1.0)) + 1.0 - std::min(beta, alpha);
  const double sum = std::min(beta, pos(1.0 + alpha - std::max(1.0, 2.0 * alpha))) +
                     std::max(alpha, 1.0 - alpha) +
                     std::min(beta, pos(2.0 * alpha - std::max(1.0, alpha))) + pos(1.0 - alpha) -
                     std::min(beta, alpha);
  GdofRegion r(d1, d2);
  r.limit(Direction::sum, sum);
  return r;
}

GdofRegion gdof_icor_region(double alpha) {
  check(alpha, "alpha");
  if (alpha >= 2.0) return gdof_scheme1(alpha, 1.0).canonical();
  if (alpha >= 1.0) return hull_union({gdof_scheme1(alpha, 1.0), gdof_scheme1(alpha, alpha - 1.0)});
  if (alpha > 0.5) {
    return hull_union({GdofRegion(1.0, 0.0), GdofRegion(0.0, 1.0),
                       gdof_scheme2(alpha, 2.0 * alpha - 1.0), gdof_scheme2(alpha, 1.0 - alpha)});
  }
  return gdof_gic_region(alpha).canonical();
}

std::vector<GdofRow> gdof_table(const std::vector<double>& alphas) {
  std::vector<GdofRow> rows;
  rows.reserve(alphas.size() * kDirections.size());
  for (double a : alphas) {
    const GdofRegion inner = gdof_icor_region(a);
    const GdofRegion outer = gdof_gic_region(a);
    for (Direction d : kDirections) {
      const auto c = coefficients(d);
      rows.push_back({a, c.a1, c.a2, inner.support(d), outer.support(d)});
    }
  }
  return rows;
}

}  // namespace icor
