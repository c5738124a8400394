#include "icor/regions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace icor {

std::optional<Direction> direction_of(int a1, int a2) noexcept {
  for (Direction d : kDirections) {
    const auto c = coefficients(d);
    if (c.a1 == a1 && c.a2 == a2) return d;
  }
  return std::nullopt;
}

namespace detail {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double feas_tol(double b) { return kMembershipTol * std::max(1.0, std::abs(b)); }

struct Line {
  double a1, a2, b;
};

double cross(RatePair o, RatePair a, RatePair b) {
  return (a.r1 - o.r1) * (b.r2 - o.r2) - (a.r2 - o.r2) * (b.r1 - o.r1);
}

bool near(RatePair a, RatePair b) {
  return std::abs(a.r1 - b.r1) <= kVertexMergeTol && std::abs(a.r2 - b.r2) <= kVertexMergeTol;
}

}  // namespace

std::vector<RatePair> vertices(const Bounds& b) {
  std::vector<Line> lines = {{1, 0, 0}, {0, 1, 0}};  // the axes r1 = 0, r2 = 0
  for (Direction d : kDirections) {
    const double bd = b[static_cast<std::size_t>(d)];
    if (bd == kInf) continue;
    const auto c = coefficients(d);
    lines.push_back({double(c.a1), double(c.a2), bd});
  }

  std::vector<RatePair> cand;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    for (std::size_t j = i + 1; j < lines.size(); ++j) {
      const Line& p = lines[i];
      const Line& q = lines[j];
      const double det = p.a1 * q.a2 - p.a2 * q.a1;
      if (det == 0.0) continue;
      RatePair v{(p.b * q.a2 - p.a2 * q.b) / det, (p.a1 * q.b - p.b * q.a1) / det};
      if (!contains(b, v, feas_tol(std::max(v.r1, v.r2)))) continue;
      // Also maps -0.0 to +0.0.
      if (v.r1 <= 0.0) v.r1 = 0.0;
      if (v.r2 <= 0.0) v.r2 = 0.0;
      cand.push_back(v);
    }
  }
  std::sort(cand.begin(), cand.end(),
            [](RatePair x, RatePair y) { return x.r1 < y.r1 || (x.r1 == y.r1 && x.r2 < y.r2); });

  // Convex hull (monotone chain); collinear and coincident points removed.
  std::vector<RatePair> pts;
  for (const auto& v : cand) {
    if (pts.empty() || !near(pts.back(), v)) pts.push_back(v);
  }
  if (pts.size() < 3) return pts;
  std::vector<RatePair> hull(2 * pts.size());
  std::size_t k = 0;
  const double area_tol = 1e-15;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= area_tol) --k;
    hull[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(hull[k - 2], hull[k - 1], pts[i]) <= area_tol) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  std::sort(hull.begin(), hull.end(),
            [](RatePair x, RatePair y) { return x.r1 < y.r1 || (x.r1 == y.r1 && x.r2 < y.r2); });
  return hull;
}

double support(const Bounds& b, Direction d) {
  const auto c = coefficients(d);
  double best = 0.0;
  for (const auto& v : vertices(b)) best = std::max(best, c.a1 * v.r1 + c.a2 * v.r2);
  return best;
}

Bounds canonical(const Bounds& b) {
  const auto verts = vertices(b);
  Bounds out;
  out.fill(kInf);
  for (Direction d : kDirections) {
    const auto c = coefficients(d);
    double s = 0.0;
    for (const auto& v : verts) s = std::max(s, c.a1 * v.r1 + c.a2 * v.r2);
    const auto idx = static_cast<std::size_t>(d);
    const double tol = feas_tol(s);
    int touching = 0;
    for (const auto& v : verts) {
      if (std::abs(c.a1 * v.r1 + c.a2 * v.r2 - s) <= tol) ++touching;
    }
    const bool axis = d == Direction::r1 || d == Direction::r2;
    if (!axis && touching < 2) continue;
    out[idx] = (b[idx] != kInf && std::abs(b[idx] - s) <= tol) ? b[idx] : s;
  }
  return out;
}

bool contains(const Bounds& b, RatePair p, double tol) {
  if (!(p.r1 >= -tol) || !(p.r2 >= -tol)) return false;
  for (Direction d : kDirections) {
    const double bd = b[static_cast<std::size_t>(d)];
    if (bd == kInf) continue;
    const auto c = coefficients(d);
    if (c.a1 * p.r1 + c.a2 * p.r2 > bd + tol) return false;
  }
  return true;
}

Bounds hull_bounds(std::span<const RatePair> points) {
  Bounds out;
  for (Direction d : kDirections) {
    const auto c = coefficients(d);
    double s = 0.0;
    for (const auto& p : points) s = std::max(s, c.a1 * p.r1 + c.a2 * p.r2);
    out[static_cast<std::size_t>(d)] = s;
  }
  return out;
}

namespace {

// Smallest g >= 0 with a1 [v1-g]^+ + a2 [v2-g]^+ <= b (b >= 0).
double shift_needed(double a1, double a2, RatePair v, double b) {
  auto phi = [&](double g) {
    return a1 * std::max(v.r1 - g, 0.0) + a2 * std::max(v.r2 - g, 0.0);
  };
  // Vertices carry round-off from the line intersections.
  if (phi(0.0) <= b + feas_tol(b)) return 0.0;
  double lo = 0.0;
  double bp[2] = {std::min(v.r1, v.r2), std::max(v.r1, v.r2)};
  for (double hi : bp) {
    if (hi <= lo) continue;
    if (phi(hi) <= b) {
      // Linear on [lo, hi]: phi(g) = phi(lo) - slope (g - lo).
      const double slope = (phi(lo) - phi(hi)) / (hi - lo);
      return lo + (phi(lo) - b) / slope;
    }
    lo = hi;
  }
  return lo;
}

}  // namespace

double gap_between(const Bounds& outer, const Bounds& inner) {
  double g = 0.0;
  for (const auto& v : vertices(outer)) {
    for (Direction d : kDirections) {
      const double b = inner[static_cast<std::size_t>(d)];
      if (b == kInf) continue;
      const auto c = coefficients(d);
      g = std::max(g, shift_needed(c.a1, c.a2, v, b));
    }
  }
  return g;
}

double gap_first_user(const Bounds& outer, const Bounds& inner) {
  double g = 0.0;
  for (const auto& v : vertices(outer)) {
    for (Direction d : kDirections) {
      const double b = inner[static_cast<std::size_t>(d)];
      if (b == kInf) continue;
      const auto c = coefficients(d);
      const double rest = b - c.a2 * v.r2;
      if (c.a1 == 0) {
        if (rest < -feas_tol(b)) return kInf;
        continue;
      }
      if (rest < -feas_tol(b)) return kInf;
      g = std::max(g, v.r1 - std::max(rest, 0.0) / c.a1);
    }
  }
  return g;
}

}  // namespace detail

namespace {

double cap(std::uint64_t n, double x) {
  const double nn = static_cast<double>(n);
  return std::min(nn * nn - 1.0, x);
}

void check_n(std::uint64_t n) {
  if (n == 0) throw DomainError("PAM size must be at least 1");
}

void check_split(double d) {
  if (!(d >= 0.0 && d <= 1.0)) throw DomainError("power split must lie in [0, 1]");
}

RateRegion make(double r1, double r2, double sum) {
  RateRegion r(r1, r2);
  r.limit(Direction::sum, sum);
  return r;
}

}  // namespace

RateRegion scheme1_region(const PowerGains& g, std::uint64_t n) {
  check_n(n);
  const double r1 = id(n, g.g11);
  const double r2 = id(n, g.g21 / (1.0 + g.g22)) + ig(g.g22) - ig(cap(n, g.g21));
  const double sum = id(n, g.g11 / (1.0 + g.g12)) + ig(g.g12);
  return make(r1, r2, sum);
}

RateRegion scheme1_region(const ChannelGains& ch, std::uint64_t n) {
  return scheme1_region(power_gains(ch), n);
}

RateRegion scheme2_region(const PowerGains& g, std::uint64_t n, double d1, double d2) {
  check_n(n);
  check_split(d1);
  check_split(d2);
  const double e1 = 1.0 - d1;
  const double x21 = g.g21 * e1 / (1.0 + g.g21 * d1);

  const double r1 = id(n, g.g11 * e1 / (1.0 + g.g11 * d1 + g.g12 * d2)) +
                    ig(g.g11 * d1 / (1.0 + g.g12 * d2));
  const double r2 = id(n, g.g21 * e1 / (1.0 + g.g21 * d1 + g.g22)) +
                    ig(g.g22 / (1.0 + g.g21 * d1)) - ig(cap(n, x21));
  const double rx1 = id(n, g.g11 * e1 / (1.0 + g.g11 * d1 + g.g12)) +
                     ig(g.g11 * d1 + g.g12) - ig(g.g12 * d2);
  const double rx2 = id(n, g.g21 * e1 / (1.0 + g.g21 * d1 + g.g22 * d2)) +
                     ig(g.g22 * d2 / (1.0 + g.g21 * d1)) - ig(cap(n, x21));
  return make(r1, r2, positive_part(rx1) + positive_part(rx2));
}

RateRegion scheme2_region(const ChannelGains& ch, std::uint64_t n, double d1, double d2) {
  return scheme2_region(power_gains(ch), n, d1, d2);
}

RateRegion scheme2_etw_region(const SymmetricChannel& ch, std::uint64_t n) {
  check_n(n);
  const double s = ch.snr();
  const double i = ch.inr();
  const double r1 = id(n, s * i / (1.0 + s + 2.0 * i)) + ig(s / (1.0 + 2.0 * i));
  const double r2 = id(n, i * i / ((1.0 + i) * (1.0 + s) + i)) + ig(s / 2.0) -
                    ig(cap(n, i * i / (1.0 + 2.0 * i)));
  const double sum = id(n, s * i / ((1.0 + i) * (1.0 + i) + s)) + ig(i + s / (1.0 + i)) -
                     ig(i / (1.0 + i)) + id(n, i * i / (1.0 + s + 2.0 * i)) +
                     ig(s / (1.0 + 2.0 * i)) - ig(cap(n, i * i / (1.0 + 2.0 * i)));
  return make(r1, r2, sum);
}

double gg_sumrate(double snr, double inr) {
  const double tin = ig(snr / (1.0 + inr));
  return std::min(ig(snr) + tin, tin + ig(inr + snr / (1.0 + inr)));
}

double gg_sumrate(const SymmetricChannel& ch) { return gg_sumrate(ch.snr(), ch.inr()); }

double td_sumrate(double snr) {
  if (!(snr >= 0.0)) throw DomainError("snr must be nonnegative");
  return 0.5 * std::log2(1.0 + 2.0 * snr);
}

RateRegion etw_outer(double snr, double inr) {
  const double single = ig(snr);
  const double s1 = positive_part(ig(snr) - ig(inr)) + ig(snr + inr);
  const double s2 = 2.0 * ig(inr + snr / (1.0 + inr));
  const double w = positive_part(ig(snr) - ig(inr)) + ig(snr + inr) + ig(inr + snr / (1.0 + inr));
  RateRegion r(single, single);
  r.limit(Direction::sum, s1);
  r.limit(Direction::sum, s2);
  r.limit(Direction::two_r1_plus_r2, w);
  r.limit(Direction::r1_plus_two_r2, w);
  return r;
}

RateRegion etw_outer(const SymmetricChannel& ch) { return etw_outer(ch.snr(), ch.inr()); }

RateRegion thm1_gaussian_outer_gg(const SymmetricChannel& ch) {
  const double s = ch.snr();
  const double i = ch.inr();
  return make(ig(s), ig(s / (1.0 + i)), ig(s + i) + ig(s / ((1.0 + i) * (1.0 + i))));
}

RateRegion gaussian_inner_noisy_copy(const SymmetricChannel& ch) {
  const double s = ch.snr();
  const double i = ch.inr();
  const double r1 = ig(s * (1.0 + i) / (1.0 + 2.0 * i));
  const double sum =
      0.5 * std::log2((1.0 + s + i) * (1.0 + i) / (1.0 + 2.0 * i)) + ig(s / ((1.0 + i) * (1.0 + i)));
  return make(r1, ig(s / (1.0 + i)), sum);
}

}  // namespace icor
