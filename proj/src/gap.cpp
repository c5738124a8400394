#include "icor/gap.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/tools/minima.hpp>

#include "icor/errors.hpp"
#include "icor/parallel.hpp"

namespace icor {

namespace {

void check_pair(double snr, double inr) {
  if (!(snr >= 0.0) || !std::isfinite(snr) || !(inr >= 0.0) || !std::isfinite(inr)) {
    throw DomainError("snr and inr must be finite and >= 0");
  }
}

}  // namespace

std::string_view regime_name(Regime r) noexcept {
  switch (r) {
    case Regime::very_strong: return "very_strong";
    case Regime::strong: return "strong";
    case Regime::moderately_weak: return "moderately_weak";
    case Regime::noisy: return "noisy";
  }
  return "unknown";
}

Regime classify_regime(double snr, double inr) {
  check_pair(snr, inr);
  if (snr * (1.0 + snr) <= inr) return Regime::very_strong;
  if (snr <= inr) return Regime::strong;
  if (snr <= inr * (1.0 + inr)) return Regime::moderately_weak;
  return Regime::noisy;
}

double weak_x(Corner corner, double snr, double inr) {
  check_pair(snr, inr);
  switch (corner) {
    case Corner::weak_1: return inr * inr / (1.0 + snr + 2.0 * inr);
    case Corner::weak_2: return snr * inr / ((1.0 + inr) * (1.0 + inr) + snr);
    default: throw DomainError("weak_x needs a weak corner");
  }
}

std::uint64_t pick_n(Regime regime, Corner corner, double snr, double inr) {
  check_pair(snr, inr);
  switch (corner) {
    case Corner::very_strong:
      if (regime != Regime::very_strong) break;
      return nd(snr);
    case Corner::strong_p1:
      if (regime != Regime::strong) break;
      return nd(snr);
    case Corner::strong_p2:
      if (regime != Regime::strong) break;
      return nd(inr / (1.0 + snr));
    case Corner::weak_1:
    case Corner::weak_2:
      if (regime != Regime::moderately_weak) break;
      return nd(weak_x(corner, snr, inr));
  }
  throw DomainError("corner does not belong to regime " + std::string(regime_name(regime)));
}

RateRegion weak_region(const SymmetricChannel& ch, Corner corner) {
  const double s = ch.snr();
  const double i = ch.inr();
  const double sl = shaping_loss();
  const double x = weak_x(corner, s, i);
  const double xmin = std::min(weak_x(Corner::weak_1, s, i), weak_x(Corner::weak_2, s, i));
  const double r1 = ig(x) - 1.0 - sl + ig(s / (1.0 + 2.0 * i));
  const double r2 = ig(i * i / ((1.0 + i) * (1.0 + s) + i)) - sl + ig(s / 2.0) - ig(x);
  const double sum = ig(xmin) - 1.0 + ig(i + s / (1.0 + i)) - ig(i / (1.0 + i)) +
                     ig(s / (1.0 + 2.0 * i)) - 2.0 * sl;
  RateRegion r(r1, r2);
  r.limit(Direction::sum, sum);
  return r;
}

RateRegion tin_power_control_region(const SymmetricChannel& ch, int steps, int per_octave) {
  if (steps < 1 || per_octave < 0) throw DomainError("invalid power grid");
  const double s = ch.snr();
  const double i = ch.inr();
  auto rect = [&](double p1, double p2) {
    return RateRegion(ig(p1 * s / (1.0 + p2 * i)), ig(p2 * s / (1.0 + p1 * i)));
  };
  std::vector<RateRegion> rects;
  for (int a = 0; a <= steps; ++a) {
    for (int b = 0; b <= steps; ++b) {
      rects.push_back(rect(static_cast<double>(a) / steps, static_cast<double>(b) / steps));
    }
  }
  // Geometric levels against a full-power partner, down to 1/(16 (1 + inr)).
  if (per_octave > 0) {
    const double floor_power = 1.0 / (16.0 * (1.0 + i));
    for (int k = 1;; ++k) {
      const double p = std::exp2(-static_cast<double>(k) / per_octave);
      if (p < floor_power) break;
      rects.push_back(rect(1.0, p));
      rects.push_back(rect(p, 1.0));
    }
  }
  return hull_union(rects);
}

RateRegion inner_assembly(const SymmetricChannel& ch) {
  const double s = ch.snr();
  const double i = ch.inr();
  const Regime regime = classify_regime(s, i);
  const PowerGains g = power_gains(ch);
  switch (regime) {
    case Regime::very_strong: {
      RateRegion r = scheme1_region(g, pick_n(regime, Corner::very_strong, s, i));
      if (ig(s) <= ig(i / (1.0 + s))) return RateRegion(*r.bound(Direction::r1), *r.bound(Direction::r2));
      return r;
    }
    case Regime::strong:
      return hull_union({scheme1_region(g, pick_n(regime, Corner::strong_p1, s, i)),
                         scheme1_region(g, pick_n(regime, Corner::strong_p2, s, i)),
                         RateRegion(ig(s), 0.0), RateRegion(0.0, ig(s))});
    case Regime::moderately_weak:
      return hull_union({weak_region(ch, Corner::weak_1), weak_region(ch, Corner::weak_2),
                         RateRegion(ig(s), 0.0), RateRegion(0.0, ig(s))});
    case Regime::noisy:
      return tin_power_control_region(ch);
  }
  throw DomainError("unreachable regime");
}

double regime_gap_bound(Regime r) {
  switch (r) {
    case Regime::very_strong:
    case Regime::strong:
      return 0.5 * std::log2(4.0 * std::numbers::pi * std::numbers::e / 3.0);
    case Regime::moderately_weak:
      return 0.5 * std::log2(8.0 * std::numbers::pi * std::numbers::e);
    case Regime::noisy:
      return 0.6;
  }
  return 0.0;
}

GapReport gap_scan(const std::vector<std::pair<double, double>>& grid, const GapScanConfig& cfg) {
  if (grid.empty()) throw DomainError("gap_scan needs a nonempty grid");
  GapReport rep;
  rep.points.resize(grid.size());
  parallel_for(
      grid.size(),
      [&](std::size_t k) {
        const auto [snr, alpha] = grid[k];
        const SymmetricChannel ch(snr, alpha);
        const Regime regime = classify_regime(ch.snr(), ch.inr());
        const RateRegion outer = etw_outer(ch);
        const RateRegion inner = inner_assembly(ch);
        const double gap = gap_between(outer, inner);
        const double bound = regime_gap_bound(regime);
        rep.points[k] = {snr,   alpha, ch.inr(), regime, gap, gap_first_user(outer, inner),
                         bound, gap <= bound + cfg.tol};
      },
      cfg.threads);

  for (Regime r : kRegimes) rep.regimes[static_cast<std::size_t>(r)].bound = regime_gap_bound(r);
  for (const auto& p : rep.points) {
    auto& s = rep.regimes[static_cast<std::size_t>(p.regime)];
    if (s.count == 0 || p.gap > s.max_gap) {
      s.max_gap = p.gap;
      s.argmax_snr = p.snr;
      s.argmax_alpha = p.alpha;
    }
    ++s.count;
    s.pass = s.pass && p.pass;
    rep.pass = rep.pass && p.pass;
  }
  return rep;
}

std::vector<std::pair<double, double>> log_alpha_grid(double lo, double hi, int n, double alpha_lo,
                                                      double alpha_hi, int m) {
  if (!(lo > 0.0) || !(hi >= lo) || n < 1 || m < 1 || !(alpha_hi >= alpha_lo) ||
      !(alpha_lo >= 0.0)) {
    throw DomainError("invalid grid specification");
  }
  std::vector<std::pair<double, double>> out;
  out.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(m));
  const double l0 = std::log10(lo);
  const double l1 = std::log10(hi);
  for (int a = 0; a < n; ++a) {
    const double snr = n == 1 ? lo : std::pow(10.0, l0 + (l1 - l0) * a / (n - 1));
    for (int b = 0; b < m; ++b) {
      const double alpha = m == 1 ? alpha_lo : alpha_lo + (alpha_hi - alpha_lo) * b / (m - 1);
      out.emplace_back(snr, alpha);
    }
  }
  return out;
}

double pam_p2p_gap(double snr) { return ig(snr) - id(nd(snr), snr); }

double integer_penalty(double snr) {
  const double n = static_cast<double>(nd(snr));
  return positive_part(0.5 * std::log2((1.0 + snr) / (n * n)));
}

double pam_p2p_gap_bound(double snr) { return shaping_loss() + integer_penalty(snr); }

double corollary2_gap(double inr) {
  if (!(inr >= 0.0) || std::isnan(inr)) throw DomainError("inr must be >= 0");
  if (std::isinf(inr)) return 0.5;
  return 0.5 * std::log2(1.0 + inr / (1.0 + inr));
}

double appendix_c_f(double x, double y) {
  return (1.0 + 2.0 * y) * (1.0 + x / 2.0) / ((1.0 + y) * (1.0 + x) + y);
}

AppendixCMinimum appendix_c_minimum() {
  using boost::math::tools::brent_find_minima;
  constexpr int bits = std::numeric_limits<double>::digits;
  auto inner = [](double y) {
    return brent_find_minima([y](double x) { return appendix_c_f(x, y); }, y, y * (1.0 + y), bits);
  };
  const auto outer = brent_find_minima([&](double y) { return inner(y).second; }, 1.0, 100.0, bits);
  const auto in = inner(outer.first);
  return {outer.second, in.first, outer.first};
}

double appendix_c_factor(double snr, double inr) { return appendix_c_f(snr, inr); }

bool sumrate_redundancy_check(const SymmetricChannel& ch) {
  const double s = ch.snr();
  const double i = ch.inr();
  if (!(i <= s && s <= i * (1.0 + i))) {
    throw DomainError("redundancy check needs inr <= snr <= inr (1 + inr)");
  }
  const double x1 = weak_x(Corner::weak_1, s, i);
  const double x2 = weak_x(Corner::weak_2, s, i);
  return !(1.0 + std::min(x1, x2) < appendix_c_factor(s, i) * (1.0 + x2));
}

}  // namespace icor
