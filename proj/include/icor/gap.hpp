#pragma once

// Constant-gap program for the symmetric channel: regime classification, PAM
// size selection, inner-region assembly per regime, and the gap to the
// classical outer bound. Also the scalar constants used along the way.

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "icor/core_math.hpp"
#include "icor/regions.hpp"

namespace icor {

enum class Regime : std::uint8_t { very_strong, strong, moderately_weak, noisy };

inline constexpr std::array<Regime, 4> kRegimes = {Regime::very_strong, Regime::strong,
                                                   Regime::moderately_weak, Regime::noisy};

std::string_view regime_name(Regime r) noexcept;

///   very_strong      snr (1 + snr) <= inr
///   strong           snr <= inr < snr (1 + snr)
///   moderately_weak  inr < snr <= inr (1 + inr)
///   noisy            inr (1 + inr) < snr
Regime classify_regime(double snr, double inr);

/// Corner point of the outer bound targeted by a PAM size choice.
enum class Corner : std::uint8_t { very_strong, strong_p1, strong_p2, weak_1, weak_2 };

/// PAM size for a regime/corner pair:
///   very_strong, strong_p1   nd(snr)
///   strong_p2                nd(inr / (1 + snr))
///   weak_1                   nd(inr^2 / (1 + snr + 2 inr))
///   weak_2                   nd(snr inr / ((1 + inr)^2 + snr))
/// Throws DomainError if the corner does not belong to the regime.
std::uint64_t pick_n(Regime regime, Corner corner, double snr, double inr);

/// Argument of nd for the two weak corners (x1 for weak_1, x2 for weak_2).
double weak_x(Corner corner, double snr, double inr);

/// Simplified Scheme II region for the moderately weak regime, with the PAM
/// size of `corner` (weak_1 or weak_2) already accounted for through x:
///   R1      <= Ig(x) - 1 - SL + Ig(snr/(1+2inr))
///   R2      <= Ig(inr^2/((1+inr)(1+snr)+inr)) - SL + Ig(snr/2) - Ig(x)
///   R1 + R2 <= Ig(min(x1, x2)) - 1 + Ig(inr + snr/(1+inr)) - Ig(inr/(1+inr))
///              + Ig(snr/(1+2inr)) - 2 SL
/// where SL is the shaping loss.
RateRegion weak_region(const SymmetricChannel& ch, Corner corner);

/// Convex hull of the rectangles reachable by Gaussian inputs with
/// interference treated as noise. Power pairs: the uniform grid
/// {0, 1/steps, ..., 1}^2, plus (1, p) and (p, 1) for p = 2^(-k/per_octave)
/// down to 1/(16 (1 + inr)). per_octave = 0 keeps only the uniform grid.
RateRegion tin_power_control_region(const SymmetricChannel& ch, int steps = 16,
                                    int per_octave = 16);

/// Achievable region used for the gap in the channel's regime:
///   very_strong      Scheme I with nd(snr); the sum bound is dropped when
///                    Ig(snr) <= Ig(inr/(1+snr))
///   strong           hull of Scheme I at the two strong corners and the two
///                    single-user points
///   moderately_weak  hull of weak_region at the two weak corners and the two
///                    single-user points
///   noisy            tin_power_control_region
RateRegion inner_assembly(const SymmetricChannel& ch);

/// Per-regime bound on the per-user gap asserted by gap_scan:
/// 0.5 log2(4 pi e / 3) for the strong regimes, 0.5 log2(8 pi e) for the
/// moderately weak regime and 0.5 + 0.1 for the noisy regime (0.1 covers the
/// power grid).
double regime_gap_bound(Regime r);

struct GapScanConfig {
  /// Added to every regime bound before comparison.
  double tol = 1e-3;
  /// 0 uses the default from parallel.hpp.
  unsigned threads = 0;
};

struct GapPoint {
  double snr;
  double alpha;
  double inr;
  Regime regime;
  double gap;          // gap_between(etw_outer, inner_assembly)
  double gap_r1_only;  // gap_first_user on the same pair
  double bound;        // regime_gap_bound
  bool pass;
};

struct RegimeSummary {
  std::size_t count = 0;
  double max_gap = 0.0;
  /// Grid point attaining max_gap (valid when count > 0).
  double argmax_snr = 0.0;
  double argmax_alpha = 0.0;
  double bound = 0.0;
  bool pass = true;
};

struct GapReport {
  std::vector<GapPoint> points;  // grid order
  std::array<RegimeSummary, 4> regimes;  // indexed by Regime
  bool pass = true;
};

/// Evaluates the gap at every (snr, alpha) point. Throws DomainError on an
/// empty grid.
GapReport gap_scan(const std::vector<std::pair<double, double>>& grid, const GapScanConfig& cfg = {});

/// snr grid of `n` log-spaced points in [lo, hi] crossed with `m` equally
/// spaced alpha values in [alpha_lo, alpha_hi]; snr varies slowest.
std::vector<std::pair<double, double>> log_alpha_grid(double lo, double hi, int n,
                                                      double alpha_lo, double alpha_hi, int m);

/// Ig(snr) - Id(nd(snr), snr): capacity minus the PAM lower bound with the
/// integer PAM size.
double pam_p2p_gap(double snr);

/// 0.5 log2((1 + snr) / nd(snr)^2), in [0, 1).
double integer_penalty(double snr);

/// shaping_loss() + integer_penalty(snr); upper-bounds pam_p2p_gap.
double pam_p2p_gap_bound(double snr);

/// 0.5 log2(1 + inr/(1+inr)): extra entropy of the noisy copy of T2.
double corollary2_gap(double inr);

/// (1+2y)(1+x/2) / ((1+y)(1+x)+y).
double appendix_c_f(double x, double y);

struct AppendixCMinimum {
  double value;
  double x;
  double y;
};

/// Minimum of appendix_c_f over 1 <= y <= x <= y(1+y), by nested Brent
/// searches (outer over y in [1, 100]).
AppendixCMinimum appendix_c_minimum();

/// appendix_c_f(snr, inr): the factor deciding which corner pair the weak
/// region is matched to.
double appendix_c_factor(double snr, double inr);

/// True when the sum bound of weak_region is redundant, i.e. when
/// 1 + min(x1, x2) < F (1 + x2) fails, with F = appendix_c_factor.
/// Requires inr <= snr <= inr (1 + inr); throws DomainError otherwise.
bool sumrate_redundancy_check(const SymmetricChannel& ch);

}  // namespace icor
