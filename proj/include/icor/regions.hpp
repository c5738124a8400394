#pragma once

// Two-dimensional downward-closed polytopes over the fixed direction set
// {(1,0), (0,1), (1,1), (2,1), (1,2)} and the closed-form inner/outer rate
// regions of the Gaussian interference channel with one oblivious receiver.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "icor/core_math.hpp"
#include "icor/errors.hpp"

namespace icor {

enum class Direction : std::uint8_t { r1, r2, sum, two_r1_plus_r2, r1_plus_two_r2 };

inline constexpr std::array<Direction, 5> kDirections = {
    Direction::r1, Direction::r2, Direction::sum, Direction::two_r1_plus_r2,
    Direction::r1_plus_two_r2};

struct Coefficients {
  int a1;
  int a2;
};

constexpr Coefficients coefficients(Direction d) noexcept {
  switch (d) {
    case Direction::r1: return {1, 0};
    case Direction::r2: return {0, 1};
    case Direction::sum: return {1, 1};
    case Direction::two_r1_plus_r2: return {2, 1};
    case Direction::r1_plus_two_r2: return {1, 2};
  }
  return {0, 0};
}

/// Direction with coefficients (a1, a2); nullopt if not in the fixed set.
std::optional<Direction> direction_of(int a1, int a2) noexcept;

/// Nonnegative rate pair in bits per channel use (or normalized rates for
/// gDoF regions).
struct RatePair {
  double r1 = 0.0;
  double r2 = 0.0;
};

/// a1 * R1 + a2 * R2 <= b.
struct Constraint {
  int a1;
  int a2;
  double b;
};

/// Vertex membership tolerance (bits).
inline constexpr double kMembershipTol = 1e-9;
/// Vertices closer than this are merged.
inline constexpr double kVertexMergeTol = 1e-12;

namespace detail {

/// Bound per direction; +inf when the constraint is absent.
using Bounds = std::array<double, 5>;

std::vector<RatePair> vertices(const Bounds& b);
double support(const Bounds& b, Direction d);
Bounds canonical(const Bounds& b);
bool contains(const Bounds& b, RatePair p, double tol);
Bounds hull_bounds(std::span<const RatePair> points);
double gap_between(const Bounds& outer, const Bounds& inner);
double gap_first_user(const Bounds& outer, const Bounds& inner);

}  // namespace detail

/// Downward-closed polytope {R >= 0 : a . R <= b for every present constraint}.
/// The (1,0) and (0,1) constraints are always present. Bounds are clipped at
/// zero since the origin is always achievable.
template <class Tag>
class Region {
 public:
  Region(double r1_bound, double r2_bound) {
    bounds_.fill(kAbsent);
    limit(Direction::r1, r1_bound);
    limit(Direction::r2, r2_bound);
  }

  /// Intersects with a . R <= b. NaN is rejected; +inf is a no-op.
  Region& limit(Direction d, double b) {
    if (std::isnan(b)) throw DomainError("region bound is NaN");
    double& slot = bounds_[index(d)];
    slot = std::min(slot, std::max(b, 0.0));
    return *this;
  }

  std::optional<double> bound(Direction d) const {
    const double b = bounds_[index(d)];
    if (b == kAbsent) return std::nullopt;
    return b;
  }

  std::vector<Constraint> constraints() const {
    std::vector<Constraint> out;
    for (Direction d : kDirections) {
      if (auto b = bound(d)) {
        const auto c = coefficients(d);
        out.push_back({c.a1, c.a2, *b});
      }
    }
    return out;
  }

  bool contains(RatePair p, double tol = kMembershipTol) const {
    return detail::contains(bounds_, p, tol);
  }

  /// Extreme points including the origin and axis intercepts, sorted by
  /// (r1, r2) ascending.
  std::vector<RatePair> vertices() const { return detail::vertices(bounds_); }

  /// max over the region of a1 R1 + a2 R2.
  double support(Direction d) const { return detail::support(bounds_, d); }

  double max_sum_rate() const { return support(Direction::sum); }

  /// Every bound tightened to the support value; constraints that do not
  /// define an edge dropped (the axis bounds are always kept).
  Region canonical() const { return Region(detail::canonical(bounds_)); }

  /// Equal as point sets, compared through the five support values.
  bool same_as(const Region& other, double tol) const {
    for (Direction d : kDirections) {
      if (std::abs(support(d) - other.support(d)) > tol) return false;
    }
    return true;
  }

  const detail::Bounds& raw_bounds() const noexcept { return bounds_; }

  static Region from_bounds(const detail::Bounds& b) { return Region(b); }

  friend bool operator==(const Region& a, const Region& b) = default;

 private:
  static constexpr double kAbsent = std::numeric_limits<double>::infinity();

  explicit Region(const detail::Bounds& b) : bounds_(b) {}

  static constexpr std::size_t index(Direction d) { return static_cast<std::size_t>(d); }

  detail::Bounds bounds_{};
};

struct RateTag {};
struct GdofTag {};

using RateRegion = Region<RateTag>;
using GdofRegion = Region<GdofTag>;

/// Tightest region over the fixed directions containing the convex hull of
/// the union. Throws DomainError on an empty list.
template <class Tag>
Region<Tag> hull_union(std::span<const Region<Tag>> regions) {
  if (regions.empty()) throw DomainError("hull_union of an empty list");
  std::vector<RatePair> pts;
  for (const auto& r : regions) {
    auto v = r.vertices();
    pts.insert(pts.end(), v.begin(), v.end());
  }
  return Region<Tag>::from_bounds(detail::canonical(detail::hull_bounds(pts)));
}

template <class Tag>
Region<Tag> hull_union(const std::vector<Region<Tag>>& regions) {
  return hull_union(std::span<const Region<Tag>>(regions));
}

template <class Tag>
Region<Tag> hull_union(std::initializer_list<Region<Tag>> regions) {
  return hull_union(std::span<const Region<Tag>>(regions.begin(), regions.size()));
}

/// Smallest g >= 0 such that ([r1 - g]^+, [r2 - g]^+) lies in `inner` for every
/// vertex (r1, r2) of `outer`: the per-user gap.
template <class Tag>
double gap_between(const Region<Tag>& outer, const Region<Tag>& inner) {
  return detail::gap_between(outer.raw_bounds(), inner.raw_bounds());
}

/// Smallest g >= 0 such that ([r1 - g]^+, r2) lies in `inner` for every vertex
/// of `outer`; +inf if no shift of R1 alone suffices.
template <class Tag>
double gap_first_user(const Region<Tag>& outer, const Region<Tag>& inner) {
  return detail::gap_first_user(outer.raw_bounds(), inner.raw_bounds());
}

// ---------------------------------------------------------------------------
// Gaussian IC-OR regions. Functions taking PowerGains expect squared gains.

/// Scheme I: PAM(n) at transmitter 1, Gaussian at transmitter 2, U2 = X2.
///   R1      <= Id(n, g11)
///   R2      <= Id(n, g21/(1+g22)) + Ig(g22) - Ig(min(n^2-1, g21))
///   R1 + R2 <= Id(n, g11/(1+g12)) + Ig(g12)
RateRegion scheme1_region(const PowerGains& g, std::uint64_t n);
RateRegion scheme1_region(const ChannelGains& ch, std::uint64_t n);

/// Scheme II: mixed discrete/Gaussian input at transmitter 1 with power split
/// d1, common/private Gaussian split d2 at transmitter 2, U2 = X2 common part.
/// The receiver-2 part of the sum bound, a lower bound on I(X2; Y2 | U2), is
/// clipped at zero; with d1 = d2 = 0 the region equals scheme1_region.
RateRegion scheme2_region(const PowerGains& g, std::uint64_t n, double d1, double d2);
RateRegion scheme2_region(const ChannelGains& ch, std::uint64_t n, double d1, double d2);

/// Symmetric Scheme II with the power splits d1 = d2 = 1/(1+inr), in the
/// further lower-bounded closed form used by the constant-gap argument:
///   R1      <= Id(n, snr inr/(1+snr+2inr)) + Ig(snr/(1+2inr))
///   R2      <= Id(n, inr^2/((1+inr)(1+snr)+inr)) + Ig(snr/2) - Ig(min(n^2-1, inr^2/(1+2inr)))
///   R1 + R2 <= Id(n, snr inr/((1+inr)^2+snr)) + Ig(inr + snr/(1+inr)) - Ig(inr/(1+inr))
///              + Id(n, inr^2/(1+snr+2inr)) + Ig(snr/(1+2inr)) - Ig(min(n^2-1, inr^2/(1+2inr)))
RateRegion scheme2_etw_region(const SymmetricChannel& ch, std::uint64_t n);

/// Sum rate of Gaussian inputs at both transmitters.
double gg_sumrate(const SymmetricChannel& ch);
double gg_sumrate(double snr, double inr);

/// Time division with Gaussian codebooks: (1/2) log2(1 + 2 snr).
double td_sumrate(double snr);

/// Classical Gaussian IC outer bound (two single-rate, two sum-rate, and the
/// 2R1+R2 / R1+2R2 constraints).
RateRegion etw_outer(const SymmetricChannel& ch);
RateRegion etw_outer(double snr, double inr);

/// New outer bound evaluated for independent Gaussian inputs with U2 a noisy
/// copy of T2 = h12 X2 + Z1.
///   R1 <= Ig(snr), R2 <= Ig(snr/(1+inr)),
///   R1 + R2 <= Ig(snr+inr) + Ig(snr/(1+inr)^2)
RateRegion thm1_gaussian_outer_gg(const SymmetricChannel& ch);

/// Inner region (simplified Han-Kobayashi) for the same Gaussian inputs and
/// the same U2; within corollary2_gap of thm1_gaussian_outer_gg in R1.
RateRegion gaussian_inner_noisy_copy(const SymmetricChannel& ch);

}  // namespace icor
