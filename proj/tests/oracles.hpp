#pragma once

// Reference computations that share no code with the library paths they
// check: Monte-Carlo and Simpson entropies, explicit bit-matrix evaluation of
// the deterministic channel, and bisection for the per-user gap.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <random>
#include <vector>

#include "icor/gauss_mi.hpp"
#include "icor/lda.hpp"
#include "icor/regions.hpp"

namespace icor::test {

struct McEstimate {
  double value;
  double std_error;
};

inline double mixture_density(const GaussianMixture1D& m, double y) {
  const double c = 1.0 / (m.sigma * std::sqrt(2.0 * std::numbers::pi));
  double p = 0.0;
  for (std::size_t k = 0; k < m.means.size(); ++k) {
    const double z = (y - m.means[k]) / m.sigma;
    p += m.weights[k] * c * std::exp(-0.5 * z * z);
  }
  return p;
}

/// -E[log2 p(Y)] over `samples` draws of Y.
inline McEstimate mc_entropy(const GaussianMixture1D& m, std::size_t samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::discrete_distribution<std::size_t> pick(m.weights.begin(), m.weights.end());
  std::normal_distribution<double> noise(0.0, m.sigma);
  double sum = 0.0;
  double sum2 = 0.0;
  for (std::size_t i = 0; i < samples; ++i) {
    const double y = m.means[pick(rng)] + noise(rng);
    const double v = -std::log2(mixture_density(m, y));
    sum += v;
    sum2 += v * v;
  }
  const double n = static_cast<double>(samples);
  const double mean = sum / n;
  const double var = std::max(0.0, sum2 / n - mean * mean);
  return {mean, std::sqrt(var / n)};
}

/// Composite Simpson rule for -int p log2 p on [min - 12 sigma, max + 12 sigma].
inline double simpson_entropy(const GaussianMixture1D& m, int intervals_per_sigma = 400) {
  const auto [lo_it, hi_it] = std::minmax_element(m.means.begin(), m.means.end());
  const double lo = *lo_it - 12.0 * m.sigma;
  const double hi = *hi_it + 12.0 * m.sigma;
  int n = static_cast<int>(std::ceil((hi - lo) / m.sigma * intervals_per_sigma));
  if (n % 2) ++n;
  const double h = (hi - lo) / n;
  auto f = [&](double y) {
    const double p = mixture_density(m, y);
    return p > 0.0 ? -p * std::log2(p) : 0.0;
  };
  double s = f(lo) + f(hi);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(lo + i * h);
  return s * h / 3.0;
}

/// Deterministic channel evaluated with explicit q x q shift matrices over
/// GF(2), bit vectors stored top level first.
class BitMatrixChannel {
 public:
  explicit BitMatrixChannel(const LdaChannel& ch) : ch_(ch), q_(ch.q()) {}

  using Bits = std::vector<int>;

  Bits bits(std::uint32_t x) const {
    Bits b(static_cast<std::size_t>(q_));
    for (int i = 0; i < q_; ++i) b[static_cast<std::size_t>(i)] = (x >> (q_ - 1 - i)) & 1u;
    return b;
  }

  /// S^s b where S is the down-shift matrix: (S b)_0 = 0, (S b)_i = b_{i-1}.
  Bits shift(const Bits& b, int s) const {
    std::vector<std::vector<int>> m(q_, std::vector<int>(q_, 0));
    for (int i = 0; i < q_; ++i) m[i][i] = 1;
    for (int k = 0; k < s; ++k) {
      std::vector<std::vector<int>> next(q_, std::vector<int>(q_, 0));
      for (int i = 1; i < q_; ++i) next[i] = m[i - 1];
      m = next;
    }
    Bits out(static_cast<std::size_t>(q_), 0);
    for (int i = 0; i < q_; ++i) {
      for (int j = 0; j < q_; ++j) out[i] ^= m[i][j] & b[j];
    }
    return out;
  }

  static Bits add(const Bits& a, const Bits& b) {
    Bits out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] ^ b[i];
    return out;
  }

  struct Entropies {
    double h_r1, h_y1, h_y2, h_y2t2, h_t1, h_t2;
  };

  Entropies entropies(const BitvecPmf& p1, const BitvecPmf& p2) const {
    std::map<Bits, double> r1, y1, y2, t1, t2;
    std::map<std::pair<Bits, Bits>, double> y2t2;
    const int q = q_;
    for (std::uint32_t a = 0; a < (1u << q); ++a) {
      for (std::uint32_t b = 0; b < (1u << q); ++b) {
        const double w = p1.p[a] * p2.p[b];
        if (w == 0.0) continue;
        const Bits x1 = bits(a);
        const Bits x2 = bits(b);
        const Bits s11 = shift(x1, q - ch_.n11);
        const Bits s12 = shift(x2, q - ch_.n12);
        const Bits s21 = shift(x1, q - ch_.n21);
        const Bits s22 = shift(x2, q - ch_.n22);
        r1[s11] += w;
        y1[add(s11, s12)] += w;
        y2[add(s21, s22)] += w;
        t1[s21] += w;
        t2[s12] += w;
        y2t2[{add(s21, s22), s12}] += w;
      }
    }
    return {h(r1), h(y1), h(y2), h(y2t2), h(t1), h(t2)};
  }

 private:
  template <class M>
  static double h(const M& m) {
    double s = 0.0;
    for (const auto& [k, p] : m) {
      if (p > 0.0) s -= p * std::log2(p);
    }
    return s;
  }

  LdaChannel ch_;
  int q_;
};

/// Smallest g with every outer vertex shifted down by g (clipped at 0) inside
/// `inner`, by bisection to `tol`.
template <class Tag>
double bisection_gap(const Region<Tag>& outer, const Region<Tag>& inner, double tol = 1e-10) {
  const auto verts = outer.vertices();
  auto ok = [&](double g) {
    for (const RatePair& v : verts) {
      if (!inner.contains({std::max(0.0, v.r1 - g), std::max(0.0, v.r2 - g)}, 1e-12)) return false;
    }
    return true;
  };
  double lo = 0.0;
  double hi = 1.0;
  if (ok(0.0)) return 0.0;
  while (!ok(hi)) hi *= 2.0;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (ok(mid) ? hi : lo) = mid;
  }
  return hi;
}

/// R1-only version of bisection_gap.
template <class Tag>
double bisection_gap_r1(const Region<Tag>& outer, const Region<Tag>& inner, double tol = 1e-10) {
  const auto verts = outer.vertices();
  auto ok = [&](double g) {
    for (const RatePair& v : verts) {
      if (!inner.contains({std::max(0.0, v.r1 - g), v.r2}, 1e-12)) return false;
    }
    return true;
  };
  double lo = 0.0;
  double hi = 1.0;
  if (ok(0.0)) return 0.0;
  for (int k = 0; k < 60 && !ok(hi); ++k) hi *= 2.0;
  if (!ok(hi)) return std::numeric_limits<double>::infinity();
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (ok(mid) ? hi : lo) = mid;
  }
  return hi;
}

}  // namespace icor::test
