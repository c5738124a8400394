#pragma once

// Linear deterministic approximation of the channel with one oblivious
// receiver:
//   Y1 = S^(q-n11) X1 + S^(q-n12) X2,   T2 = S^(q-n12) X2
//   Y2 = S^(q-n21) X1 + S^(q-n22) X2,   T1 = S^(q-n21) X1
// over length-q bit vectors with bitwise XOR addition.
//
// Bit vectors are stored as integers in [0, 2^q); the most significant bit is
// the top signal level, and S^s acts as a right shift by s.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "icor/gdof.hpp"
#include "icor/regions.hpp"

namespace icor {

/// Largest q the optimizer accepts (2^q outcomes per input).
inline constexpr int kLdaMaxQ = 6;

struct LdaChannel {
  int n11 = 0;
  int n12 = 0;
  int n21 = 0;
  int n22 = 0;

  /// n11 = n22 = ns, n12 = n21 = ni.
  static LdaChannel symmetric(int ns, int ni);

  int q() const noexcept;

  /// Throws DomainError on negative levels or q = 0.
  void validate() const;
};

/// Probability mass function over the 2^q bit vectors of length q.
template <class T>
struct BasicBitvecPmf {
  int q = 0;
  std::vector<T> p;
};

using BitvecPmf = BasicBitvecPmf<double>;
using ExactBitvecPmf = BasicBitvecPmf<Rational>;

BitvecPmf uniform_pmf(int q);
BitvecPmf point_mass(int q, std::uint32_t x);
/// Throws DomainError unless p has 2^q nonnegative entries summing to 1
/// within 1e-12.
void validate(const BitvecPmf& pmf);
void validate(const ExactBitvecPmf& pmf);
BitvecPmf to_double(const ExactBitvecPmf& pmf);

/// S^s x for a length-q vector: x >> s. Throws DomainError if x is out of
/// range or s is not in [0, q].
std::uint32_t shift_apply(std::uint32_t x, int s, int q);

/// Shannon entropy in bits.
double pmf_entropy(const BitvecPmf& pmf);
double pmf_entropy(std::span<const double> p);

/// Exact entropy when every nonzero probability is a power of 1/2;
/// nullopt otherwise.
std::optional<Rational> exact_entropy(std::span<const Rational> p);

/// Distribution of S^s X.
BitvecPmf shift_pmf(const BitvecPmf& pmf, int s);
/// Distribution of A xor B for independent A, B.
BitvecPmf xor_convolve(const BitvecPmf& a, const BitvecPmf& b);

/// The entropies that define the capacity region for one input pair.
template <class T>
struct LdaEntropies {
  T h_r1;    // H(S^(q-n11) X1)
  T h_y1;    // H(Y1)
  T h_y2;    // H(Y2)
  T h_y2t2;  // H(Y2, T2)
  T h_t1;    // H(T1)
  T h_t2;    // H(T2)
};

LdaEntropies<double> lda_entropies(const LdaChannel& ch, const BitvecPmf& p1,
                                   const BitvecPmf& p2);

/// Capacity region for independent inputs with the given pmfs:
///   R1      <= H(S^(q-n11) X1)
///   R2      <= H(Y2) - H(T1)
///   R1 + R2 <= H(Y1) + H(Y2 | T2) - H(T1)
RateRegion lda_region(const LdaChannel& ch, const BitvecPmf& p1, const BitvecPmf& p2);

/// max(R1 + R2) over lda_region = min(R1 bound + R2 bound, sum bound).
double lda_sumrate(const LdaChannel& ch, const BitvecPmf& p1, const BitvecPmf& p2);

/// Exact max sum-rate for pmfs whose output distributions are all uniform on
/// their supports (dyadic); nullopt if some output entropy is irrational.
std::optional<Rational> lda_sumrate_exact(const LdaChannel& ch, const ExactBitvecPmf& p1,
                                          const ExactBitvecPmf& p2);

/// Normalized sum-rate for i.i.d. Bernoulli(1/2) input bits on a symmetric
/// channel: max sum / (2 n11). Throws DomainError if n11 = 0.
double lda_uniform_normalized_sumrate(const LdaChannel& ch);

struct LdaOptimizerConfig {
  int restarts = 64;
  int max_iters = 400;
  /// Stop once the sum-rate has not improved by more than `tol` over
  /// `patience` iterations (checked after `min_iters`).
  int patience = 50;
  int min_iters = 200;
  double tol = 1e-9;
  double learning_rate = 0.1;
  std::uint64_t seed = 1;
  /// Enumerate all pairs of uniform-on-subset pmfs when q <= this value.
  int exhaustive_max_q = 3;
  /// Worker threads for the restarts; 0 uses the default from parallel.hpp.
  unsigned threads = 0;
};

struct LdaOptimum {
  double value = 0.0;  // bits
  BitvecPmf p1;
  BitvecPmf p2;
};

/// Best sum-rate found over product input pmfs. Deterministic for a fixed
/// config. Throws CapabilityError if q > kLdaMaxQ.
LdaOptimum lda_max_sumrate(const LdaChannel& ch, const LdaOptimizerConfig& cfg = {});

/// A sum-rate optimal pair of input pmfs.
struct TableIEntry {
  std::string label;  // alpha, e.g. "4/3"
  Rational alpha;     // n_I / n_S of the channel used
  int ns;
  int ni;
  ExactBitvecPmf p1;
  ExactBitvecPmf p2;
};

/// Five reference pmf pairs that reach the W-curve. The last one is labelled
/// alpha = 2 but listed with (n_S, n_I) = (2, 1); it is evaluated on (1, 2),
/// which matches the label.
const std::vector<TableIEntry>& table1_entries();

/// Same pmfs as the last entry on the literal (n_S, n_I) = (2, 1) channel.
TableIEntry table1_last_row_literal();

struct Fig2Row {
  double alpha;
  int ns;
  int ni;
  double uniform_normalized;
  double optimized_normalized;
  double wcurve;
};

/// Normalized sum-rates for every symmetric channel with 1 <= ns <= max_q,
/// 0 <= ni <= max_q and gcd(ns, ni) = 1, sorted by alpha.
std::vector<Fig2Row> lda_fig2_rows(int max_q, const LdaOptimizerConfig& cfg = {});

}  // namespace icor
