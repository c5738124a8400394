#pragma once

// Quadrature-grade differential entropies of equal-variance Gaussian mixtures
// and the mutual information of PAM inputs over Gaussian noise.

#include <cstdint>
#include <span>
#include <vector>

#include "icor/core_math.hpp"
#include "icor/regions.hpp"

namespace icor {

/// Equal-variance one-dimensional Gaussian mixture.
struct GaussianMixture1D {
  std::vector<double> means;
  std::vector<double> weights;
  double sigma = 1.0;

  /// Equally weighted components at `means`.
  static GaussianMixture1D uniform(std::vector<double> means, double sigma);

  /// Throws DomainError unless weights are nonnegative and sum to 1 (1e-12),
  /// means are finite and sigma > 0.
  void validate() const;

  /// Total variance (component variance plus spread of the means).
  double variance() const;
};

/// Uniform PAM(n) input: zero mean, unit energy, equally spaced.
struct PamInput {
  std::uint64_t n = 1;

  std::vector<double> points() const;
};

struct QuadratureConfig {
  /// Gauss-Hermite nodes per mixture component.
  int nodes = 96;
  /// Absolute tolerance, bits.
  double abs_tol = 1e-8;
};

/// Zero-mean, unit-energy PAM constellation in ascending order. For n >= 2
/// the spacing is sqrt(12 / (n^2 - 1)); n = 1 gives the single point 0.
std::vector<double> pam_points(std::uint64_t n);

/// Gauss-Hermite nodes and weights for the weight function exp(-t^2),
/// nodes ascending. Cached per size; safe to call concurrently.
struct HermiteRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
const HermiteRule& hermite_rule(int size);

/// Differential entropy of `mix` in bits.
///
/// Each component contributes E[-log2 p(Y)] under that component, evaluated
/// by Gauss-Hermite quadrature. A half-size rule gives the error estimate; if
/// the two disagree by more than cfg.abs_tol the integral of -p log2 p is
/// recomputed by adaptive Gauss-Kronrod on [min(means) - 8 sigma,
/// max(means) + 8 sigma]. Throws NumericError if that also misses the
/// tolerance.
double gm_entropy(const GaussianMixture1D& mix, const QuadratureConfig& cfg = {});

/// I(X; sqrt(snr) X + Z) in bits for X ~ PAM(n), Z ~ N(0, 1).
double mi_pam_awgn(std::uint64_t n, double snr, const QuadratureConfig& cfg = {});

/// Scheme I inner region (PAM(n) at transmitter 1, Gaussian at transmitter 2,
/// U2 = X2) with each mutual information evaluated by quadrature instead of
/// its closed-form lower bound:
///   R1      <= I(X1; Y1 | X2)
///   R2      <= I(X2; Y2)
///   R1 + R2 <= I(X1; Y1) + I(X2; Y1 | X1)
RateRegion scheme1_numeric_region(const PowerGains& g, std::uint64_t n,
                                  const QuadratureConfig& cfg = {});
RateRegion scheme1_numeric_region(const ChannelGains& ch, std::uint64_t n,
                                  const QuadratureConfig& cfg = {});

}  // namespace icor
