#pragma once

// Scalar rate functions shared by every other module. All logarithms are base
// 2 and all rates are in bits per channel use. SNR/INR values are linear.

#include <cstdint>

namespace icor {

/// [x]^+ = max(x, 0).
constexpr double positive_part(double x) noexcept { return x > 0.0 ? x : 0.0; }

/// Gaussian-input rate (1/2) log2(1 + x).
double ig(double x);

/// PAM-input rate lower bound: [ig(min(n^2 - 1, x)) - shaping_loss()]^+.
double id(std::uint64_t n, double x);

/// Number of PAM points floor(sqrt(1 + x)); always >= 1.
std::uint64_t nd(double x);

/// (1/2) log2(pi e / 3), the rate penalty of a one-dimensional lattice input.
double shaping_loss() noexcept;

/// Real-valued gains of the two-user Gaussian interference channel.
/// Squared gains are the SNR/INR values used downstream.
struct ChannelGains {
  double h11 = 0.0;
  double h12 = 0.0;
  double h21 = 0.0;
  double h22 = 0.0;

  /// Throws DomainError if any gain is not finite.
  void validate() const;
};

/// Symmetric channel with |h11|^2 = |h22|^2 = snr and |h12|^2 = |h21|^2 = inr,
/// where inr = snr^alpha.
class SymmetricChannel {
 public:
  /// Requires snr >= 0 and alpha >= 0, both finite.
  SymmetricChannel(double snr, double alpha);

  /// Channel given by an explicit INR. alpha() is log(inr)/log(snr); it is
  /// -inf for inr = 0 and NaN when snr = 1 (any alpha fits).
  static SymmetricChannel from_snr_inr(double snr, double inr);

  double snr() const noexcept { return snr_; }
  double alpha() const noexcept { return alpha_; }
  double inr() const noexcept { return inr_; }

  ChannelGains gains() const;

 private:
  SymmetricChannel(double snr, double alpha, double inr)
      : snr_(snr), alpha_(alpha), inr_(inr) {}

  double snr_;
  double alpha_;
  double inr_;
};

/// Squared gains |h_ij|^2 of a channel. Region formulas are written in terms
/// of these so that symmetric channels avoid a sqrt/square round trip.
struct PowerGains {
  double g11 = 0.0;
  double g12 = 0.0;
  double g21 = 0.0;
  double g22 = 0.0;
};

PowerGains power_gains(const ChannelGains& ch);
PowerGains power_gains(const SymmetricChannel& ch);

/// 10^(db/10).
double db_to_linear(double db);
/// 10 log10(x); -inf at 0. Throws DomainError for negative or NaN x.
double linear_to_db(double x);

}  // namespace icor
