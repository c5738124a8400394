#include "icor/core_math.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "icor/errors.hpp"

namespace icor {

namespace {

void require_nonneg(double x, const char* what) {
  if (!std::isfinite(x) || x < 0.0) {
    throw DomainError(std::string(what) + ": argument must be finite and >= 0");
  }
}

}  // namespace

double ig(double x) {
  require_nonneg(x, "ig");
  // log1p keeps full precision for tiny x and is exact at x = 0.
  return 0.5 * std::log1p(x) / std::numbers::ln2;
}

double shaping_loss() noexcept {
  return 0.5 * std::log2(std::numbers::pi * std::numbers::e / 3.0);
}

double id(std::uint64_t n, double x) {
  if (n == 0) throw DomainError("id: n must be >= 1");
  require_nonneg(x, "id");
  const double levels = static_cast<double>(n) * static_cast<double>(n) - 1.0;
  return positive_part(ig(std::min(levels, x)) - shaping_loss());
}

std::uint64_t nd(double x) {
  require_nonneg(x, "nd");
  const double target = 1.0 + x;
  auto n = static_cast<std::uint64_t>(std::floor(std::sqrt(target)));
  // sqrt may land one off near perfect squares; settle on the exact floor.
  while (n > 1 && static_cast<double>(n) * static_cast<double>(n) > target) --n;
  while (static_cast<double>(n + 1) * static_cast<double>(n + 1) <= target) ++n;
  return n < 1 ? 1 : n;
}

void ChannelGains::validate() const {
  for (double h : {h11, h12, h21, h22}) {
    if (!std::isfinite(h)) throw DomainError("ChannelGains: gains must be finite");
  }
}

SymmetricChannel::SymmetricChannel(double snr, double alpha) : snr_(snr), alpha_(alpha) {
  require_nonneg(snr, "SymmetricChannel snr");
  require_nonneg(alpha, "SymmetricChannel alpha");
  inr_ = std::pow(snr, alpha);
}

SymmetricChannel SymmetricChannel::from_snr_inr(double snr, double inr) {
  require_nonneg(snr, "SymmetricChannel snr");
  require_nonneg(inr, "SymmetricChannel inr");
  double alpha = std::numeric_limits<double>::quiet_NaN();
  if (inr == 0.0) {
    alpha = -std::numeric_limits<double>::infinity();
  } else if (snr > 0.0 && snr != 1.0) {
    alpha = std::log(inr) / std::log(snr);
  }
  return SymmetricChannel(snr, alpha, inr);
}

ChannelGains SymmetricChannel::gains() const {
  const double s = std::sqrt(snr_);
  const double i = std::sqrt(inr_);
  return ChannelGains{s, i, i, s};
}

PowerGains power_gains(const ChannelGains& ch) {
  ch.validate();
  return PowerGains{ch.h11 * ch.h11, ch.h12 * ch.h12, ch.h21 * ch.h21, ch.h22 * ch.h22};
}

PowerGains power_gains(const SymmetricChannel& ch) {
  return PowerGains{ch.snr(), ch.inr(), ch.inr(), ch.snr()};
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double linear_to_db(double x) {
  if (!(x >= 0.0)) throw DomainError("linear_to_db: argument must be >= 0");
  return 10.0 * std::log10(x);
}

}  // namespace icor
