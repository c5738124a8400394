#include "icor/gauss_mi.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <numeric>

#include <Eigen/Eigenvalues>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <fmt/format.h>

#include "icor/errors.hpp"

namespace icor {

namespace {

constexpr double kLog2e = std::numbers::log2e;

// 0.5 * log2(2 pi e sigma^2)
double gaussian_entropy_bits(double sigma) {
  return 0.5 * std::log2(2.0 * std::numbers::pi * std::numbers::e * sigma * sigma);
}

// Natural-log density of the mixture at anchor + off. Distances to the means
// are formed as (anchor - mean) + off so that large means keep full relative
// precision in the offset.
double log_density(const GaussianMixture1D& mix, double anchor, double off) {
  const double inv = 1.0 / mix.sigma;
  double peak = -std::numeric_limits<double>::infinity();
  thread_local std::vector<double> terms;
  terms.resize(mix.means.size());
  for (std::size_t k = 0; k < mix.means.size(); ++k) {
    if (mix.weights[k] <= 0.0) {
      terms[k] = -std::numeric_limits<double>::infinity();
      continue;
    }
    const double z = ((anchor - mix.means[k]) + off) * inv;
    terms[k] = std::log(mix.weights[k]) - 0.5 * z * z;
    peak = std::max(peak, terms[k]);
  }
  double acc = 0.0;
  for (double t : terms) acc += std::exp(t - peak);
  return peak + std::log(acc) - std::log(mix.sigma) - 0.5 * std::log(2.0 * std::numbers::pi);
}

double hermite_entropy(const GaussianMixture1D& mix, const HermiteRule& rule) {
  const double scale = std::numbers::sqrt2 * mix.sigma;
  double h = 0.0;
  for (std::size_t k = 0; k < mix.means.size(); ++k) {
    if (mix.weights[k] <= 0.0) continue;
    double e = 0.0;
    for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
      e += rule.weights[j] * log_density(mix, mix.means[k], scale * rule.nodes[j]);
    }
    h -= mix.weights[k] * e / std::sqrt(std::numbers::pi);
  }
  return h * kLog2e;
}

// -int p log2 p, split at the midpoints between consecutive means so that
// every panel holds one bump.
double kronrod_entropy(const GaussianMixture1D& mix, double& err_out) {
  std::vector<double> mu;
  for (std::size_t k = 0; k < mix.means.size(); ++k) {
    if (mix.weights[k] > 0.0) mu.push_back(mix.means[k]);
  }
  std::sort(mu.begin(), mu.end());
  mu.erase(std::unique(mu.begin(), mu.end()), mu.end());
  double total = 0.0;
  err_out = 0.0;
  for (std::size_t k = 0; k < mu.size(); ++k) {
    // Panel around mu[k], in offsets from mu[k].
    const double lo = k == 0 ? -8.0 * mix.sigma : 0.5 * (mu[k - 1] - mu[k]);
    const double hi = k + 1 == mu.size() ? 8.0 * mix.sigma : 0.5 * (mu[k + 1] - mu[k]);
    auto integrand = [&](double off) {
      const double lp = log_density(mix, mu[k], off);
      return -std::exp(lp) * lp;
    };
    double err = 0.0;
    total += boost::math::quadrature::gauss_kronrod<double, 61>::integrate(integrand, lo, hi, 20,
                                                                            1e-13, &err);
    err_out += err;
  }
  err_out *= kLog2e;
  return total * kLog2e;
}

}  // namespace

GaussianMixture1D GaussianMixture1D::uniform(std::vector<double> means, double sigma) {
  GaussianMixture1D m;
  const double w = means.empty() ? 0.0 : 1.0 / static_cast<double>(means.size());
  m.weights.assign(means.size(), w);
  m.means = std::move(means);
  m.sigma = sigma;
  return m;
}

void GaussianMixture1D::validate() const {
  if (means.empty() || means.size() != weights.size()) {
    throw DomainError("mixture needs matching, nonempty means and weights");
  }
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw DomainError("mixture sigma must be > 0");
  double total = 0.0;
  for (std::size_t k = 0; k < means.size(); ++k) {
    if (!std::isfinite(means[k])) throw DomainError("mixture means must be finite");
    if (!(weights[k] >= 0.0)) throw DomainError("mixture weights must be >= 0");
    total += weights[k];
  }
  if (std::abs(total - 1.0) > 1e-12) throw DomainError("mixture weights must sum to 1");
}

double GaussianMixture1D::variance() const {
  double m1 = 0.0;
  double m2 = 0.0;
  for (std::size_t k = 0; k < means.size(); ++k) {
    m1 += weights[k] * means[k];
    m2 += weights[k] * means[k] * means[k];
  }
  return sigma * sigma + m2 - m1 * m1;
}

std::vector<double> pam_points(std::uint64_t n) {
  if (n == 0) throw DomainError("PAM size must be at least 1");
  if (n == 1) return {0.0};
  const double nn = static_cast<double>(n);
  const double d = std::sqrt(12.0 / (nn * nn - 1.0));
  std::vector<double> pts(n);
  for (std::uint64_t k = 0; k < n; ++k) {
    pts[k] = (static_cast<double>(k) - 0.5 * (nn - 1.0)) * d;
  }
  return pts;
}

std::vector<double> PamInput::points() const { return pam_points(n); }

const HermiteRule& hermite_rule(int size) {
  if (size < 1) throw DomainError("Hermite rule needs at least one node");
  static std::mutex mu;
  static std::map<int, std::unique_ptr<HermiteRule>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[size];
  if (!slot) {
    // Golub-Welsch: eigen-decomposition of the Jacobi matrix of the
    // Hermite recurrence.
    Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(size, size);
    for (int k = 1; k < size; ++k) {
      jac(k, k - 1) = jac(k - 1, k) = std::sqrt(0.5 * k);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jac);
    auto rule = std::make_unique<HermiteRule>();
    rule->nodes.resize(size);
    rule->weights.resize(size);
    for (int k = 0; k < size; ++k) {
      rule->nodes[k] = es.eigenvalues()(k);
      const double v0 = es.eigenvectors()(0, k);
      rule->weights[k] = std::sqrt(std::numbers::pi) * v0 * v0;
    }
    // Symmetrize to remove eigen-solver noise.
    for (int k = 0; k < size / 2; ++k) {
      const int m = size - 1 - k;
      const double x = 0.5 * (rule->nodes[m] - rule->nodes[k]);
      const double w = 0.5 * (rule->weights[m] + rule->weights[k]);
      rule->nodes[k] = -x;
      rule->nodes[m] = x;
      rule->weights[k] = rule->weights[m] = w;
    }
    if (size % 2 == 1) rule->nodes[size / 2] = 0.0;
    slot = std::move(rule);
  }
  return *slot;
}

double gm_entropy(const GaussianMixture1D& mix, const QuadratureConfig& cfg) {
  mix.validate();
  if (cfg.nodes < 2) throw DomainError("quadrature needs at least 2 nodes");
  const double full = hermite_entropy(mix, hermite_rule(cfg.nodes));
  const double half = hermite_entropy(mix, hermite_rule(cfg.nodes / 2));
  if (std::abs(full - half) <= cfg.abs_tol) return full;

  double err = 0.0;
  const double h = kronrod_entropy(mix, err);
  if (!(err <= cfg.abs_tol) || !std::isfinite(h)) {
    throw NumericError(fmt::format("mixture entropy did not converge (estimate {:.3g} bits)", err),
                       err);
  }
  return h;
}

double mi_pam_awgn(std::uint64_t n, double snr, const QuadratureConfig& cfg) {
  if (n == 0) throw DomainError("PAM size must be at least 1");
  if (!(snr >= 0.0) || !std::isfinite(snr)) throw DomainError("snr must be finite and >= 0");
  if (n == 1 || snr == 0.0) return 0.0;
  auto pts = pam_points(n);
  const double a = std::sqrt(snr);
  for (double& p : pts) p *= a;
  const double h = gm_entropy(GaussianMixture1D::uniform(std::move(pts), 1.0), cfg);
  const double mi = h - gaussian_entropy_bits(1.0);
  return std::clamp(mi, 0.0, std::log2(static_cast<double>(n)));
}

RateRegion scheme1_numeric_region(const PowerGains& g, std::uint64_t n,
                                  const QuadratureConfig& cfg) {
  if (n == 0) throw DomainError("PAM size must be at least 1");
  RateRegion r(mi_pam_awgn(n, g.g11, cfg),
               mi_pam_awgn(n, g.g21 / (1.0 + g.g22), cfg) + ig(g.g22) - mi_pam_awgn(n, g.g21, cfg));
  r.limit(Direction::sum, mi_pam_awgn(n, g.g11 / (1.0 + g.g12), cfg) + ig(g.g12));
  return r;
}

RateRegion scheme1_numeric_region(const ChannelGains& ch, std::uint64_t n,
                                  const QuadratureConfig& cfg) {
  return scheme1_numeric_region(power_gains(ch), n, cfg);
}

}  // namespace icor
