#include "icor/lda.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

#include "icor/errors.hpp"
#include "icor/parallel.hpp"

namespace icor {

LdaChannel LdaChannel::symmetric(int ns, int ni) { return {ns, ni, ni, ns}; }

int LdaChannel::q() const noexcept { return std::max({n11, n12, n21, n22}); }

void LdaChannel::validate() const {
  if (n11 < 0 || n12 < 0 || n21 < 0 || n22 < 0) throw DomainError("LDA levels must be >= 0");
  if (q() == 0) throw DomainError("LDA channel needs at least one signal level");
  if (q() > 30) throw DomainError("LDA channel too large to index");
}

namespace {

std::size_t size_of(int q) { return std::size_t{1} << q; }

template <class T>
void validate_impl(const BasicBitvecPmf<T>& pmf, const T& tol) {
  if (pmf.q < 0 || pmf.q > 30 || pmf.p.size() != size_of(pmf.q)) {
    throw DomainError("pmf must have 2^q entries");
  }
  T total(0);
  for (const T& v : pmf.p) {
    if (v < T(0)) throw DomainError("pmf entries must be >= 0");
    total += v;
  }
  const T diff = total > T(1) ? total - T(1) : T(1) - total;
  if (diff > tol) throw DomainError("pmf must sum to 1");
}

template <class T>
std::vector<T> shift_vec(const std::vector<T>& p, int s) {
  std::vector<T> out(p.size(), T(0));
  for (std::size_t x = 0; x < p.size(); ++x) out[x >> s] += p[x];
  return out;
}

template <class T>
std::vector<T> xor_vec(const std::vector<T>& a, const std::vector<T>& b) {
  std::vector<T> out(a.size(), T(0));
  for (std::size_t u = 0; u < a.size(); ++u) {
    if (a[u] == T(0)) continue;
    for (std::size_t v = 0; v < b.size(); ++v) out[u ^ v] += a[u] * b[v];
  }
  return out;
}

struct Shifts {
  int s11, s12, s21, s22;
};

Shifts shifts(const LdaChannel& ch) {
  const int q = ch.q();
  return {q - ch.n11, q - ch.n12, q - ch.n21, q - ch.n22};
}

// Output distributions of one input pair. The joint pmf of (Y2, T2) is stored
// row-major as j[y * Q + t].
template <class T>
struct Outputs {
  std::vector<T> a, t1, t2, y1, y2, j;
};

template <class T>
Outputs<T> outputs(const LdaChannel& ch, const std::vector<T>& p1, const std::vector<T>& p2) {
  const Shifts s = shifts(ch);
  const std::size_t n = p1.size();
  Outputs<T> o;
  o.a = shift_vec(p1, s.s11);
  o.t1 = shift_vec(p1, s.s21);
  o.t2 = shift_vec(p2, s.s12);
  o.y1 = xor_vec(o.a, o.t2);
  o.y2 = xor_vec(o.t1, shift_vec(p2, s.s22));
  o.j.assign(n * n, T(0));
  for (std::size_t x2 = 0; x2 < n; ++x2) {
    if (p2[x2] == T(0)) continue;
    const std::size_t e = x2 >> s.s22;
    const std::size_t t = x2 >> s.s12;
    for (std::size_t u = 0; u < n; ++u) {
      if (o.t1[u] == T(0)) continue;
      o.j[(u ^ e) * n + t] += p2[x2] * o.t1[u];
    }
  }
  return o;
}

void check_pair(const LdaChannel& ch, int q1, int q2) {
  ch.validate();
  if (q1 != ch.q() || q2 != ch.q()) throw DomainError("pmf length does not match the channel");
}

}  // namespace

BitvecPmf uniform_pmf(int q) {
  if (q < 0 || q > 30) throw DomainError("q out of range");
  const std::size_t n = size_of(q);
  return {q, std::vector<double>(n, 1.0 / static_cast<double>(n))};
}

BitvecPmf point_mass(int q, std::uint32_t x) {
  if (q < 0 || q > 30 || x >= size_of(q)) throw DomainError("point mass out of range");
  BitvecPmf p{q, std::vector<double>(size_of(q), 0.0)};
  p.p[x] = 1.0;
  return p;
}

void validate(const BitvecPmf& pmf) { validate_impl(pmf, 1e-12); }
void validate(const ExactBitvecPmf& pmf) { validate_impl(pmf, Rational(0)); }

BitvecPmf to_double(const ExactBitvecPmf& pmf) {
  BitvecPmf out{pmf.q, {}};
  out.p.reserve(pmf.p.size());
  for (const auto& v : pmf.p) out.p.push_back(boost::rational_cast<double>(v));
  return out;
}

std::uint32_t shift_apply(std::uint32_t x, int s, int q) {
  if (q < 0 || q > 30) throw DomainError("q out of range");
  if (x >= size_of(q)) throw DomainError("bit vector index out of range");
  if (s < 0 || s > q) throw DomainError("shift must lie in [0, q]");
  return x >> s;
}

double pmf_entropy(std::span<const double> p) {
  double h = 0.0;
  for (double v : p) {
    if (v > 0.0) h -= v * std::log2(v);
  }
  return h;
}

double pmf_entropy(const BitvecPmf& pmf) { return pmf_entropy(std::span<const double>(pmf.p)); }

std::optional<Rational> exact_entropy(std::span<const Rational> p) {
  Rational h(0);
  for (const auto& v : p) {
    if (v == Rational(0)) continue;
    const auto den = static_cast<std::uint64_t>(v.denominator());
    if (v.numerator() != 1 || !std::has_single_bit(den)) return std::nullopt;
    h += v * Rational(std::countr_zero(den));
  }
  return h;
}

BitvecPmf shift_pmf(const BitvecPmf& pmf, int s) {
  if (s < 0 || s > pmf.q) throw DomainError("shift must lie in [0, q]");
  return {pmf.q, shift_vec(pmf.p, s)};
}

BitvecPmf xor_convolve(const BitvecPmf& a, const BitvecPmf& b) {
  if (a.q != b.q) throw DomainError("xor_convolve needs equal lengths");
  return {a.q, xor_vec(a.p, b.p)};
}

LdaEntropies<double> lda_entropies(const LdaChannel& ch, const BitvecPmf& p1,
                                   const BitvecPmf& p2) {
  check_pair(ch, p1.q, p2.q);
  validate(p1);
  validate(p2);
  const auto o = outputs(ch, p1.p, p2.p);
  return {pmf_entropy(o.a),  pmf_entropy(o.y1), pmf_entropy(o.y2),
          pmf_entropy(o.j),  pmf_entropy(o.t1), pmf_entropy(o.t2)};
}

RateRegion lda_region(const LdaChannel& ch, const BitvecPmf& p1, const BitvecPmf& p2) {
  const auto h = lda_entropies(ch, p1, p2);
  RateRegion r(h.h_r1, h.h_y2 - h.h_t1);
  r.limit(Direction::sum, h.h_y1 + (h.h_y2t2 - h.h_t2) - h.h_t1);
  return r;
}

double lda_sumrate(const LdaChannel& ch, const BitvecPmf& p1, const BitvecPmf& p2) {
  return lda_region(ch, p1, p2).max_sum_rate();
}

std::optional<Rational> lda_sumrate_exact(const LdaChannel& ch, const ExactBitvecPmf& p1,
                                          const ExactBitvecPmf& p2) {
  check_pair(ch, p1.q, p2.q);
  validate(p1);
  validate(p2);
  const auto o = outputs(ch, p1.p, p2.p);
  const auto ha = exact_entropy(o.a);
  const auto hy1 = exact_entropy(o.y1);
  const auto hy2 = exact_entropy(o.y2);
  const auto hj = exact_entropy(o.j);
  const auto ht1 = exact_entropy(o.t1);
  const auto ht2 = exact_entropy(o.t2);
  if (!ha || !hy1 || !hy2 || !hj || !ht1 || !ht2) return std::nullopt;
  const Rational zero(0);
  const Rational r1 = std::max(zero, *ha);
  const Rational r2 = std::max(zero, *hy2 - *ht1);
  const Rational sum = std::max(zero, *hy1 + (*hj - *ht2) - *ht1);
  return std::min(r1 + r2, sum);
}

double lda_uniform_normalized_sumrate(const LdaChannel& ch) {
  ch.validate();
  if (ch.n11 == 0) throw DomainError("normalization needs n11 >= 1");
  const auto u = uniform_pmf(ch.q());
  return lda_sumrate(ch, u, u) / (2.0 * ch.n11);
}

// ---------------------------------------------------------------------------
// Optimizer

namespace {


// dH/dp_v in bits, with the constant -log2(e) dropped (it cancels through the
// softmax chain rule).
void entropy_grad(const std::vector<double>& p, std::vector<double>& g) {
  g.resize(p.size());
  for (std::size_t v = 0; v < p.size(); ++v) g[v] = -std::log2(std::max(p[v], 1e-300));
}

double entropy(const std::vector<double>& p) { return pmf_entropy(std::span<const double>(p)); }

struct Objective {
  double a;  // R1 bound + R2 bound
  double s;  // sum bound
  double value() const { return std::min(a, s); }
};

class Evaluator {
 public:
  explicit Evaluator(const LdaChannel& ch) : ch_(ch), sh_(shifts(ch)), n_(size_of(ch.q())) {}

  Objective eval(const std::vector<double>& p1, const std::vector<double>& p2) {
    o_ = outputs(ch_, p1, p2);
    const double ht1 = entropy(o_.t1);
    return {entropy(o_.a) + entropy(o_.y2) - ht1,
            entropy(o_.y1) + entropy(o_.j) - entropy(o_.t2) - ht1};
  }

  // Gradients of A and S with respect to p1 (the last eval's point).
  void grad_p1(const std::vector<double>& p2, std::vector<double>& ga, std::vector<double>& gs) {
    entropy_grad(o_.a, g_a_);
    entropy_grad(o_.t1, g_t1_);
    entropy_grad(o_.y1, g_y1_);
    entropy_grad(o_.y2, g_y2_);
    entropy_grad(o_.j, g_j_);
    const auto e = shift_vec(p2, sh_.s22);
    const auto dy2_dt1 = xor_vec(g_y2_, e);       // (g_Y2 * e)[u]
    const auto dy1_da = xor_vec(g_y1_, o_.t2);    // (g_Y1 * t2)[u]
    std::vector<double> dj_dt1(n_, 0.0);
    for (std::size_t x2 = 0; x2 < n_; ++x2) {
      if (p2[x2] == 0.0) continue;
      const std::size_t ex = x2 >> sh_.s22;
      const std::size_t t = x2 >> sh_.s12;
      for (std::size_t u = 0; u < n_; ++u) dj_dt1[u] += p2[x2] * g_j_[(u ^ ex) * n_ + t];
    }
    ga.assign(n_, 0.0);
    gs.assign(n_, 0.0);
    for (std::size_t x = 0; x < n_; ++x) {
      const std::size_t ia = x >> sh_.s11;
      const std::size_t it = x >> sh_.s21;
      ga[x] = g_a_[ia] + dy2_dt1[it] - g_t1_[it];
      gs[x] = dy1_da[ia] + dj_dt1[it] - g_t1_[it];
    }
  }

  // Gradients of A and S with respect to p2 (the last eval's point).
  void grad_p2(std::vector<double>& ga, std::vector<double>& gs) {
    entropy_grad(o_.t2, g_t2_);
    entropy_grad(o_.y1, g_y1_);
    entropy_grad(o_.y2, g_y2_);
    entropy_grad(o_.j, g_j_);
    const auto dy2_de = xor_vec(g_y2_, o_.t1);
    const auto dy1_dt2 = xor_vec(g_y1_, o_.a);
    ga.assign(n_, 0.0);
    gs.assign(n_, 0.0);
    for (std::size_t x2 = 0; x2 < n_; ++x2) {
      const std::size_t ex = x2 >> sh_.s22;
      const std::size_t t = x2 >> sh_.s12;
      double dj = 0.0;
      for (std::size_t u = 0; u < n_; ++u) dj += o_.t1[u] * g_j_[(u ^ ex) * n_ + t];
      ga[x2] = dy2_de[ex];
      gs[x2] = dy1_dt2[t] - g_t2_[t] + dj;
    }
  }

 private:
  LdaChannel ch_;
  Shifts sh_;
  std::size_t n_;
  Outputs<double> o_;
  std::vector<double> g_a_, g_t1_, g_t2_, g_y1_, g_y2_, g_j_;
};

void softmax(const std::vector<double>& z, std::vector<double>& p) {
  const double m = *std::max_element(z.begin(), z.end());
  p.resize(z.size());
  double total = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) total += (p[i] = std::exp(z[i] - m));
  for (double& v : p) v /= total;
}

struct Adam {
  std::vector<double> m, v;
  int t = 0;
  void step(std::vector<double>& z, const std::vector<double>& grad, double lr) {
    constexpr double b1 = 0.9, b2 = 0.999, eps = 1e-8;
    if (m.empty()) m.assign(z.size(), 0.0), v.assign(z.size(), 0.0);
    ++t;
    const double c1 = 1.0 - std::pow(b1, t);
    const double c2 = 1.0 - std::pow(b2, t);
    for (std::size_t i = 0; i < z.size(); ++i) {
      m[i] = b1 * m[i] + (1.0 - b1) * grad[i];
      v[i] = b2 * v[i] + (1.0 - b2) * grad[i] * grad[i];
      z[i] += lr * (m[i] / c1) / (std::sqrt(v[i] / c2) + eps);  // ascent
    }
  }
};

// Gradient of the soft minimum -tau log(exp(-A/tau) + exp(-S/tau)) pushed
// through the softmax parametrization p = softmax(z).
void logit_grad(const Objective& f, double tau, const std::vector<double>& p,
                const std::vector<double>& ga, const std::vector<double>& gs,
                std::vector<double>& out) {
  const double lo = std::min(f.a, f.s);
  const double ea = std::exp(-(f.a - lo) / tau);
  const double es = std::exp(-(f.s - lo) / tau);
  const double wa = ea / (ea + es);
  const double ws = 1.0 - wa;
  out.resize(p.size());
  double mean = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    out[i] = wa * ga[i] + ws * gs[i];
    mean += p[i] * out[i];
  }
  for (std::size_t i = 0; i < p.size(); ++i) out[i] = p[i] * (out[i] - mean);
}

std::vector<double> snap(const std::vector<double>& p, double t) {
  const double mx = *std::max_element(p.begin(), p.end());
  std::vector<double> u(p.size(), 0.0);
  std::size_t k = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] > t * mx) u[i] = 1.0, ++k;
  }
  for (double& v : u) v /= static_cast<double>(k);
  return u;
}

struct Candidate {
  double value = -1.0;
  std::vector<double> p1, p2;

  void offer(double v, const std::vector<double>& a, const std::vector<double>& b) {
    if (v > value) value = v, p1 = a, p2 = b;
  }
};

Candidate run_restart(const LdaChannel& ch, const LdaOptimizerConfig& cfg, std::uint64_t seed) {
  const std::size_t n = size_of(ch.q());
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 2.0);
  std::vector<double> z1(n), z2(n);
  for (double& v : z1) v = normal(rng);
  for (double& v : z2) v = normal(rng);

  Evaluator ev(ch);
  Adam adam1, adam2;
  std::vector<double> p1, p2, ga, gs, g;
  Candidate best;
  double last_best = -1.0;
  int stale = 0;
  for (int it = 0; it < cfg.max_iters; ++it) {
    const double tau = std::max(0.3 * std::pow(0.99, it), 1e-3);

    softmax(z1, p1);
    softmax(z2, p2);
    Objective f = ev.eval(p1, p2);
    best.offer(f.value(), p1, p2);
    ev.grad_p1(p2, ga, gs);
    logit_grad(f, tau, p1, ga, gs, g);
    adam1.step(z1, g, cfg.learning_rate);

    softmax(z1, p1);
    f = ev.eval(p1, p2);
    best.offer(f.value(), p1, p2);
    ev.grad_p2(ga, gs);
    logit_grad(f, tau, p2, ga, gs, g);
    adam2.step(z2, g, cfg.learning_rate);

    if (best.value > last_best + cfg.tol) {
      last_best = best.value;
      stale = 0;
    } else if (++stale >= cfg.patience && it >= cfg.min_iters) {
      break;
    }
  }

  // Polish: snap to uniform distributions on the dominant supports.
  const Candidate raw = best;
  for (double t : {0.5, 0.2, 0.1, 0.01}) {
    const auto u1 = snap(raw.p1, t);
    const auto u2 = snap(raw.p2, t);
    best.offer(ev.eval(u1, u2).value(), u1, u2);
    best.offer(ev.eval(u1, raw.p2).value(), u1, raw.p2);
    best.offer(ev.eval(raw.p1, u2).value(), raw.p1, u2);
  }
  return best;
}

Candidate exhaustive_uniform_subsets(const LdaChannel& ch) {
  const std::size_t n = size_of(ch.q());
  const std::size_t masks = (std::size_t{1} << n) - 1;
  std::vector<std::vector<double>> pm(masks);
  for (std::size_t m = 1; m <= masks; ++m) {
    auto& p = pm[m - 1];
    p.assign(n, 0.0);
    const double w = 1.0 / std::popcount(m);
    for (std::size_t i = 0; i < n; ++i) {
      if (m >> i & 1U) p[i] = w;
    }
  }
  Evaluator ev(ch);
  Candidate best;
  for (const auto& a : pm) {
    for (const auto& b : pm) best.offer(ev.eval(a, b).value(), a, b);
  }
  return best;
}

}  // namespace

LdaOptimum lda_max_sumrate(const LdaChannel& ch, const LdaOptimizerConfig& cfg) {
  ch.validate();
  if (ch.q() > kLdaMaxQ) {
    throw CapabilityError("LDA optimizer supports q <= " + std::to_string(kLdaMaxQ));
  }
  if (cfg.restarts < 0 || cfg.max_iters < 0) throw DomainError("optimizer counts must be >= 0");

  std::vector<Candidate> results(static_cast<std::size_t>(cfg.restarts));
  parallel_for(
      results.size(), [&](std::size_t r) { results[r] = run_restart(ch, cfg, cfg.seed + r); },
      cfg.threads);

  Candidate best;
  const auto u = uniform_pmf(ch.q()).p;
  {
    Evaluator ev(ch);
    best.offer(ev.eval(u, u).value(), u, u);
  }
  for (const auto& c : results) best.offer(c.value, c.p1, c.p2);
  if (ch.q() <= cfg.exhaustive_max_q) {
    const auto c = exhaustive_uniform_subsets(ch);
    best.offer(c.value, c.p1, c.p2);
  }
  // Report the value of the returned pmfs through the public region code.
  LdaOptimum out{0.0, {ch.q(), best.p1}, {ch.q(), best.p2}};
  out.value = lda_sumrate(ch, out.p1, out.p2);
  return out;
}

// ---------------------------------------------------------------------------
// Published pmfs

namespace {

ExactBitvecPmf dyadic(int q, std::initializer_list<std::pair<std::uint32_t, Rational>> mass) {
  ExactBitvecPmf p{q, std::vector<Rational>(size_of(q), Rational(0))};
  for (const auto& [x, w] : mass) p.p[x] = w;
  return p;
}

}  // namespace

const std::vector<TableIEntry>& table1_entries() {
  static const std::vector<TableIEntry> rows = [] {
    const Rational h(1, 2);
    const Rational f(1, 4);
    return std::vector<TableIEntry>{
        {"1/2", Rational(1, 2), 2, 1, dyadic(2, {{0, h}, {2, h}}), dyadic(2, {{1, h}, {3, h}})},
        {"2/3", Rational(2, 3), 3, 2, dyadic(3, {{2, f}, {3, f}, {6, f}, {7, f}}),
         dyadic(3, {{2, f}, {3, f}, {6, f}, {7, f}})},
        {"1", Rational(1), 2, 2, dyadic(2, {{2, h}, {3, h}}), dyadic(2, {{1, h}, {3, h}})},
        {"4/3", Rational(4, 3), 3, 4, dyadic(4, {{5, f}, {7, f}, {13, f}, {15, f}}),
         dyadic(4, {{3, f}, {5, f}, {13, f}, {15, f}})},
        {"2", Rational(2), 1, 2, dyadic(2, {{1, h}, {3, h}}), dyadic(2, {{1, h}, {3, h}})},
    };
  }();
  return rows;
}

TableIEntry table1_last_row_literal() {
  TableIEntry e = table1_entries().back();
  e.alpha = Rational(1, 2);
  e.ns = 2;
  e.ni = 1;
  return e;
}

std::vector<Fig2Row> lda_fig2_rows(int max_q, const LdaOptimizerConfig& cfg) {
  if (max_q < 1 || max_q > kLdaMaxQ) {
    throw CapabilityError("normalized sum-rate sweep supports 1 <= q <= " + std::to_string(kLdaMaxQ));
  }
  std::vector<Fig2Row> rows;
  for (int ns = 1; ns <= max_q; ++ns) {
    for (int ni = 0; ni <= max_q; ++ni) {
      if (std::gcd(ns, ni) != 1) continue;
      const auto ch = LdaChannel::symmetric(ns, ni);
      const double a = static_cast<double>(ni) / ns;
      const double opt = lda_max_sumrate(ch, cfg).value / (2.0 * ns);
      rows.push_back({a, ns, ni, lda_uniform_normalized_sumrate(ch), opt, wcurve(a)});
    }
  }
  std::sort(rows.begin(), rows.end(), [](const Fig2Row& x, const Fig2Row& y) {
    return x.alpha < y.alpha || (x.alpha == y.alpha && x.ns < y.ns);
  });
  return rows;
}

}  // namespace icor
