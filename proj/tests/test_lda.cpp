#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "generators.hpp"
#include "icor/errors.hpp"
#include "icor/lda.hpp"
#include "oracles.hpp"

using namespace icor;

namespace {

LdaOptimizerConfig quick() {
  LdaOptimizerConfig c;
  c.restarts = 16;
  return c;
}

}  // namespace

TEST_CASE("shift operator") {
  for (std::uint32_t x = 0; x < 16; ++x) {
    CHECK(shift_apply(x, 0, 4) == x);
    CHECK(shift_apply(x, 4, 4) == 0);
  }
  CHECK(shift_apply(0b11, 1, 2) == 0b01);
  CHECK(shift_apply(0b100, 2, 3) == 0b001);
  CHECK_THROWS_AS(shift_apply(4, 0, 2), DomainError);
  CHECK_THROWS_AS(shift_apply(1, 3, 2), DomainError);
  CHECK_THROWS_AS(shift_apply(1, -1, 2), DomainError);
}

TEST_CASE("pmf helpers") {
  CHECK(pmf_entropy(point_mass(3, 5)) == 0.0);
  CHECK(pmf_entropy(uniform_pmf(4)) == doctest::Approx(4.0));
  CHECK(pmf_entropy(BitvecPmf{2, {0.5, 0.0, 0.5, 0.0}}) == doctest::Approx(1.0));
  CHECK_THROWS_AS(validate(BitvecPmf{2, {0.5, 0.5}}), DomainError);
  CHECK_THROWS_AS(validate(BitvecPmf{1, {1.5, -0.5}}), DomainError);
  CHECK_THROWS_AS(validate(BitvecPmf{1, {0.6, 0.6}}), DomainError);
  CHECK_THROWS_AS(point_mass(2, 4), DomainError);

  const std::vector<Rational> dy{Rational(1, 2), Rational(1, 4), Rational(1, 4), Rational(0)};
  CHECK(exact_entropy(dy) == Rational(3, 2));
  const std::vector<Rational> third{Rational(1, 3), Rational(2, 3)};
  CHECK_FALSE(exact_entropy(third).has_value());

  const BitvecPmf s = shift_pmf(BitvecPmf{2, {0.1, 0.2, 0.3, 0.4}}, 1);
  CHECK(s.p[0] == doctest::Approx(0.3));
  CHECK(s.p[1] == doctest::Approx(0.7));
  const BitvecPmf x = xor_convolve(BitvecPmf{1, {0.25, 0.75}}, BitvecPmf{1, {0.5, 0.5}});
  CHECK(x.p[0] == doctest::Approx(0.5));
  CHECK_THROWS_AS(xor_convolve(uniform_pmf(1), uniform_pmf(2)), DomainError);
}

TEST_CASE("capacity region examples") {
  const auto ch = LdaChannel::symmetric(2, 2);
  const BitvecPmf p1{2, {0, 0, 0.5, 0.5}};
  const BitvecPmf p2{2, {0, 0.5, 0, 0.5}};
  const RateRegion r = lda_region(ch, p1, p2);
  CHECK(*r.bound(Direction::r1) == doctest::Approx(1.0));
  CHECK(*r.bound(Direction::r2) == doctest::Approx(1.0));
  CHECK(*r.bound(Direction::sum) == doctest::Approx(2.0));
  CHECK(lda_sumrate(ch, p1, p2) / 4.0 == doctest::Approx(0.5));

  const auto c34 = LdaChannel::symmetric(3, 4);
  const RateRegion u = lda_region(c34, uniform_pmf(4), uniform_pmf(4));
  CHECK(*u.bound(Direction::r2) == doctest::Approx(0.0).scale(1.0));
  CHECK(*u.bound(Direction::sum) == doctest::Approx(4.0));
  CHECK(u.max_sum_rate() == doctest::Approx(3.0));
  CHECK(lda_sumrate(c34, uniform_pmf(4), uniform_pmf(4)) / 6.0 == doctest::Approx(0.5));

  CHECK(*lda_region(c34, point_mass(4, 0), uniform_pmf(4)).bound(Direction::r1) == 0.0);
  CHECK(*lda_region(c34, uniform_pmf(4), point_mass(4, 0)).bound(Direction::r2) == 0.0);
  CHECK_THROWS_AS(lda_region(c34, uniform_pmf(3), uniform_pmf(4)), DomainError);
}

TEST_CASE("uniform-input baseline") {
  CHECK(lda_uniform_normalized_sumrate(LdaChannel::symmetric(2, 2)) == doctest::Approx(0.5));
  CHECK(lda_uniform_normalized_sumrate(LdaChannel::symmetric(3, 4)) == doctest::Approx(0.5));
  for (int ns = 1; ns <= 5; ++ns) {
    CHECK(lda_uniform_normalized_sumrate(LdaChannel::symmetric(ns, 0)) == doctest::Approx(1.0));
  }
  CHECK_THROWS_AS(lda_uniform_normalized_sumrate(LdaChannel::symmetric(0, 2)), DomainError);
  CHECK_THROWS_AS(LdaChannel::symmetric(-1, 2).validate(), DomainError);
}

TEST_CASE("reference pmf pairs attain the W-curve exactly") {
  const auto& rows = table1_entries();
  REQUIRE(rows.size() == 5);
  for (const auto& e : rows) {
    INFO("alpha " << e.label);
    CHECK(e.alpha == Rational(e.ni, e.ns));
    validate(e.p1);
    validate(e.p2);
    const auto ch = LdaChannel::symmetric(e.ns, e.ni);
    const auto v = lda_sumrate_exact(ch, e.p1, e.p2);
    REQUIRE(v.has_value());
    CHECK(*v / Rational(2 * e.ns) == wcurve(e.alpha));
    CHECK(lda_sumrate(ch, to_double(e.p1), to_double(e.p2)) ==
          doctest::Approx(boost::rational_cast<double>(*v)));
  }
  const TableIEntry lit = table1_last_row_literal();
  const auto v = lda_sumrate_exact(LdaChannel::symmetric(lit.ns, lit.ni), lit.p1, lit.p2);
  REQUIRE(v.has_value());
  CHECK(*v / Rational(2 * lit.ns) == Rational(1, 2));
}

TEST_CASE("optimizer reaches the certified values") {
  struct Case {
    int ns, ni;
    double target;
  };
  for (const Case c : {Case{2, 1, 2.0}, Case{3, 4, 4.0}, Case{2, 2, 2.0}}) {
    const LdaOptimum o = lda_max_sumrate(LdaChannel::symmetric(c.ns, c.ni));
    INFO("(" << c.ns << "," << c.ni << ")");
    CHECK(o.value >= c.target - 1e-3);
    CHECK(o.value <= c.target + 1e-9);
    validate(o.p1);
    validate(o.p2);
    CHECK(lda_sumrate(LdaChannel::symmetric(c.ns, c.ni), o.p1, o.p2) == doctest::Approx(o.value));
  }
  CHECK_THROWS_AS(lda_max_sumrate(LdaChannel::symmetric(7, 1)), CapabilityError);
}

TEST_CASE("optimizer is deterministic and independent of the thread count") {
  auto cfg = quick();
  const auto ch = LdaChannel::symmetric(3, 5);
  cfg.threads = 1;
  const LdaOptimum a = lda_max_sumrate(ch, cfg);
  cfg.threads = 4;
  const LdaOptimum b = lda_max_sumrate(ch, cfg);
  CHECK(a.value == b.value);
  CHECK(a.p1.p == b.p1.p);
  CHECK(a.p2.p == b.p2.p);
}

TEST_CASE("optimizer never exceeds the W-curve and beats the uniform baseline") {
  const auto rows = lda_fig2_rows(4, quick());
  CHECK(rows.size() == 12);
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const auto& r = rows[k];
    INFO("alpha=" << r.alpha << " (" << r.ns << "," << r.ni << ")");
    CHECK(r.optimized_normalized <= r.wcurve + 1e-9);
    CHECK(r.optimized_normalized >= r.uniform_normalized - 1e-9);
    CHECK(r.wcurve == wcurve(r.alpha));
    if (k > 0) CHECK(rows[k - 1].alpha <= r.alpha);
  }
  CHECK_THROWS_AS(lda_fig2_rows(7), CapabilityError);
}

TEST_CASE("property: entropies match explicit bit-matrix enumeration") {
  test::Gen gen(41);
  for (int k = 0; k < 400; ++k) {
    LdaChannel ch{gen.integer(0, 3), gen.integer(0, 3), gen.integer(0, 3), gen.integer(0, 3)};
    if (ch.q() == 0) ch.n11 = 1;
    const int q = ch.q();
    const BitvecPmf p1 = gen.pmf(q);
    const BitvecPmf p2 = gen.pmf(q);
    const auto e = lda_entropies(ch, p1, p2);
    const auto o = test::BitMatrixChannel(ch).entropies(p1, p2);
    INFO("case " << k << " levels " << ch.n11 << ch.n12 << ch.n21 << ch.n22);
    REQUIRE(e.h_r1 == doctest::Approx(o.h_r1).epsilon(1e-12).scale(1.0));
    REQUIRE(e.h_y1 == doctest::Approx(o.h_y1).epsilon(1e-12).scale(1.0));
    REQUIRE(e.h_y2 == doctest::Approx(o.h_y2).epsilon(1e-12).scale(1.0));
    REQUIRE(e.h_y2t2 == doctest::Approx(o.h_y2t2).epsilon(1e-12).scale(1.0));
    REQUIRE(e.h_t1 == doctest::Approx(o.h_t1).epsilon(1e-12).scale(1.0));
    REQUIRE(e.h_t2 == doctest::Approx(o.h_t2).epsilon(1e-12).scale(1.0));
  }
}

TEST_CASE("property: region bounds are sound") {
  test::Gen gen(42);
  for (int k = 0; k < 2000; ++k) {
    const LdaChannel ch{gen.integer(0, 5), gen.integer(0, 5), gen.integer(0, 5), gen.integer(0, 5)};
    if (ch.q() == 0) continue;
    const RateRegion r = lda_region(ch, gen.pmf(ch.q()), gen.pmf(ch.q()));
    INFO("case " << k);
    for (const Constraint& c : r.constraints()) REQUIRE(c.b >= 0.0);
    REQUIRE(*r.bound(Direction::r1) <= ch.n11 + 1e-12);
    REQUIRE(*r.bound(Direction::r2) <= ch.n22 + 1e-12);
  }
}
