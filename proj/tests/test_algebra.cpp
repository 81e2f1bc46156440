#include <cmath>
#include <complex>
#include <limits>
#include <random>

#include <gmpxx.h>

#include "doctest.h"
#include "semigraph/bc.hpp"
#include "semigraph/errors.hpp"
#include "semigraph/hom.hpp"
#include "semigraph/laws.hpp"
#include "semigraph/natpoly.hpp"
#include "semigraph/semiring.hpp"

using namespace semigraph;

namespace {

double d(const Value& v) { return std::any_cast<double>(v); }

BCValue unit_vector(const Semiring& base, int order, int i) {
  BCValue v = bc_zero(base, order);
  v.comps[i] = base.one();
  return v;
}

}  // namespace

TEST_SUITE("algebra") {

TEST_CASE("real arithmetic and tolerance-based equality") {
  const Semiring s = semiring_instance("real");
  CHECK(d(s.add(2.0, 3.0)) == 5.0);
  CHECK(d(s.mul(2.0, 3.0)) == 6.0);
  CHECK(d(s.zero()) == 0.0);
  CHECK(d(s.one()) == 1.0);
  CHECK(s.cancellative());
  CHECK(s.eq(1.0, 1.0 + 1e-12));
  CHECK(!s.eq(1.0, 1.1));
  CHECK(s.is_zero(0.0));
  CHECK(!s.is_zero(1e-30));  // is_zero is exact, never tolerance-based
  CHECK(d(s.parse("2.5")) == 2.5);
  CHECK_THROWS_AS(s.parse("2.5garbage"), ParseError);
  CHECK(!s.accepts(Value(std::string("no"))));
}

TEST_CASE("rational arithmetic is exact") {
  const Semiring s = semiring_instance("rational");
  const Value third = s.parse("1/3");
  const Value one = s.add(s.add(third, third), third);
  CHECK(s.eq(one, s.one()));
  CHECK(std::any_cast<mpq_class>(s.mul(s.parse("2/3"), s.parse("3/4"))) ==
        mpq_class(1, 2));
  CHECK(std::any_cast<mpq_class>(s.parse("0.25")) == mpq_class(1, 4));
}

TEST_CASE("complex2 multiplies like rotations") {
  const Semiring s = semiring_instance("complex2");
  using C = std::complex<double>;
  const Value i = s.parse("0,1");
  const Value sq = s.mul(i, i);
  CHECK(s.eq(sq, Value(C(-1.0, 0.0))));
  CHECK(s.eq(s.add(s.parse("1,2"), s.parse("3,-1")), Value(C(4.0, 1.0))));
  CHECK(s.eq(s.mul(s.parse("1,2"), s.parse("3,4")), Value(C(-5.0, 10.0))));
  CHECK_THROWS_AS(s.parse("1"), ParseError);  // needs "a,b"
}

TEST_CASE("maxplus is tropical and not cancellative") {
  const Semiring s = semiring_instance("maxplus");
  const double ninf = -std::numeric_limits<double>::infinity();
  CHECK(d(s.add(ninf, 3.0)) == 3.0);
  CHECK(d(s.add(2.0, 3.0)) == 3.0);
  CHECK(d(s.mul(2.0, 3.0)) == 5.0);
  CHECK(d(s.zero()) == ninf);
  CHECK(d(s.one()) == 0.0);
  CHECK(!s.cancellative());
}

TEST_CASE("logreal entries are linear-domain, arithmetic is log-domain") {
  const Semiring s = semiring_instance("logreal");
  CHECK(s.eq(s.add(s.parse("2"), s.parse("3")), s.parse("5")));
  CHECK(s.eq(s.mul(s.parse("2"), s.parse("3")), s.parse("6")));
  CHECK(d(s.parse("1")) == 0.0);  // stored as a log
  CHECK(d(s.zero()) == -std::numeric_limits<double>::infinity());
  CHECK_THROWS_AS(s.parse("-1"), ParseError);
  // Survives magnitudes that underflow in the linear domain.
  Value tiny = s.one();
  for (int i = 0; i < 500; ++i) tiny = s.mul(tiny, s.parse("0.01"));
  CHECK(d(s.add(tiny, tiny)) == doctest::Approx(std::log(2.0) + 500 * std::log(0.01)));
}

TEST_CASE("repeat and pow") {
  const Semiring s = semiring_instance("real");
  CHECK(d(s.repeat(std::uint64_t{0}, 7.0)) == 0.0);
  CHECK(d(s.repeat(std::uint64_t{5}, 2.0)) == 10.0);
  CHECK(d(s.repeat(mpz_class(1) << 70, 1.0)) == std::ldexp(1.0, 70));
  CHECK(d(s.pow(0.0, 0)) == 1.0);  // empty product, even at zero
  CHECK(d(s.pow(2.0, 10)) == 1024.0);
  const Semiring n = semiring_instance("natpoly(1)");
  const Value p = n.pow(natpoly_var(1, 0), 13);
  CHECK(std::any_cast<NatPoly>(p).terms.count({13}) == 1);
}

TEST_CASE("natpoly arithmetic pins") {
  const NatPoly x1 = natpoly_var(2, 0), x2 = natpoly_var(2, 1);
  const NatPoly sum = natpoly_add(x1, x2);
  CHECK(natpoly_str(natpoly_mul(sum, x1)) == "x0^2 + x0*x1");
  CHECK(natpoly_mul(sum, natpoly_one(2)) == sum);
  CHECK(natpoly_add(sum, natpoly_zero(2)) == sum);
  const NatPoly square = natpoly_mul(sum, sum);
  CHECK(natpoly_str(square) == "x0^2 + 2*x0*x1 + x1^2");
  CHECK(square.terms.at({1, 1}) == 2);
  CHECK_THROWS_WITH_AS(natpoly_add(natpoly_one(2), natpoly_one(3)),
                       doctest::Contains("ArityMismatch"), Error);
}

TEST_CASE("natpoly canonical form stores no zero coefficients") {
  const NatPoly z = natpoly_mul(natpoly_zero(2), natpoly_var(2, 0));
  CHECK(z.terms.empty());
  CHECK(natpoly_str(z) == "0");
  CHECK(natpoly_str(natpoly_const(2, 3)) == "3");
}

TEST_CASE("natpoly_eval substitution pins") {
  // x0*x1 + x0*x2 + x2 at (2, 3, 1) -> 9.
  const Semiring real = semiring_instance("real");
  NatPoly p = natpoly_add(
      natpoly_add(natpoly_mul(natpoly_var(3, 0), natpoly_var(3, 1)),
                  natpoly_mul(natpoly_var(3, 0), natpoly_var(3, 2))),
      natpoly_var(3, 2));
  CHECK(natpoly_str(p) == "x0*x1 + x0*x2 + x2");
  CHECK(d(natpoly_eval(p, real, {2.0, 3.0, 1.0})) == 9.0);
  // All-zero point leaves the constant term.
  const NatPoly with_const = natpoly_add(p, natpoly_const(3, 4));
  CHECK(d(natpoly_eval(with_const, real, {0.0, 0.0, 0.0})) == 4.0);
  // x0^2 at 5 -> 25.
  const NatPoly sq = natpoly_mul(natpoly_var(1, 0), natpoly_var(1, 0));
  CHECK(d(natpoly_eval(sq, real, {5.0})) == 25.0);
  CHECK_THROWS_WITH_AS(natpoly_eval(p, real, {1.0}),
                       doctest::Contains("ArityMismatch"), Error);
}

TEST_CASE("natpoly coefficients act by repetition in any semiring") {
  // 3*x0 evaluated in maxplus: 3-fold max of x0 with itself = x0.
  const Semiring mp = semiring_instance("maxplus");
  NatPoly p = natpoly_mul(natpoly_const(1, 3), natpoly_var(1, 0));
  CHECK(d(natpoly_eval(p, mp, {2.0})) == 2.0);
}

TEST_CASE("natpoly exponent growth is checked") {
  const Semiring n = semiring_instance("natpoly(1)");
  const Value big = n.pow(natpoly_var(1, 0), 1ull << 31);
  CHECK_THROWS_WITH_AS(n.mul(big, big), doctest::Contains("ExponentOverflow"),
                       Error);
}

TEST_CASE("natpoly_derivative is exact") {
  // d/dx0 (x0^2 * x1 + x1) = 2*x0*x1.
  NatPoly p = natpoly_add(
      natpoly_mul(natpoly_mul(natpoly_var(2, 0), natpoly_var(2, 0)), natpoly_var(2, 1)),
      natpoly_var(2, 1));
  CHECK(natpoly_str(natpoly_derivative(p, 0)) == "2*x0*x1");
  CHECK(natpoly_str(natpoly_derivative(p, 1)) == "x0^2 + 1");
}

TEST_CASE("binomial coefficient table") {
  CHECK(binomial(0, 0) == 1);
  CHECK(binomial(5, 2) == 10);
  CHECK(binomial(6, 3) == 20);
  CHECK(binomial(7, 9) == 0);  // k > n
  CHECK(binomial(64, 32) == mpz_class("1832624140942590534"));
  CHECK_THROWS_WITH_AS(binomial(65, 1), doctest::Contains("OrderMismatch"), Error);
}

TEST_CASE("binomial convolution product pins") {
  const Semiring base = semiring_instance("real");
  // Order 1 over real: (2,3) * (5,7) = (10, 2*7 + 3*5) = (10, 29).
  const BCValue a{{Value(2.0), Value(3.0)}};
  const BCValue b{{Value(5.0), Value(7.0)}};
  const BCValue p = bc_mul(base, a, b);
  CHECK(d(p.comps[0]) == 10.0);
  CHECK(d(p.comps[1]) == 29.0);
  // Multiplicative identity (1, 0, ..., 0).
  const BCValue one = bc_one(base, 1);
  const BCValue same = bc_mul(base, a, one);
  CHECK(d(same.comps[0]) == 2.0);
  CHECK(d(same.comps[1]) == 3.0);
  CHECK_THROWS_WITH_AS(bc_add(base, a, bc_one(base, 2)),
                       doctest::Contains("OrderMismatch"), Error);
}

TEST_CASE("unit vectors multiply with binomial structure constants") {
  const Semiring base = semiring_instance("real");
  for (int n = 1; n <= 6; ++n) {
    for (int i = 0; i <= n; ++i) {
      for (int j = 0; j <= n; ++j) {
        const BCValue p =
            bc_mul(base, unit_vector(base, n, i), unit_vector(base, n, j));
        for (int k = 0; k <= n; ++k) {
          const double expected =
              (i + j == k) ? binomial(i + j, i).get_d() : 0.0;
          CHECK(d(p.comps[k]) == expected);
        }
      }
    }
  }
}

TEST_CASE("order-1 convolution is dual-number arithmetic") {
  // (a0, a1) corresponds to a0 + a1*eps; both operations must commute with
  // that reading.
  const Semiring s = semiring_instance("bc1");
  std::mt19937_64 rng(180);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int t = 0; t < 100; ++t) {
    const double a0 = u(rng), a1 = u(rng), b0 = u(rng), b1 = u(rng);
    const Value a = BCValue{{Value(a0), Value(a1)}};
    const Value b = BCValue{{Value(b0), Value(b1)}};
    const auto sum = std::any_cast<BCValue>(s.add(a, b));
    const auto prod = std::any_cast<BCValue>(s.mul(a, b));
    CHECK(d(sum.comps[0]) == a0 + b0);
    CHECK(d(sum.comps[1]) == a1 + b1);
    CHECK(d(prod.comps[0]) == a0 * b0);
    CHECK(d(prod.comps[1]) == doctest::Approx(a0 * b1 + a1 * b0));
  }
}

TEST_CASE("bc entry syntax round-trips") {
  const Semiring s = semiring_instance("bc(real,1)");
  const Value v = s.parse("(2;3)");
  CHECK(s.str(v) == "(2;3)");
  CHECK_THROWS_AS(s.parse("(2;3;4)"), ParseError);
  CHECK_THROWS_AS(s.parse("2;3"), ParseError);
  const Semiring nested = semiring_instance("bc(bc(real,1),1)");
  const Value w = nested.parse("((1;2);(3;4))");
  CHECK(nested.str(w) == "((1;2);(3;4))");
}

TEST_CASE("instance names canonicalize") {
  CHECK(semiring_instance("bc2").name() == "bc(real,2)");
  CHECK(semiring_instance("bc(real,2)").name() == "bc(real,2)");
  CHECK(semiring_instance("tensor(real,bc1)").name() == "tensor(real,bc(real,1))");
  CHECK(semiring_instance("bc(complex2,1)").name() == "bc(complex2,1)");
  CHECK_THROWS_WITH_AS(semiring_instance("booleans"),
                       doctest::Contains("UnknownInstance"), Error);
  CHECK_THROWS_WITH_AS(semiring_instance("tensor(maxplus,bc1)"),
                       doctest::Contains("NotCancellative"), Error);
}

TEST_CASE("instrumented semirings bill operations") {
  const CountersPtr counters = make_counters();
  const Semiring s = semiring_instance("real").instrumented(counters);
  (void)s.add(1.0, 2.0);
  (void)s.add(1.0, 2.0);
  (void)s.mul(1.0, 2.0);
  CHECK(counters->adds.load() == 2);
  CHECK(counters->muls.load() == 1);
  CHECK(counters->total() == 3);
  counters->reset();
  CHECK(counters->total() == 0);
}

TEST_CASE("monoid homomorphism pins") {
  const MonoidHom id = identity_hom();
  CHECK(d(id.apply(7.0)) == 7.0);
  CHECK(d(id.apply(1.0)) == 1.0);

  const MonoidHom ex = exp_hom();
  CHECK(d(ex.apply(0.0)) == 1.0);

  const MonoidHom cs = cos_sin_hom();
  const auto at0 = std::any_cast<std::complex<double>>(cs.apply(0.0));
  CHECK(at0.real() == 1.0);
  CHECK(at0.imag() == 0.0);

  const MonoidHom p1 = powers_hom(1);
  const auto one = std::any_cast<BCValue>(p1.apply(0.0));
  CHECK(d(one.comps[0]) == 1.0);
  CHECK(d(one.comps[1]) == 0.0);
  const auto p2_3 = std::any_cast<BCValue>(powers_hom(2).apply(3.0));
  CHECK(d(p2_3.comps[0]) == 1.0);
  CHECK(d(p2_3.comps[1]) == 3.0);
  CHECK(d(p2_3.comps[2]) == 9.0);
}

TEST_CASE("angle addition and exponent laws hold on random pairs") {
  std::mt19937_64 rng(181);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  const MonoidHom ex = exp_hom(), cs = cos_sin_hom(), p1 = powers_hom(1);
  for (int t = 0; t < 200; ++t) {
    const double a = u(rng), b = u(rng);
    CHECK(d(ex.apply(a + b)) == doctest::Approx(d(ex.target.mul(ex.apply(a), ex.apply(b)))));
    const auto lhs = std::any_cast<std::complex<double>>(cs.apply(a + b));
    const auto rhs = std::any_cast<std::complex<double>>(
        cs.target.mul(cs.apply(a), cs.apply(b)));
    CHECK(std::abs(lhs - rhs) < 1e-12);
    const auto pl = std::any_cast<BCValue>(p1.apply(a + b));
    const auto pr = std::any_cast<BCValue>(p1.target.mul(p1.apply(a), p1.apply(b)));
    CHECK(d(pl.comps[0]) == doctest::Approx(d(pr.comps[0])));
    CHECK(d(pl.comps[1]) == doctest::Approx(d(pr.comps[1])));
  }
}

TEST_CASE("hom law suite passes the real homs and catches a non-hom") {
  std::mt19937_64 rng(182);
  for (const MonoidHom& hom :
       {exp_hom(), cos_sin_hom(), powers_hom(1), powers_hom(3)}) {
    const auto reports = hom_law_suite(hom, 300, rng);
    for (const auto& r : reports) {
      INFO(hom.name, ": ", r.law, " — ", r.detail);
      CHECK(r.passed);
    }
  }
  // identity_hom maps a to a, which does not turn addition into
  // multiplication; the suite must notice.
  CHECK(!all_passed(hom_law_suite(identity_hom(), 300, rng)));
}

TEST_CASE("semiring law suites pass for every scalar instance") {
  std::mt19937_64 rng(183);
  for (const char* name :
       {"real", "rational", "logreal", "maxplus", "complex2", "natpoly(3)",
        "bc(real,2)", "bc(complex2,1)", "bc(rational,4)"}) {
    const Semiring s = semiring_instance(name);
    const auto reports = semiring_law_suite(s, default_value_gen(s), 300, rng);
    for (const auto& r : reports) {
      INFO(name, ": ", r.law, " — ", r.detail);
      CHECK(r.passed);
    }
  }
}

}  // TEST_SUITE
