#include <doctest.h>

#include <cmath>
#include <numbers>

#include "helpers.hpp"
#include "qtrace/scalar.hpp"

using namespace qtrace;

namespace {
Scalar q(int eighths, long c = 1) { return Scalar::monomial(eighths, c); }
std::complex<double> zeta(int L, double n) { return std::polar(1.0, 2 * std::numbers::pi * n / L); }
}  // namespace

TEST_SUITE("scalar") {
  TEST_CASE("addition and cancellation") {
    Scalar half = q(4) + q(-4);
    CHECK(half.terms().size() == 2);
    CHECK(half.terms().at(4) == 1);
    CHECK(half.terms().at(-4) == 1);
    Scalar x = q(3, 7) + q(-9, -2);
    CHECK((x + (-x)).is_zero());
    CHECK((q(8) + q(-8)) + (q(8) - q(-8)) == q(8, 2));
  }

  TEST_CASE("multiplication") {
    CHECK((q(1) * q(-1)).is_one());
    CHECK((q(8) + q(-8)) * (q(8) - q(-8)) == q(16) - q(-16));
    CHECK((Scalar(0) * (q(5) + q(2))).is_zero());
  }

  TEST_CASE("reflection") {
    CHECK(q(4).reflect() == q(-4));
    CHECK((q(8) + q(-8)).reflect() == q(8) + q(-8));
    std::mt19937 rng(11);
    for (int i = 0; i < 50; ++i) {
      Scalar s = testutil::random_scalar(rng);
      CHECK(s.reflect().reflect() == s);
    }
  }

  TEST_CASE("evaluation at roots of unity") {
    for (int L : {5, 7, 11, 13}) {
      CHECK(std::abs(Scalar(1).eval(L) - 1.0) < 1e-15);
      CHECK(std::abs(q(1).eval(L) - zeta(L, 1)) < 1e-12);
      CHECK(std::abs((q(8) + q(-8)).eval(L) - 2 * std::cos(2 * std::numbers::pi * 8 / L)) < 1e-12);
    }
  }

  TEST_CASE("evaluation is a ring homomorphism") {
    // Oracle: direct complex sums of the defining monomials.
    std::mt19937 rng(5);
    auto direct = [](const Scalar& s, int L) {
      std::complex<double> v = 0;
      for (const auto& [n, c] : s.terms()) v += c.get_d() * zeta(L, n);
      return v;
    };
    for (int i = 0; i < 100; ++i) {
      Scalar a = testutil::random_scalar(rng), b = testutil::random_scalar(rng);
      for (int L : {5, 7, 11}) {
        CHECK(std::abs((a * b).eval(L) - direct(a, L) * direct(b, L)) < 1e-9);
        CHECK(std::abs((a + b).eval(L) - direct(a, L) - direct(b, L)) < 1e-9);
      }
    }
  }

  TEST_CASE("large exponents stay exact under reduction") {
    CHECK(std::abs(root_power(5 * 1000003L + 2, 5) - zeta(5, 2)) < 1e-12);
    CHECK(std::abs(root_power(-3, 7) - zeta(7, 4)) < 1e-12);
  }

  TEST_CASE("unit powers and text form") {
    CHECK(q(-3).unit_power() == -3);
    CHECK_FALSE(q(2, 2).unit_power().has_value());
    CHECK_FALSE((q(1) + q(2)).unit_power().has_value());
    CHECK(Scalar(0).str() == "0");
    CHECK((q(4) + q(-4)).str() == "1*q^(-4/8) + 1*q^(4/8)");
    CHECK(q(16, -3).shifted(-8).str() == "-3*q^(8/8)");
  }

  TEST_CASE("arbitrary precision coefficients") {
    Scalar big = Scalar::monomial(0, mpz_class("123456789012345678901234567890"));
    Scalar sq = big * big;
    CHECK(sq.terms().at(0) == mpz_class("15241578753238836750495351562536198787501905199875019052100"));
  }
}
