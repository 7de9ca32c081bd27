#include <doctest.h>

#include <algorithm>

#include "helpers.hpp"
#include "qtrace/torus.hpp"

using namespace qtrace;

namespace {

IntMatrix random_antisymmetric(std::mt19937& rng, std::size_t n) {
  std::uniform_int_distribution<int> d(-2, 2);
  IntMatrix A(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      A(i, j) = d(rng);
      A(j, i) = -A(i, j);
    }
  return A;
}

SpecPtr random_spec(std::mt19937& rng, std::size_t n, int u8) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back("g" + std::to_string(i));
  return make_spec(labels, random_antisymmetric(rng, n), u8);
}

// Oracle: a product of ordered monomials x_1^k1 ... x_n^kn, reordered with the commutation
// relation x_i^a x_j^b = u^(a b A_ij) x_j^b x_i^a. Returns the phase in eighths.
struct Letter {
  std::size_t gen;
  long power;
};

long sort_phase(std::vector<Letter>& word, const TorusSpec& s) {
  long phase = 0;
  for (std::size_t pass = 0; pass < word.size(); ++pass)
    for (std::size_t i = 0; i + 1 < word.size(); ++i)
      if (word[i].gen > word[i + 1].gen) {
        phase += s.u8 * word[i].power * word[i + 1].power * s.A(word[i].gen, word[i + 1].gen);
        std::swap(word[i], word[i + 1]);
      }
  return phase;
}

// Weyl normal monomial x^k = u^(-1/2 sum_{i<j} k_i k_j A_ij) x_1^k1 ... x_n^kn.
long ordered_to_weyl(const Exp& k, const TorusSpec& s) {
  long e = 0;
  for (std::size_t i = 0; i < k.size(); ++i)
    for (std::size_t j = i + 1; j < k.size(); ++j) e += k[i] * k[j] * s.A(i, j);
  return s.u8 * e / 2;
}

TorusElement oracle_product(const SpecPtr& s, const Exp& k, const Exp& n) {
  std::vector<Letter> word;
  for (std::size_t i = 0; i < k.size(); ++i)
    if (k[i]) word.push_back({i, k[i]});
  for (std::size_t i = 0; i < n.size(); ++i)
    if (n[i]) word.push_back({i, n[i]});
  long phase = -ordered_to_weyl(k, *s) - ordered_to_weyl(n, *s);
  phase += sort_phase(word, *s);
  phase += ordered_to_weyl(k + n, *s);
  return TorusElement::monomial(s, k + n, Scalar::monomial(static_cast<int>(phase)));
}

}  // namespace

TEST_SUITE("torus") {
  TEST_CASE("pairing") {
    IntMatrix A = IntMatrix::from_rows({{0, 1}, {-1, 0}}, 2);
    CHECK(pairing({1, 0}, {0, 1}, A) == 1);
    std::mt19937 rng(3);
    IntMatrix B = random_antisymmetric(rng, 5);
    for (int i = 0; i < 50; ++i) {
      Exp k = testutil::random_exp(rng, 5), n = testutil::random_exp(rng, 5);
      CHECK(pairing(k, k, B) == 0);
      CHECK(pairing(k, n, B) == -pairing(n, k, B));
    }
  }

  TEST_CASE("monomials") {
    std::mt19937 rng(4);
    SpecPtr s = random_spec(rng, 4, 8);
    CHECK(TorusElement::monomial(s, Exp(4, 0)) == TorusElement::one(s));
    for (int i = 0; i < 30; ++i) {
      Exp k = testutil::random_exp(rng, 4);
      auto m = TorusElement::monomial(s, k);
      CHECK(m.is_reflection_invariant());
      for (int p : {-3, -1, 0, 2, 5}) CHECK(m.pow(p) == TorusElement::monomial(s, p * k));
    }
  }

  TEST_CASE("product of two generators") {
    SpecPtr s = make_spec({"a", "b"}, IntMatrix::from_rows({{0, 1}, {-1, 0}}, 2), 8);
    auto prod = TorusElement::monomial(s, {1, 0}) * TorusElement::monomial(s, {0, 1});
    CHECK(prod == TorusElement::monomial(s, {1, 1}, Scalar::monomial(4)));
    CHECK((TorusElement::monomial(s, {2, -1}) * TorusElement::monomial(s, {-2, 1})) == TorusElement::one(s));
  }

  TEST_CASE("products agree with letter-by-letter reordering") {
    std::mt19937 rng(7);
    for (int u8 : {-8, 2, 8}) {
      SpecPtr s = random_spec(rng, 5, u8);
      for (int i = 0; i < 100; ++i) {
        Exp k = testutil::random_exp(rng, 5), n = testutil::random_exp(rng, 5);
        CHECK(TorusElement::monomial(s, k) * TorusElement::monomial(s, n) == oracle_product(s, k, n));
      }
    }
  }

  TEST_CASE("commutation relation") {
    std::mt19937 rng(8);
    SpecPtr s = random_spec(rng, 4, 8);
    for (int i = 0; i < 50; ++i) {
      Exp k = testutil::random_exp(rng, 4), n = testutil::random_exp(rng, 4);
      auto xk = TorusElement::monomial(s, k), xn = TorusElement::monomial(s, n);
      long e = s->u8 * pairing(k, n, s->A);
      CHECK(xk * xn == (xn * xk).scaled(Scalar::monomial(static_cast<int>(e))));
    }
  }

  TEST_CASE("weyl normalization is order independent") {
    std::mt19937 rng(9);
    SpecPtr s = random_spec(rng, 4, -8);
    std::vector<Exp> f{testutil::random_exp(rng, 4), testutil::random_exp(rng, 4), testutil::random_exp(rng, 4)};
    auto ref = weyl_normalize(s, f);
    std::sort(f.begin(), f.end());
    do CHECK(weyl_normalize(s, f) == ref);
    while (std::next_permutation(f.begin(), f.end()));
    CHECK(weyl_normalize(s, {f[0]}) == TorusElement::monomial(s, f[0]));
    CHECK(weyl_normalize(s, {f[0], (-1) * f[0]}) == TorusElement::one(s));
  }

  TEST_CASE("reflection is an anti-homomorphism") {
    std::mt19937 rng(10);
    SpecPtr s = random_spec(rng, 3, 8);
    auto m = TorusElement::monomial(s, {1, 2, 0});
    CHECK(m.scaled(Scalar::monomial(4)).reflect() == m.scaled(Scalar::monomial(-4)));
    for (int i = 0; i < 30; ++i) {
      auto a = testutil::random_element(rng, s), b = testutil::random_element(rng, s);
      CHECK((a * b).reflect() == b.reflect() * a.reflect());
    }
  }

  TEST_CASE("unit coefficient criterion") {
    SpecPtr s = make_spec({"a", "b"}, IntMatrix::from_rows({{0, 1}, {-1, 0}}, 2), 8);
    auto sum = TorusElement::monomial(s, {1, 0}) + TorusElement::monomial(s, {0, 1});
    CHECK(sum.is_reflection_invariant());
    CHECK(sum.has_unit_coefficients());
    auto shifted = TorusElement::monomial(s, {1, 0}, Scalar::monomial(8));
    CHECK_FALSE(shifted.is_reflection_invariant());
    CHECK_FALSE(shifted.has_unit_coefficients());
    // Reflection-invariant sums of distinct monomials with q-power coefficients have unit coefficients.
    std::mt19937 rng(12);
    for (int i = 0; i < 200; ++i) {
      TorusElement a(s);
      for (int t = 0; t < 3; ++t)
        a.add_term(testutil::random_exp(rng, 2), Scalar::monomial(std::uniform_int_distribution<int>(-2, 2)(rng)));
      if (a.is_reflection_invariant() && std::all_of(a.terms().begin(), a.terms().end(), [](const auto& t) {
            return t.second.unit_power().has_value();
          }))
        CHECK(a.has_unit_coefficients());
    }
  }

  TEST_CASE("multiplicatively linear maps") {
    IntMatrix A = IntMatrix::from_rows({{0, 1}, {-1, 0}}, 2);
    CHECK(mlh_check(IntMatrix::identity(2), A, A, 1));
    CHECK_FALSE(mlh_check(IntMatrix(2, 2), A, A, 1));
    std::mt19937 rng(13);
    SpecPtr dst = make_spec({"p", "q", "r"}, IntMatrix::from_rows({{0, 1, 0}, {-1, 0, 1}, {0, -1, 0}}, 3), 2);
    IntMatrix H = IntMatrix::from_rows({{1, 0, 0}, {0, 2, 0}}, 3);
    IntMatrix HBH = H * dst->A * H.transpose();
    long r = 2;
    SpecPtr src = make_spec({"a", "b"}, IntMatrix::from_rows({{0, HBH(0, 1) / r}, {HBH(1, 0) / r, 0}}, 2), r * dst->u8);
    REQUIRE(mlh_check(H, dst->A, src->A, r));
    CHECK(mlh_apply(H, dst, TorusElement::one(src), r) == TorusElement::one(dst));
    for (int i = 0; i < 30; ++i) {
      auto a = testutil::random_element(rng, src), b = testutil::random_element(rng, src);
      CHECK(mlh_apply(H, dst, a * b, r) == mlh_apply(H, dst, a, r) * mlh_apply(H, dst, b, r));
      CHECK(mlh_apply(H, dst, a.reflect(), r) == mlh_apply(H, dst, a, r).reflect());
    }
  }

  TEST_CASE("canonical projection") {
    std::mt19937 rng(14);
    SpecPtr s = random_spec(rng, 3, 2);
    auto a = testutil::random_element(rng, s, 5);
    CHECK(canonical_projection(a, [](const Exp&) { return true; }) == a);
    auto no_first = [](const Exp& k) { return k[0] == 0; };
    CHECK(canonical_projection(TorusElement::monomial(s, {1, 0, 0}), no_first).is_zero());
    auto b = testutil::random_element(rng, s, 5);
    CHECK(canonical_projection(a + b, no_first) == canonical_projection(a, no_first) + canonical_projection(b, no_first));
  }

  TEST_CASE("spec validation") {
    CHECK_THROWS(make_spec({"a", "b"}, IntMatrix::from_rows({{0, 1}, {1, 0}}, 2), 8));
    CHECK_THROWS(make_spec({"a", "a"}, IntMatrix(2, 2), 8));
    SpecPtr s = make_spec({"a"}, IntMatrix(1, 1), 8);
    SpecPtr t = make_spec({"b"}, IntMatrix(1, 1), 8);
    CHECK_THROWS(TorusElement::one(s) * TorusElement::one(t));
    CHECK_THROWS((TorusElement::monomial(s, {1}) + TorusElement::one(s)).pow(-1));
  }
}
