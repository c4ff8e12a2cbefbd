#include "csec/exactla.hpp"
#include "generators.hpp"

#include "doctest.h"

#include <set>

using namespace csec;
using csec::testing::random_matrix;
using csec::testing::random_subspace;

namespace {

/// Rank as the largest k with a nonzero k x k minor, by cofactor expansion.
template <class S>
S determinant(const Matrix<S>& m) {
  const Index n = m.rows();
  if (n == 0) return S(1);
  S total(0);
  for (Index j = 0; j < n; ++j) {
    if (is_zero(m(0, j))) continue;
    Matrix<S> minor(n - 1, n - 1);
    for (Index r = 1; r < n; ++r)
      for (Index c = 0, k = 0; c < n; ++c)
        if (c != j) minor(r - 1, k++) = m(r, c);
    const S term = m(0, j) * determinant(minor);
    total += (j % 2 == 0) ? term : -term;
  }
  return total;
}

template <class S>
Index rank_by_minors(const Matrix<S>& m) {
  const Index limit = std::min(m.rows(), m.cols());
  for (Index k = limit; k > 0; --k) {
    std::vector<bool> rsel(static_cast<std::size_t>(m.rows()), false), csel(static_cast<std::size_t>(m.cols()), false);
    std::fill(rsel.end() - k, rsel.end(), true);
    do {
      std::fill(csel.begin(), csel.end(), false);
      std::fill(csel.end() - k, csel.end(), true);
      do {
        Matrix<S> sub(k, k);
        for (Index r = 0, a = 0; r < m.rows(); ++r) {
          if (!rsel[r]) continue;
          for (Index c = 0, b = 0; c < m.cols(); ++c)
            if (csel[c]) sub(a, b++) = m(r, c);
          ++a;
        }
        if (!is_zero(determinant(sub))) return k;
      } while (std::next_permutation(csel.begin(), csel.end()));
    } while (std::next_permutation(rsel.begin(), rsel.end()));
  }
  return 0;
}

template <FiniteField S>
std::vector<Vector<S>> members(const Subspace<S>& U) {
  std::vector<Vector<S>> out;
  for_each_vector<S>(U.ambient_dim(), [&](const Vector<S>& v) {
    if (U.contains(v)) out.push_back(v);
  });
  return out;
}

}  // namespace

TEST_CASE("rational arithmetic and canonical text form") {
  const Rational a = Rational::parse("-3/4");
  CHECK(a.str() == "-3/4");
  CHECK((a + Rational(1)).str() == "1/4");
  CHECK((a * Rational::parse("4/3")).str() == "-1");
  CHECK(Rational::parse("0").str() == "0");
  CHECK_THROWS_AS(Rational::parse("6/8"), FormatError);
  CHECK_THROWS_AS(Rational::parse("-0"), FormatError);
  CHECK_THROWS_AS(Rational::parse("3/1"), FormatError);
  CHECK_THROWS_AS(Rational::parse("1/0"), FormatError);
  CHECK_THROWS_AS(Rational::parse(" 1"), FormatError);
  CHECK_THROWS(Rational(1) / Rational(0));
}

TEST_CASE("prime field inverses and parsing") {
  for (int a = 1; a < 7; ++a) CHECK(GF7(a) * GF7(a).inverse() == GF7(1));
  CHECK(GF5(3) + GF5(4) == GF5(2));
  CHECK(-GF3(1) == GF3(2));
  CHECK(GF7::parse("6") == GF7(6));
  CHECK_THROWS_AS(GF7::parse("7"), FormatError);
  CHECK_THROWS_AS(GF2::parse("-1"), FormatError);
}

TEST_CASE("rank agrees with the minor oracle over Q and GF(3)") {
  SplitMix64 rng(11);
  for (int t = 0; t < 60; ++t) {
    const Index r = 1 + static_cast<Index>(rng.below(4)), c = 1 + static_cast<Index>(rng.below(4));
    const auto q = random_matrix<Rational>(rng, r, c);
    CHECK(rank(q) == rank_by_minors(q));
    const auto f = random_matrix<GF3>(rng, r, c);
    CHECK(rank(f) == rank_by_minors(f));
  }
}

TEST_CASE("rref is canonical and kernels are annihilated") {
  SplitMix64 rng(12);
  for (int t = 0; t < 80; ++t) {
    const Index r = 1 + static_cast<Index>(rng.below(5)), c = 1 + static_cast<Index>(rng.below(5));
    const auto m = random_matrix<Rational>(rng, r, c);
    const auto k = kernel(m);
    CHECK(k.dim() == c - rank(m));
    CHECK(is_zero_matrix(m * k.basis().transpose()));
    // a random invertible row operation leaves the row space unchanged
    Matrix<Rational> mixed = m;
    if (r > 1) mixed.row(0) += Rational(2) * mixed.row(1);
    CHECK(Subspace<Rational>::span(mixed) == Subspace<Rational>::span(m));
  }
}

TEST_CASE("sum and intersection match the membership oracle over GF(2)") {
  SplitMix64 rng(13);
  for (int t = 0; t < 60; ++t) {
    const auto u = random_subspace<GF2>(rng, 4);
    const auto v = random_subspace<GF2>(rng, 4);
    const auto meet = intersect(u, v);
    const auto join = sum(u, v);
    std::size_t both = 0;
    for_each_vector<GF2>(4, [&](const Vector<GF2>& x) {
      const bool in_u = u.contains(x), in_v = v.contains(x);
      CHECK(meet.contains(x) == (in_u && in_v));
      both += in_u && in_v;
    });
    CHECK(both == (std::size_t{1} << meet.dim()));
    CHECK(join.dim() + meet.dim() == u.dim() + v.dim());
    CHECK(join.contains(u));
    CHECK(join.contains(v));
  }
}

TEST_CASE("annihilator, image and preimage") {
  SplitMix64 rng(14);
  for (int t = 0; t < 40; ++t) {
    const auto u = random_subspace<GF3>(rng, 4);
    CHECK(is_zero_matrix(Matrix<GF3>(u.annihilator() * u.basis().transpose())));
    CHECK(u.annihilator().rows() == u.codim());
    const auto a = random_matrix<GF3>(rng, 4, 4);
    const auto pre = preimage(a, u);
    for (const auto& x : members(pre)) CHECK(u.contains(Vector<GF3>(a * x)));
    for (const auto& x : members(image(a, pre))) CHECK(u.contains(x));
  }
}

TEST_CASE("Gaussian binomials") {
  CHECK(gaussian_binomial(2, 1, 2) == 3);
  CHECK(count_all_subspaces(5, 2) == 374);
  CHECK(gaussian_binomial(4, 2, 3) == 130);
  CHECK(gaussian_binomial(3, 4, 2) == 0);
}

TEST_CASE("subspace enumeration is complete and duplicate-free") {
  auto check = [](auto tag, Index n) {
    using S = decltype(tag);
    constexpr int q = field_traits<S>::order;
    for (Index d = 0; d <= n; ++d) {
      const auto subs = enumerate_subspaces<S>(n, d);
      CHECK(subs.size() == gaussian_binomial(static_cast<int>(n), static_cast<int>(d), q));
      CHECK(std::is_sorted(subs.begin(), subs.end()));
      CHECK(std::adjacent_find(subs.begin(), subs.end()) == subs.end());
      for (const auto& s : subs) CHECK(s.dim() == d);
    }
  };
  check(GF2{}, 5);
  check(GF3{}, 4);
  check(GF5{}, 3);
  CHECK(enumerate_all_subspaces<GF2>(5).size() == 374);
}

TEST_CASE("enumeration budget") {
  CHECK_THROWS_AS(enumerate_subspaces<GF7>(6, 3, 1000), BudgetExceeded);
  CHECK_THROWS_AS(enumerate_all_subspaces<GF2>(5, 100), BudgetExceeded);
}

TEST_CASE("projective points") {
  std::size_t count = 0;
  for_each_projective_point<GF5>(3, [&](const Vector<GF5>&) { ++count; });
  CHECK(count == gaussian_binomial(3, 1, 5));
}
