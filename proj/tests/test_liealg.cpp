#include "csec/catalog.hpp"
#include "generators.hpp"

#include "doctest.h"

using namespace csec;
using csec::testing::random_vector;

namespace {

template <class S>
Vector<S> v(std::initializer_list<int> xs) {
  return detail::vec<S>(xs);
}

template <class S>
Subspace<S> span_of(Index n, std::initializer_list<Index> coords) {
  return detail::coordinate_span<S>(n, coords);
}

template <FiniteField S>
std::vector<Vector<S>> members(const Subspace<S>& U) {
  std::vector<Vector<S>> out;
  for_each_vector<S>(U.ambient_dim(), [&](const Vector<S>& x) {
    if (U.contains(x)) out.push_back(x);
  });
  return out;
}

/// Small corpus of algebras over GF(p) from the catalog and random matrix closures.
template <FiniteField S>
std::vector<LieAlgebra<S>> sample_algebras(std::uint64_t seed, Index max_dim, int attempts) {
  std::vector<LieAlgebra<S>> out;
  for (auto& e : finite_field_catalog<S>(max_dim)) out.push_back(e.algebra);
  SplitMix64 rng(seed);
  for (int t = 0; t < attempts; ++t) {
    std::vector<Matrix<S>> gens;
    for (int g = 0; g < 2; ++g) gens.push_back(csec::testing::random_matrix<S>(rng, 3, 3));
    if (auto L = from_matrices(gens, {}, max_dim); L && L->dim() > 0) out.push_back(*L);
  }
  return out;
}

/// so3 acting on Q^3: the translations form a 3-dim abelian minimal ideal
/// that no implemented criterion certifies over Q.
LieAlgebra<Rational> euclidean3() {
  using R = Rational;
  return LieAlgebra<R>({"x", "y", "z", "a", "b", "c"},
                       {{0, 1, v<R>({0, 0, 1, 0, 0, 0})},
                        {0, 2, v<R>({0, -1, 0, 0, 0, 0})},
                        {1, 2, v<R>({1, 0, 0, 0, 0, 0})},
                        {0, 4, v<R>({0, 0, 0, 0, 0, 1})},
                        {0, 5, v<R>({0, 0, 0, 0, -1, 0})},
                        {1, 3, v<R>({0, 0, 0, 0, 0, -1})},
                        {1, 5, v<R>({0, 0, 0, 1, 0, 0})},
                        {2, 3, v<R>({0, 0, 0, 0, 1, 0})},
                        {2, 4, v<R>({0, 0, 0, -1, 0, 0})}});
}

}  // namespace

TEST_CASE("validate") {
  CHECK(validate(abelian<Rational>(4).algebra).empty());
  CHECK(validate(sl2<Rational>().algebra).empty());
  // [x,y] = z, [x,z] = x fails Jacobi on (x, y, z)
  const LieAlgebra<Rational> broken =
      LieAlgebra<Rational>::with_default_labels(3, {{0, 1, v<Rational>({0, 0, 1})}, {0, 2, v<Rational>({1, 0, 0})}});
  CHECK_FALSE(validate(broken).empty());
  CHECK_THROWS_AS(LieAlgebra<Rational>::with_default_labels(2, {{1, 0, v<Rational>({1, 0})}}), DomainError);
  CHECK_THROWS_AS(LieAlgebra<Rational>::with_default_labels(2, {{0, 1, v<Rational>({1, 0, 0})}}), DomainError);
}

TEST_CASE("brackets and ad") {
  const auto r2q = r2<Rational>().algebra;
  const auto x = v<Rational>({1, 0}), y = v<Rational>({0, 1});
  CHECK(is_zero_matrix(bracket(r2q, x, x)));
  Matrix<Rational> expected = Matrix<Rational>::Zero(2, 2);
  expected(0, 0) = Rational(-1);
  CHECK(ad(r2q, y) == expected);
  const auto s = sl2<Rational>().algebra;
  const auto e = v<Rational>({1, 0, 0}), h = v<Rational>({0, 1, 0}), f = v<Rational>({0, 0, 1});
  CHECK(bracket(s, h, e) == Rational(2) * e);
  CHECK(bracket(s, h, f) == Rational(-2) * f);
  CHECK(bracket(s, e, f) == h);
  CHECK_THROWS_AS(bracket(s, x, e), DomainError);
}

TEST_CASE("closures") {
  const auto r2q = r2<Rational>().algebra;
  CHECK(ideal_closure(r2q, span_of<Rational>(2, {0})) == span_of<Rational>(2, {0}));
  const auto s = sl2<Rational>().algebra;
  CHECK(ideal_closure(s, span_of<Rational>(3, {0})).is_full());
  SplitMix64 rng(21);
  for (int t = 0; t < 10; ++t) {
    const auto line = Subspace<Rational>::span(Matrix<Rational>(random_vector<Rational>(rng, 3).transpose()));
    CHECK(subalgebra_closure(s, line) == line);
  }
}

TEST_CASE("ideals, centre, centralizer, normalizer") {
  const auto r2q = r2<Rational>().algebra;
  CHECK_FALSE(is_ideal(r2q, span_of<Rational>(2, {1})));
  CHECK(is_ideal(r2q, span_of<Rational>(2, {0})));
  const auto h3 = heisenberg<Rational>().algebra;
  CHECK(centre(h3) == span_of<Rational>(3, {2}));
  CHECK(normalizer(h3, span_of<Rational>(3, {0})).contains(span_of<Rational>(3, {0, 2})));
  CHECK(centralizer(h3, Subspace<Rational>::full(3)) == centre(h3));
}

TEST_CASE("series") {
  const auto ab = abelian<Rational>(3).algebra;
  CHECK(series(ab, SeriesKind::derived).dims() == std::vector<Index>{3, 0});
  CHECK(is_solvable(ab));
  CHECK(is_nilpotent(ab));
  const auto r2q = r2<Rational>().algebra;
  const auto lcs = series(r2q, SeriesKind::lower_central);
  CHECK(is_solvable(r2q));
  CHECK_FALSE(is_nilpotent(r2q));
  CHECK(lcs.stabilized);
  CHECK(lcs.last() == span_of<Rational>(2, {0}));
  const auto s = sl2<Rational>().algebra;
  const auto der = series(s, SeriesKind::derived);
  CHECK(der.stabilized);
  CHECK(der.last().is_full());
  CHECK_FALSE(is_solvable(s));
}

TEST_CASE("Killing form and radical") {
  const auto s = sl2<Rational>().algebra;
  const auto k = killing_form(s);
  CHECK(k(1, 1) == Rational(8));
  CHECK(k(0, 2) == Rational(4));
  CHECK(radical(s).is_zero());
  CHECK(radical(r2<Rational>().algebra).is_full());
  const auto sum = direct_sum(sl2<Rational>(), r2<Rational>()).algebra;
  CHECK(radical(sum) == span_of<Rational>(5, {3, 4}));
  CHECK(radical(direct_sum(sl2<GF3>(), r2<GF3>()).algebra) == span_of<GF3>(5, {3, 4}));
  CHECK(radical(so3<GF2>().algebra).is_zero());
}

TEST_CASE("quotient and restrict") {
  const auto h3 = heisenberg<Rational>().algebra;
  const auto q = quotient(h3, span_of<Rational>(3, {2}));
  CHECK(q.algebra.dim() == 2);
  CHECK(is_abelian(q.algebra));
  const auto same = quotient(h3, Subspace<Rational>::zero(3));
  CHECK(same.algebra.labels() == h3.labels());
  CHECK(same.algebra.same_structure(h3));
  CHECK_THROWS_AS(quotient(h3, span_of<Rational>(3, {0})), DomainError);
  const auto borel = restrict(sl2<Rational>().algebra, span_of<Rational>(3, {0, 1}));
  CHECK(borel.dim() == 2);
  CHECK_FALSE(is_abelian(borel));  // the only nonabelian 2-dim algebra is r2
  CHECK(fingerprint(borel) == fingerprint(r2<Rational>().algebra));
  CHECK_THROWS_AS(restrict(sl2<Rational>().algebra, span_of<Rational>(3, {0, 2})), DomainError);
}

TEST_CASE("minimal ideals") {
  const auto h3 = heisenberg<GF2>().algebra;
  const auto m = minimal_ideals(h3);
  REQUIRE(m.ideals.size() == 1);
  CHECK(m.ideals[0].ideal == span_of<GF2>(3, {2}));
  CHECK(m.exact());
  const auto s = minimal_ideals(sl2<Rational>().algebra);
  REQUIRE(s.ideals.size() == 1);
  CHECK(s.ideals[0].ideal.is_full());
  CHECK(s.exact());
  const auto ab = minimal_ideals(abelian<GF2>(2).algebra);
  CHECK(ab.ideals.size() == 3);
  CHECK(ab.all_verified());
  // over Q an abelian algebra has infinitely many lines: never certified complete
  CHECK_FALSE(minimal_ideals(abelian<Rational>(2).algebra).complete);
  const auto e3 = euclidean3();
  CHECK(validate(e3).empty());
  const auto t = minimal_ideals(e3);
  REQUIRE(t.ideals.size() == 1);
  CHECK(t.ideals[0].ideal == span_of<Rational>(6, {3, 4, 5}));
  CHECK_FALSE(t.ideals[0].verified);
}

TEST_CASE("chief series") {
  const auto ab = chief_series(abelian<GF2>(2).algebra);
  REQUIRE(ab.size() == 2);
  CHECK(ab[0].abelian);
  CHECK(ab[1].abelian);
  const auto h = chief_series(heisenberg<GF2>().algebra);
  REQUIRE(h.size() == 3);
  CHECK(h[0].upper == span_of<GF2>(3, {2}));
  const auto s = chief_series(sl2<GF3>().algebra);
  REQUIRE(s.size() == 1);
  CHECK_FALSE(s[0].abelian);
  CHECK(s[0].quotient.dim() == 3);
  CHECK(chief_series(abelian<Rational>(2).algebra).size() == 2);  // lines are certified minimal
  CHECK_THROWS_AS(chief_series(euclidean3()), CapabilityError);
  CHECK(chief_series(sl2<Rational>().algebra).size() == 1);
}

TEST_CASE("Fitting decomposition") {
  const auto r2q = r2<Rational>().algebra;
  const auto fd = fitting_decomposition(r2q, v<Rational>({0, 1}));
  CHECK(fd.null_component == span_of<Rational>(2, {1}));
  CHECK(fd.one_component == span_of<Rational>(2, {0}));
  const auto h = fitting_decomposition(sl2<Rational>().algebra, v<Rational>({0, 1, 0}));
  CHECK(h.null_component == span_of<Rational>(3, {1}));
  CHECK(h.one_component == span_of<Rational>(3, {0, 2}));
  const auto n = fitting_decomposition(heisenberg<Rational>().algebra, v<Rational>({1, 0, 0}));
  CHECK(n.null_component.is_full());
  CHECK(n.one_component.is_zero());
}

TEST_CASE("nil subalgebras") {
  CHECK(is_nil_subalgebra(heisenberg<Rational>().algebra, span_of<Rational>(3, {0})));
  CHECK_FALSE(is_nil_subalgebra(r2<Rational>().algebra, span_of<Rational>(2, {1})));
  CHECK_FALSE(is_nil_subalgebra(sl2<Rational>().algebra, span_of<Rational>(3, {0, 1})));
  CHECK_THROWS_AS(is_nil_subalgebra(sl2<Rational>().algebra, span_of<Rational>(3, {0, 2})), DomainError);
}

TEST_CASE("isomorphism") {
  const auto a = r2<GF2>().algebra;
  CHECK(is_isomorphic(a, a).decision == Decision::yes);
  CHECK(is_isomorphic(abelian<GF2>(2).algebra, a).decision == Decision::no);
  const LieAlgebra<GF2> swapped({"y", "x"}, {{0, 1, v<GF2>({0, 1})}});
  const auto r = is_isomorphic(a, swapped);
  CHECK(r.decision == Decision::yes);
  CHECK(r.method == "exhaustive");
  CHECK(general_linear_order(2, 2) == 6);
  // sl2 and so3 are isomorphic over GF(3) but not over GF(2)
  CHECK(is_isomorphic(sl2<GF3>().algebra, so3<GF3>().algebra).decision == Decision::yes);
  CHECK(is_isomorphic(sl2<GF2>().algebra, so3<GF2>().algebra).decision == Decision::no);
  // fingerprints alone never decide yes over Q
  CHECK(is_isomorphic(sl2<Rational>().algebra, so3<Rational>().algebra).decision == Decision::unknown);
}

TEST_CASE("property: constructions validate and solvability extends") {
  for (const auto& L : sample_algebras<GF2>(31, 4, 40)) {
    CHECK(validate(L).empty());
    const auto lat = ideal_lattice(L);
    for (const auto& B : lat->ideals) {
      const auto q = quotient(L, B);
      CHECK(validate(q.algebra).empty());
      const auto sub = restrict(L, B);
      CHECK(validate(sub).empty());
      if (is_solvable(q.algebra) && is_solvable(sub)) CHECK(is_solvable(L));
    }
  }
}

TEST_CASE("property: radical equals the largest solvable ideal") {
  auto run = [](auto tag) {
    using S = decltype(tag);
    for (const auto& L : sample_algebras<S>(32, 4, 30)) {
      Subspace<S> best = Subspace<S>::zero(L.dim());
      const auto lat = ideal_lattice(L);
      for (const auto& I : lat->ideals)
        if (I.dim() > best.dim() && is_solvable(restrict(L, I))) best = I;
      CHECK(radical(L) == best);
    }
  };
  run(GF2{});
  run(GF3{});
}

TEST_CASE("property: nil test agrees with element-wise nilpotency") {
  for (const auto& L : sample_algebras<GF2>(33, 4, 30)) {
    for_each_subspace<GF2>(L.dim(), std::min<Index>(2, L.dim()), [&](const Subspace<GF2>& U) {
      if (!is_subalgebra(L, U)) return;
      bool elementwise = true;
      for (const auto& u : members(U)) elementwise = elementwise && nilpotency_index(ad(L, u)) > 0;
      CHECK(is_nil_subalgebra(L, U) == elementwise);
    });
  }
}

TEST_CASE("property: Fitting dimensions and chief-series dimensions") {
  SplitMix64 rng(34);
  for (const auto& L : sample_algebras<GF3>(34, 4, 30)) {
    const auto a = random_vector<GF3>(rng, L.dim());
    const auto fd = fitting_decomposition(L, a);
    CHECK(fd.null_component.dim() + fd.one_component.dim() == L.dim());
    CHECK(is_subalgebra(L, fd.null_component));
    Index total = 0;
    for (const auto& f : chief_series(L)) {
      total += f.quotient.dim();
      CHECK(validate(f.quotient).empty());
    }
    CHECK(total == L.dim());
  }
}

TEST_CASE("property: isomorphism is symmetric and respects fingerprints") {
  const auto algebras = sample_algebras<GF2>(35, 3, 30);
  for (std::size_t i = 0; i < algebras.size(); ++i)
    for (std::size_t j = i; j < algebras.size(); ++j) {
      const auto ab = is_isomorphic(algebras[i], algebras[j]);
      const auto ba = is_isomorphic(algebras[j], algebras[i]);
      CHECK(ab.decision == ba.decision);
      if (!ab.fingerprints_equal) CHECK(ab.decision == Decision::no);
    }
}

TEST_CASE("property: fingerprints are basis-independent") {
  SplitMix64 rng(36);
  for (const auto& L : sample_algebras<GF3>(36, 4, 20)) {
    // random change of basis P: new brackets [Pe_i, Pe_j] in P-coordinates
    Matrix<GF3> p;
    do p = csec::testing::random_matrix<GF3>(rng, L.dim(), L.dim());
    while (rank(p) != L.dim());
    Matrix<GF3> aug(L.dim(), 2 * L.dim());
    aug << p, Matrix<GF3>::Identity(L.dim(), L.dim());
    const Matrix<GF3> pinv = rref(aug).matrix.rightCols(L.dim());
    std::vector<LieAlgebra<GF3>::Bracket> br;
    for (Index i = 0; i < L.dim(); ++i)
      for (Index j = i + 1; j < L.dim(); ++j) {
        Vector<GF3> val = pinv * bracket(L, Vector<GF3>(p.col(i)), Vector<GF3>(p.col(j)));
        if (!is_zero_matrix(val)) br.push_back({i, j, val});
      }
    const auto moved = LieAlgebra<GF3>::with_default_labels(L.dim(), br);
    CHECK(validate(moved).empty());
    CHECK(fingerprint(moved) == fingerprint(L));
    if (L.dim() <= 3) CHECK(is_isomorphic(L, moved).decision == Decision::yes);
  }
}

TEST_CASE("property: derivations agree with a brute-force search") {
  for (const auto& L : sample_algebras<GF2>(33, 3, 20)) {
    const Index n = L.dim();
    std::uint64_t count = 0;
    for_each_vector<GF2>(n * n, [&](const Vector<GF2>& flat) {
      const Matrix<GF2> D = detail::unflatten(flat, n);
      bool ok = true;
      for (Index i = 0; i < n && ok; ++i)
        for (Index j = 0; j < n && ok; ++j)
          ok = D * L.bracket_basis(i, j) ==
               bracket(L, Vector<GF2>(D.col(i)), unit_vector<GF2>(n, j)) +
                   bracket(L, unit_vector<GF2>(n, i), Vector<GF2>(D.col(j)));
      if (ok) ++count;
    });
    CHECK(count == (std::uint64_t{1} << derivations(L).size()));
    for (const auto& D : derivations(L)) {
      const auto E = derivation_extension(L, D);
      CHECK(validate(E).empty());
      // N is an ideal of codimension 1 and ad t restricts to D
      std::vector<Vector<GF2>> rows;
      for (Index i = 0; i < n; ++i) rows.push_back(unit_vector<GF2>(n + 1, i));
      CHECK(is_ideal(E, Subspace<GF2>::span(rows, n + 1)));
      CHECK(Matrix<GF2>(E.ad_basis(n).topLeftCorner(n, n)) == D);
    }
  }
}
