#include "csec/csection.hpp"
#include "generators.hpp"

#include "doctest.h"

using namespace csec;

namespace {

template <class S>
Subspace<S> span_of(Index n, std::initializer_list<Index> coords) {
  return detail::coordinate_span<S>(n, coords);
}

}  // namespace

TEST_CASE("core") {
  CHECK(core(r2<Rational>().algebra, span_of<Rational>(2, {1})).is_zero());
  CHECK(core(heisenberg<Rational>().algebra, span_of<Rational>(3, {0, 2})) == span_of<Rational>(3, {0, 2}));
  CHECK(core(sl2<Rational>().algebra, span_of<Rational>(3, {0, 1})).is_zero());
  CHECK(core(heisenberg<GF2>().algebra, span_of<GF2>(3, {0, 1})) == span_of<GF2>(3, {}));
}

TEST_CASE("c-ideals") {
  const auto r = is_c_ideal(r2<Rational>().algebra, span_of<Rational>(2, {1}));
  CHECK(r.value);
  REQUIRE(r.witness);
  CHECK(*r.witness == span_of<Rational>(2, {0}));
  const auto s = is_c_ideal(sl2<Rational>().algebra, span_of<Rational>(3, {0, 1}));
  CHECK_FALSE(s.value);
  CHECK(s.exhaustive);
  CHECK(is_c_ideal(sl2<Rational>().algebra, Subspace<Rational>::full(3)).value);
}

TEST_CASE("supplementing chief factors") {
  const auto f = supplementing_chief_factor(r2<Rational>().algebra, span_of<Rational>(2, {1}));
  CHECK(f.upper == span_of<Rational>(2, {0}));
  CHECK(f.lower.is_zero());
  const auto b = supplementing_chief_factor(sl2<Rational>().algebra, span_of<Rational>(3, {0, 1}));
  CHECK(b.upper.is_full());
  CHECK(b.lower.is_zero());
  const auto h3 = heisenberg<GF2>().algebra;
  for (const auto& m : maximal_subalgebras(h3)) {
    const auto h = supplementing_chief_factor(h3, m);
    CHECK(h.abelian);
    CHECK(h.upper.dim() - h.lower.dim() == 1);
    CHECK(m.contains(h.lower));
  }
}

TEST_CASE("c-sections and indices") {
  const auto r2q = r2<Rational>().algebra;
  const auto y = span_of<Rational>(2, {1});
  CHECK(c_section(r2q, y).algebra.dim() == 0);
  CHECK(ideal_index(r2q, y) == 1);
  CHECK(primitivity_type(r2q, y) == 1);

  const auto s = sl2<Rational>().algebra;
  const auto borel = span_of<Rational>(3, {0, 1});
  const auto sec = c_section(s, borel);
  CHECK(sec.algebra.dim() == 2);
  CHECK_FALSE(is_abelian(sec.algebra));
  CHECK(ideal_index(s, borel) == 3);
  CHECK(primitivity_type(s, borel) == 2);

  const auto g = gejn<Rational>(1);
  for (const auto& m : g.declared_maximals) {
    CHECK(c_index(g.algebra, m) == 2);
    CHECK(ideal_index(g.algebra, m) == 6);
  }

  const auto h3 = heisenberg<GF2>().algebra;
  for (const auto& m : maximal_subalgebras(h3)) {
    CHECK(ideal_index(h3, m) == 1);
    CHECK(primitivity_type(h3, m) == 1);
    CHECK(c_index(h3, m) == 0);
  }
}

TEST_CASE("analyze_maximal") {
  const auto a = analyze_maximal(r2<Rational>().algebra, span_of<Rational>(2, {1}));
  CHECK(a.core.is_zero());
  CHECK(a.prim_type == 1);
  CHECK(a.c_index == 0);
  CHECK(a.ideal_index == Index{1});
  CHECK(a.c_ideal.value);
  CHECK(a.invariant_violations.empty());

  const auto b = analyze_maximal(sl2<Rational>().algebra, span_of<Rational>(3, {0, 1}));
  CHECK(b.core.is_zero());
  CHECK(b.prim_type == 2);
  CHECK(b.c_index == 2);
  CHECK(b.ideal_index == Index{3});
  CHECK_FALSE(b.c_ideal.value);
  CHECK(b.sec_solvable);
  CHECK_FALSE(b.sec_nil);
  CHECK(b.invariant_violations.empty());

  const auto ab = abelian<GF2>(2).algebra;
  for (const auto& m : maximal_subalgebras(ab)) {
    const auto c = analyze_maximal(ab, m);
    CHECK(c.core == m);
    CHECK(c.c_index == 0);
    CHECK(c.ideal_index == Index{1});
    CHECK(c.c_ideal.value);
  }
  CHECK_THROWS_AS(analyze_maximal(heisenberg<GF2>().algebra, span_of<GF2>(3, {2})), DomainError);
}

TEST_CASE("primitive type 3") {
  // sl2 + sl2 over GF(3) with the diagonal as a maximal subalgebra
  const auto L = direct_sum(sl2<GF3>(), sl2<GF3>()).algebra;
  std::vector<Vector<GF3>> rows;
  for (Index i = 0; i < 3; ++i) {
    Vector<GF3> v = Vector<GF3>::Zero(6);
    v(i) = GF3(1);
    v(i + 3) = GF3(1);
    rows.push_back(v);
  }
  const auto diag = Subspace<GF3>::span(rows, 6);
  REQUIRE(is_maximal(L, diag).decision == Decision::yes);
  const auto r = analyze_maximal(L, diag);
  CHECK(r.prim_type == 3);
  CHECK(r.c_index == 0);
  CHECK(r.invariant_violations.empty());
}

TEST_CASE("property: core is the largest ideal inside B") {
  SplitMix64 rng(61);
  const auto corpus = standard_corpus<GF2>(61, 4, 40);
  for (const auto& L : corpus.algebras) {
    const auto lattice = ideal_lattice(L);
    for (int t = 0; t < 6; ++t) {
      const auto B = csec::testing::random_subspace<GF2>(rng, L.dim());
      Subspace<GF2> best = Subspace<GF2>::zero(L.dim());
      for (const auto& I : lattice->ideals)
        if (B.contains(I) && I.dim() > best.dim()) best = I;
      CHECK(core(L, B) == best);
    }
  }
}
