#pragma once

// Minimal ideals, chief series, the solvable radical and ideal lattices.

#include "csec/rng.hpp"
#include "csec/structure.hpp"

#include <set>

namespace csec {

template <class S>
struct MinimalIdeal {
  Subspace<S> ideal;
  bool verified = false;  ///< minimality is proven, not just observed among candidates
};

template <class S>
struct MinimalIdeals {
  std::vector<MinimalIdeal<S>> ideals;  ///< sorted by dimension, then canonical basis
  bool complete = false;                ///< no other minimal ideal exists

  [[nodiscard]] bool all_verified() const {
    return std::all_of(ideals.begin(), ideals.end(), [](const auto& m) { return m.verified; });
  }
  [[nodiscard]] bool exact() const { return complete && all_verified(); }
};

template <class S>
bool is_abelian_subspace(const LieAlgebra<S>& L, const Subspace<S>& U) {
  return subspace_bracket(L, U, U).is_zero();
}

namespace detail {

template <class S>
std::vector<Subspace<S>> inclusion_minimal(const std::set<Subspace<S>>& candidates) {
  std::vector<Subspace<S>> out;
  for (const auto& c : candidates) {  // ascending dimension
    const bool has_smaller =
        std::any_of(out.begin(), out.end(), [&](const Subspace<S>& m) { return c.contains(m); });
    if (!has_smaller && !c.is_zero()) out.push_back(c);
  }
  return out;
}

template <class S>
std::vector<Vector<S>> rational_probe_vectors(Index n) {
  std::vector<Vector<S>> out;
  for (Index i = 0; i < n; ++i) out.push_back(unit_vector<S>(n, i));
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) out.push_back(unit_vector<S>(n, i) + unit_vector<S>(n, j));
  SplitMix64 rng(0x6d696e696465616cULL);
  for (int t = 0; t < 16; ++t) {
    Vector<S> v(n);
    for (Index i = 0; i < n; ++i) v(i) = S(static_cast<long long>(rng.below(5)) - 2);
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace detail

/// Minimal ideals of L.
///
/// Over GF(p) every minimal ideal is the ideal closure of any of its nonzero
/// vectors, so closing one representative per projective point is
/// exhaustive. Over Q the candidates are closures of basis vectors, their
/// pairwise sums and a fixed set of small pseudorandom vectors; a candidate
/// is marked verified when it is 1-dimensional or certified simple as an
/// algebra, and the list is marked complete when every further minimal ideal
/// would have to lie in the common centralizer of the ones found, and that
/// centralizer sits inside one of them.
template <class S>
MinimalIdeals<S> minimal_ideals(const LieAlgebra<S>& L) {
  const Index n = L.dim();
  MinimalIdeals<S> out;
  std::set<Subspace<S>> candidates;
  if constexpr (FiniteField<S>) {
    for_each_projective_point<S>(n, [&](const Vector<S>& v) {
      candidates.insert(ideal_closure(L, Subspace<S>::span(Matrix<S>(v.transpose()))));
    });
    for (auto& m : detail::inclusion_minimal(candidates)) out.ideals.push_back({std::move(m), true});
    out.complete = true;
  } else {
    for (const auto& v : detail::rational_probe_vectors<S>(n))
      if (!is_zero_matrix(v)) candidates.insert(ideal_closure(L, Subspace<S>::span(Matrix<S>(v.transpose()))));
    for (auto& m : detail::inclusion_minimal(candidates)) {
      const bool verified = m.dim() == 1 || certify_simple_char0(restrict(L, m)).certified;
      out.ideals.push_back({std::move(m), verified});
    }
    if (n == 0) {
      out.complete = true;
    } else if (out.all_verified()) {
      Subspace<S> common = Subspace<S>::full(n);
      for (const auto& m : out.ideals) common = intersect(common, centralizer(L, m.ideal));
      out.complete = common.is_zero() || std::any_of(out.ideals.begin(), out.ideals.end(), [&](const auto& m) {
                       return m.ideal.contains(common);
                     });
    }
  }
  return out;
}

template <class S>
struct ChiefFactor {
  Subspace<S> upper;  ///< A
  Subspace<S> lower;  ///< B, strictly inside A, no ideal of L in between
  LieAlgebra<S> quotient;
  bool abelian = false;
};

template <class S>
ChiefFactor<S> make_chief_factor(const LieAlgebra<S>& L, Subspace<S> upper, Subspace<S> lower) {
  ChiefFactor<S> f;
  f.quotient = section_algebra(L, upper, lower);
  f.abelian = lower.contains(subspace_bracket(L, upper, upper));
  f.upper = std::move(upper);
  f.lower = std::move(lower);
  return f;
}

/// Chief series 0 = I_0 < I_1 < ... < I_m = L, each step a minimal ideal of
/// L/I_t. Over Q each step needs a verified minimal ideal.
template <class S>
std::vector<ChiefFactor<S>> chief_series(const LieAlgebra<S>& L) {
  std::vector<ChiefFactor<S>> out;
  Subspace<S> current = Subspace<S>::zero(L.dim());
  while (!current.is_full()) {
    const auto q = quotient(L, current);
    const auto mins = minimal_ideals(q.algebra);
    const auto it = std::find_if(mins.ideals.begin(), mins.ideals.end(), [](const auto& m) { return m.verified; });
    if (it == mins.ideals.end())
      throw CapabilityError("chief series step " + std::to_string(out.size()) + ": no minimal ideal of the " +
                            std::to_string(q.algebra.dim()) + "-dim quotient L/I_" + std::to_string(out.size()) +
                            " could be certified minimal over " + L.field().name());
    Subspace<S> next = q.map.preimage(it->ideal);
    out.push_back(make_chief_factor(L, next, current));
    current = std::move(next);
  }
  return out;
}

/// Largest solvable ideal.
///
/// Characteristic 0: the Killing-orthogonal of [L, L]. Characteristic p:
/// a nonzero radical contains an abelian minimal ideal A, and
/// rad(L)/A = rad(L/A), so recurse on L/A; with no abelian minimal ideal the
/// radical is 0.
template <class S>
Subspace<S> radical(const LieAlgebra<S>& L) {
  const Index n = L.dim();
  if constexpr (field_traits<S>::characteristic == 0) {
    const Subspace<S> derived = derived_algebra(L);
    if (derived.is_zero()) return Subspace<S>::full(n);
    return kernel(Matrix<S>(derived.basis() * killing_form(L)));
  } else {
    if (is_solvable(L)) return Subspace<S>::full(n);
    const auto mins = minimal_ideals(L);
    for (const auto& m : mins.ideals) {
      if (!is_abelian_subspace(L, m.ideal)) continue;
      const auto q = quotient(L, m.ideal);
      return q.map.preimage(radical(q.algebra));
    }
    return Subspace<S>::zero(n);
  }
}

/// Every ideal of L together with its covering relation (chief factors).
template <class S>
struct IdealLattice {
  std::vector<Subspace<S>> ideals;                ///< by dimension, then canonical basis
  std::vector<std::vector<std::size_t>> covers;  ///< covers[d]: ideals C with ideals[d] < C a chief factor

  [[nodiscard]] std::optional<std::size_t> find(const Subspace<S>& U) const {
    auto it = std::lower_bound(ideals.begin(), ideals.end(), U);
    if (it == ideals.end() || !(*it == U)) return std::nullopt;
    return static_cast<std::size_t>(it - ideals.begin());
  }
};

namespace detail {

template <class S>
std::optional<std::vector<Subspace<S>>> ideals_by_descent(const LieAlgebra<S>& L) {
  std::set<Subspace<S>> out{Subspace<S>::zero(L.dim())};
  if (L.dim() == 0) return std::vector<Subspace<S>>(out.begin(), out.end());
  const auto mins = minimal_ideals(L);
  if (!mins.exact()) return std::nullopt;
  for (const auto& m : mins.ideals) {
    const auto q = quotient(L, m.ideal);
    auto sub = ideals_by_descent(q.algebra);
    if (!sub) return std::nullopt;
    for (const auto& j : *sub) out.insert(q.map.preimage(j));
  }
  return std::vector<Subspace<S>>(out.begin(), out.end());
}

template <class S>
IdealLattice<S> with_covers(std::vector<Subspace<S>> ideals) {
  IdealLattice<S> lat{std::move(ideals), {}};
  std::sort(lat.ideals.begin(), lat.ideals.end());
  const auto& id = lat.ideals;
  lat.covers.resize(id.size());
  for (std::size_t d = 0; d < id.size(); ++d) {
    auto& cov = lat.covers[d];
    for (std::size_t c = d + 1; c < id.size(); ++c) {
      if (id[c].dim() <= id[d].dim() || !id[c].contains(id[d])) continue;
      const bool above_cover = std::any_of(cov.begin(), cov.end(), [&](std::size_t e) { return id[c].contains(id[e]); });
      if (!above_cover) cov.push_back(c);
    }
  }
  return lat;
}

}  // namespace detail

/// All ideals of L. Over GF(p) this filters an exhaustive subspace
/// enumeration; over Q it descends through exact minimal-ideal lists and
/// returns nullopt when some step cannot be certified.
template <class S>
std::optional<IdealLattice<S>> ideal_lattice(const LieAlgebra<S>& L,
                                             std::uint64_t budget = kDefaultSubspaceBudget) {
  if constexpr (FiniteField<S>) {
    std::vector<Subspace<S>> ideals;
    for (Index d = 0; d <= L.dim(); ++d)
      for_each_subspace<S>(L.dim(), d, [&](Subspace<S> U) {
        if (is_ideal(L, U)) ideals.push_back(std::move(U));
      }, budget);
    return detail::with_covers(std::move(ideals));
  } else {
    auto ideals = detail::ideals_by_descent(L);
    if (!ideals) return std::nullopt;
    return detail::with_covers(std::move(*ideals));
  }
}

}  // namespace csec
