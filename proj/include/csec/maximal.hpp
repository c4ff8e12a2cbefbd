#pragma once

// Maximal subalgebras: exhaustive enumeration over GF(p) and maximality
// certificates.

#include "csec/isomorphism.hpp"

namespace csec {

/// Every maximal subalgebra of L over GF(p), in canonical order.
///
/// Subspaces are scanned from dimension dim L - 1 downwards, so a subalgebra
/// is maximal exactly when no previously kept subalgebra contains it.
template <FiniteField S>
std::vector<Subspace<S>> maximal_subalgebras(const LieAlgebra<S>& L, std::uint64_t budget = kDefaultSubspaceBudget) {
  const Index n = L.dim();
  const auto total = count_all_subspaces(static_cast<int>(n), field_traits<S>::order);
  if (total > budget)
    throw BudgetExceeded("maximal subalgebras of a " + std::to_string(n) + "-dim algebra over " + L.field().name() +
                         " need " + std::to_string(total) + " subspaces > budget " + std::to_string(budget));
  std::vector<Subspace<S>> out;
  for (Index d = n - 1; d >= 0; --d) {
    for_each_subspace<S>(n, d, [&](Subspace<S> U) {
      if (std::any_of(out.begin(), out.end(), [&](const Subspace<S>& m) { return m.contains(U); })) return;
      if (is_subalgebra(L, U)) out.push_back(std::move(U));
    }, budget);
  }
  std::sort(out.begin(), out.end());
  return out;
}

template <class S>
struct MaximalityVerdict {
  Decision decision = Decision::unknown;
  std::string basis;                   ///< how the decision was reached
  std::optional<Subspace<S>> witness;  ///< intermediate subalgebra when decision is no
};

namespace detail {

template <class S>
std::vector<Vector<S>> extension_probes(const Subspace<S>& M) {
  const Index n = M.ambient_dim();
  std::vector<bool> is_pivot(static_cast<std::size_t>(n), false);
  for (Index p : M.pivots()) is_pivot[static_cast<std::size_t>(p)] = true;
  std::vector<Vector<S>> out;
  for (Index i = 0; i < n; ++i) out.push_back(unit_vector<S>(n, i));
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) out.push_back(unit_vector<S>(n, i) + unit_vector<S>(n, j));
  SplitMix64 rng(0x6d6178696d616cULL);
  for (int t = 0; t < 16; ++t) {
    Vector<S> v(n);
    for (Index i = 0; i < n; ++i) v(i) = S(static_cast<long long>(rng.below(5)) - 2);
    out.push_back(std::move(v));
  }
  std::erase_if(out, [&](const Vector<S>& v) { return M.contains(v); });
  return out;
}

}  // namespace detail

/// Decides whether the proper subalgebra M is maximal.
///
/// Codimension 1 is always maximal. Over GF(p) every v outside M is tried:
/// M is maximal iff each closure of M + Fv is L. Over Q the same one-step
/// extension test runs over basis vectors, pairwise basis sums and a fixed
/// set of small pseudorandom vectors; a proper closure proves "no", and when
/// every probe closes to L the answer is "yes" (basis "one-step extension").
template <class S>
MaximalityVerdict<S> is_maximal(const LieAlgebra<S>& L, const Subspace<S>& M) {
  detail::require_ambient(L, M);
  if (M.is_full() || !is_subalgebra(L, M)) throw DomainError("is_maximal: M must be a proper subalgebra");
  MaximalityVerdict<S> out;
  if (M.codim() == 1) {
    out.decision = Decision::yes;
    out.basis = "codimension 1";
    return out;
  }
  auto probe = [&](const Vector<S>& v) {
    Matrix<S> rows(M.dim() + 1, L.dim());
    rows << M.basis(), v.transpose();
    Subspace<S> closure = subalgebra_closure(L, Subspace<S>::span(rows));
    if (!closure.is_full()) {
      out.decision = Decision::no;
      out.basis = "intermediate subalgebra";
      out.witness = std::move(closure);
      return false;
    }
    return true;
  };
  if constexpr (FiniteField<S>) {
    bool maximal = true;
    for_each_projective_point<S>(L.dim(), [&](const Vector<S>& v) {
      if (maximal && !M.contains(v)) maximal = probe(v);
    });
    if (maximal) {
      out.decision = Decision::yes;
      out.basis = "exhaustive";
    }
  } else {
    for (const auto& v : detail::extension_probes(M))
      if (!probe(v)) return out;
    out.decision = Decision::yes;
    out.basis = "one-step extension";
  }
  return out;
}

}  // namespace csec
