#pragma once

// Cores, c-ideals, supplementing chief factors, c-sections and the two
// indices of a maximal subalgebra, and primitivity types.

#include "csec/corpus.hpp"

namespace csec {

/// A result that contradicts a cited background theorem; signals a bug.
class Anomaly : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Largest ideal of L inside the subspace B: the fixpoint of
/// X <- {x in X : [L, x] subset X}.
template <class S>
Subspace<S> core(const LieAlgebra<S>& L, const Subspace<S>& B) {
  detail::require_ambient(L, B);
  const Index n = L.dim();
  Subspace<S> x = B;
  while (!x.is_zero()) {
    const Matrix<S> w = x.annihilator();
    if (w.rows() == 0) return x;
    // coefficient vectors c (in x's basis) with w * ad(e_k) * X^T c = 0 for all k
    Matrix<S> system(n * w.rows(), x.dim());
    const Matrix<S> xt = x.basis().transpose();
    for (Index k = 0; k < n; ++k) system.middleRows(k * w.rows(), w.rows()) = w * L.ad_basis(k) * xt;
    const Subspace<S> coeffs = kernel(system);
    if (coeffs.dim() == x.dim()) return x;
    x = Subspace<S>::span(Matrix<S>(coeffs.basis() * x.basis()));
  }
  return x;
}

template <class S>
struct CIdealResult {
  bool value = false;
  std::optional<Subspace<S>> witness;  ///< ideal C with L = B + C and B meet C inside core(B)
  bool exhaustive = false;             ///< false: the Q search ran over a partial ideal list
};

namespace detail {

/// Ideals of L over Q reachable without an exact lattice: chief-series
/// terms (when certifiable), radical, derived and lower central terms,
/// centre, 0, L, and pairwise sums.
template <class S>
std::vector<Subspace<S>> known_ideals(const LieAlgebra<S>& L) {
  const Index n = L.dim();
  std::set<Subspace<S>> base{Subspace<S>::zero(n), Subspace<S>::full(n), radical(L), centre(L)};
  for (const auto& t : series(L, SeriesKind::derived).terms) base.insert(t);
  for (const auto& t : series(L, SeriesKind::lower_central).terms) base.insert(t);
  try {
    for (const auto& f : chief_series(L)) base.insert(f.upper);
  } catch (const CapabilityError&) {
  }
  std::set<Subspace<S>> all = base;
  for (const auto& a : base)
    for (const auto& b : base) all.insert(sum(a, b));
  return {all.begin(), all.end()};
}

}  // namespace detail

/// Is B a c-ideal: some ideal C has L = B + C and B meet C inside core(B)?
/// Searches every ideal when the lattice is known (always over GF(p));
/// otherwise a partial list, reported with exhaustive = false.
template <class S>
CIdealResult<S> is_c_ideal(const LieAlgebra<S>& L, const Subspace<S>& B, const IdealLattice<S>* lattice = nullptr) {
  detail::require_ambient(L, B);
  std::optional<IdealLattice<S>> own;
  if (!lattice) {
    own = ideal_lattice(L);
    lattice = own ? &*own : nullptr;
  }
  const std::vector<Subspace<S>> candidates = lattice ? lattice->ideals : detail::known_ideals(L);
  const Subspace<S> b_core = core(L, B);
  CIdealResult<S> out;
  out.exhaustive = lattice != nullptr;
  for (const auto& c : candidates) {
    if (sum(B, c).is_full() && b_core.contains(intersect(B, c))) {
      out.value = true;
      out.witness = c;
      break;
    }
  }
  return out;
}

/// The chief factor C/D used for Sec(M): D = core(M), C/D the first
/// certified minimal ideal of L/D. Since M/D is a core-free maximal
/// subalgebra of L/D, every minimal ideal of L/D supplements it.
template <class S>
ChiefFactor<S> supplementing_chief_factor(const LieAlgebra<S>& L, const Subspace<S>& M) {
  const Subspace<S> d = core(L, M);
  if (d == M && M.is_full()) throw DomainError("supplementing_chief_factor: M must be proper");
  const auto q = quotient(L, d);
  const auto mins = minimal_ideals(q.algebra);
  const auto it = std::find_if(mins.ideals.begin(), mins.ideals.end(), [](const auto& m) { return m.verified; });
  if (it == mins.ideals.end())
    throw CapabilityError("supplementing chief factor: no minimal ideal of L/core(M) (dim " +
                          std::to_string(q.algebra.dim()) + ") certified over " + L.field().name());
  Subspace<S> c = q.map.preimage(it->ideal);
  if (!sum(M, c).is_full())
    throw Anomaly("minimal ideal of L/core(M) does not supplement the maximal subalgebra M");
  return make_chief_factor(L, std::move(c), d);
}

/// Every chief factor C/D of L with D inside M and C not inside M (these
/// are exactly the factors supplementing the maximal subalgebra M).
template <class S>
std::vector<ChiefFactor<S>> supplementing_chief_factors(const LieAlgebra<S>& L, const Subspace<S>& M,
                                                        const IdealLattice<S>& lattice) {
  std::vector<ChiefFactor<S>> out;
  for (std::size_t d = 0; d < lattice.ideals.size(); ++d) {
    if (!M.contains(lattice.ideals[d])) continue;
    for (std::size_t c : lattice.covers[d])
      if (!M.contains(lattice.ideals[c])) out.push_back(make_chief_factor(L, lattice.ideals[c], lattice.ideals[d]));
  }
  return out;
}

template <class S>
struct CSection {
  ChiefFactor<S> factor;  ///< C/D
  Subspace<S> meet;       ///< M meet C
  LieAlgebra<S> algebra;  ///< (M meet C)/D
};

template <class S>
CSection<S> c_section_from(const LieAlgebra<S>& L, const Subspace<S>& M, ChiefFactor<S> factor) {
  Subspace<S> meet = intersect(M, factor.upper);
  LieAlgebra<S> sec = section_algebra(L, meet, factor.lower);
  return {std::move(factor), std::move(meet), std::move(sec)};
}

/// Sec(M), computed at D = core(M).
template <class S>
CSection<S> c_section(const LieAlgebra<S>& L, const Subspace<S>& M) {
  return c_section_from(L, M, supplementing_chief_factor(L, M));
}

template <class S>
Index c_index(const LieAlgebra<S>& L, const Subspace<S>& M) {
  return c_section(L, M).algebra.dim();
}

/// eta(L : M) = dim C/D for an ideal C of minimum dimension with L = M + C
/// and an ideal D covered by C. Computed from the ideal lattice alone,
/// independently of c_index.
template <class S>
Index ideal_index(const LieAlgebra<S>& L, const Subspace<S>& M, const IdealLattice<S>& lattice) {
  detail::require_ambient(L, M);
  std::optional<std::size_t> best;
  for (std::size_t c = 0; c < lattice.ideals.size(); ++c)
    if (sum(M, lattice.ideals[c]).is_full()) {
      best = c;  // ideals are sorted by dimension
      break;
    }
  if (!best) throw Anomaly("no ideal supplements M (L itself should)");
  for (std::size_t d = 0; d < lattice.ideals.size(); ++d) {
    const auto& cov = lattice.covers[d];
    if (std::find(cov.begin(), cov.end(), *best) != cov.end())
      return lattice.ideals[*best].dim() - lattice.ideals[d].dim();
  }
  throw Anomaly("supplementing ideal covers no ideal");
}

template <class S>
Index ideal_index(const LieAlgebra<S>& L, const Subspace<S>& M) {
  const auto lattice = ideal_lattice(L);
  if (!lattice)
    throw CapabilityError("ideal index: the ideal lattice of this algebra over " + L.field().name() +
                          " could not be certified");
  return ideal_index(L, M, *lattice);
}

/// Primitivity type of L/core(M): 1 = unique minimal ideal, abelian;
/// 2 = unique minimal ideal, nonabelian; 3 = two minimal ideals, both
/// nonabelian.
template <class S>
int primitivity_type(const LieAlgebra<S>& L, const Subspace<S>& M) {
  const auto q = quotient(L, core(L, M));
  const auto mins = minimal_ideals(q.algebra);
  if (!mins.exact())
    throw CapabilityError("primitivity type: minimal ideals of L/core(M) (dim " + std::to_string(q.algebra.dim()) +
                          ") not certified over " + L.field().name());
  const auto count = mins.ideals.size();
  const auto abelian_count = std::count_if(mins.ideals.begin(), mins.ideals.end(),
                                           [&](const auto& m) { return is_abelian_subspace(q.algebra, m.ideal); });
  if (count == 1) return abelian_count == 1 ? 1 : 2;
  if (count == 2 && abelian_count == 0) return 3;
  throw Anomaly("primitive quotient L/core(M) has " + std::to_string(count) + " minimal ideals (" +
                std::to_string(abelian_count) + " abelian)");
}

template <class S>
struct MaximalReport {
  Subspace<S> maximal;
  std::string maximality_basis;
  Subspace<S> core;
  int prim_type = 0;
  CSection<S> section;
  Index c_index = 0;
  std::optional<Index> ideal_index;  ///< absent when the lattice is unknown over Q
  CIdealResult<S> c_ideal;
  bool sec_solvable = false;
  bool sec_nilpotent = false;
  bool sec_nil = false;
  std::vector<std::string> invariant_violations;
};

/// Certifies maximality, then computes every index of M and checks
/// eta = eta* + codim M, (c-ideal iff eta* = 0) and (type 1 or 3 implies
/// eta* = 0); violations are recorded, not thrown.
template <class S>
MaximalReport<S> analyze_maximal(const LieAlgebra<S>& L, const Subspace<S>& M,
                                 const IdealLattice<S>* lattice = nullptr) {
  const auto verdict = is_maximal(L, M);
  if (verdict.decision != Decision::yes)
    throw DomainError(std::string("analyze_maximal: subalgebra is not maximal") +
                      (verdict.witness ? " (contained in a proper subalgebra of dimension " +
                                             std::to_string(verdict.witness->dim()) + ")"
                                       : ""));
  std::optional<IdealLattice<S>> own;
  if (!lattice) {
    own = ideal_lattice(L);
    lattice = own ? &*own : nullptr;
  }
  MaximalReport<S> r;
  r.maximal = M;
  r.maximality_basis = verdict.basis;
  r.core = core(L, M);
  r.prim_type = primitivity_type(L, M);
  r.section = c_section(L, M);
  r.c_index = r.section.algebra.dim();
  if (lattice) r.ideal_index = ideal_index(L, M, *lattice);
  r.c_ideal = is_c_ideal(L, M, lattice);
  r.sec_solvable = is_solvable(r.section.algebra);
  r.sec_nilpotent = is_nilpotent(r.section.algebra);
  const auto q = quotient(L, r.section.factor.lower);
  r.sec_nil = is_nil_subalgebra(q.algebra, q.map.project(r.section.meet));

  if (r.ideal_index && *r.ideal_index != r.c_index + M.codim())
    r.invariant_violations.push_back("ideal index " + std::to_string(*r.ideal_index) + " != c-index " +
                                     std::to_string(r.c_index) + " + codim " + std::to_string(M.codim()));
  if (r.c_ideal.exhaustive && r.c_ideal.value != (r.c_index == 0))
    r.invariant_violations.push_back(std::string("c-ideal ") + (r.c_ideal.value ? "true" : "false") +
                                     " but c-index " + std::to_string(r.c_index));
  if ((r.prim_type == 1 || r.prim_type == 3) && r.c_index != 0)
    r.invariant_violations.push_back("type " + std::to_string(r.prim_type) + " with c-index " +
                                     std::to_string(r.c_index));
  return r;
}

}  // namespace csec
