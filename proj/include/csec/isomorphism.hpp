#pragma once

// Isomorphism invariants and exhaustive isomorphism search over small
// finite fields.

#include "csec/ideals.hpp"

#include <array>
#include <sstream>

namespace csec {

enum class Decision { no, yes, unknown };

inline const char* to_string(Decision d) {
  switch (d) {
    case Decision::no: return "no";
    case Decision::yes: return "yes";
    case Decision::unknown: return "unknown";
  }
  return "?";
}

/// Basis-independent invariants; equal for isomorphic algebras.
struct Fingerprint {
  Index dim = 0;
  std::vector<Index> derived_dims;
  std::vector<Index> lower_central_dims;
  Index centre_dim = 0;
  Index killing_rank = 0;
  Index derived_centralizer_dim = 0;
  /// Over GF(p): sorted (nilpotency index of ad u, rank of ad u, count)
  /// over all elements u (index 0: not nilpotent). Empty over Q or when
  /// p^dim exceeds kElementProfileLimit.
  std::vector<std::array<std::uint64_t, 3>> element_profile;
  /// Over GF(p): per dimension d, (subalgebras, ideals, abelian subalgebras)
  /// of dimension d. Empty over Q or above kSubspaceProfileLimit subspaces.
  std::vector<std::array<std::uint64_t, 3>> subspace_profile;

  friend auto operator<=>(const Fingerprint&, const Fingerprint&) = default;

  [[nodiscard]] std::string str() const {
    std::ostringstream os;
    auto list = [&](const auto& v) {
      os << '[';
      for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
      os << ']';
    };
    os << "dim=" << dim << " derived=";
    list(derived_dims);
    os << " lcs=";
    list(lower_central_dims);
    os << " centre=" << centre_dim << " killing_rank=" << killing_rank << " c(L')=" << derived_centralizer_dim;
    auto triples = [&](const char* name, const auto& v) {
      os << ' ' << name << "=[";
      for (std::size_t i = 0; i < v.size(); ++i)
        os << (i ? "," : "") << '(' << v[i][0] << ' ' << v[i][1] << ' ' << v[i][2] << ')';
      os << ']';
    };
    triples("elements", element_profile);
    triples("subspaces", subspace_profile);
    return os.str();
  }
};

inline constexpr std::uint64_t kElementProfileLimit = 1 << 16;
inline constexpr std::uint64_t kSubspaceProfileLimit = 20'000;

/// Computes the invariants; with_subspace_profile = false skips the
/// (comparatively expensive) subspace counts, giving a coarser key.
template <class S>
Fingerprint fingerprint(const LieAlgebra<S>& L, bool with_subspace_profile = true) {
  Fingerprint f;
  f.dim = L.dim();
  f.derived_dims = series(L, SeriesKind::derived).dims();
  f.lower_central_dims = series(L, SeriesKind::lower_central).dims();
  f.centre_dim = centre(L).dim();
  f.killing_rank = rank(killing_form(L));
  f.derived_centralizer_dim = centralizer(L, derived_algebra(L)).dim();
  if constexpr (FiniteField<S>) {
    constexpr int q = field_traits<S>::order;
    const int n = static_cast<int>(L.dim());
    double count = 1;
    for (int i = 0; i < n; ++i) count *= q;
    if (count <= static_cast<double>(kElementProfileLimit)) {
      std::map<std::pair<std::uint64_t, std::uint64_t>, std::uint64_t> hist;
      for_each_vector<S>(L.dim(), [&](const Vector<S>& u) {
        const Matrix<S> a = ad(L, u);
        ++hist[{static_cast<std::uint64_t>(nilpotency_index(a)), static_cast<std::uint64_t>(rank(a))}];
      });
      for (const auto& [key, c] : hist) f.element_profile.push_back({key.first, key.second, c});
    }
    if (with_subspace_profile && count_all_subspaces(n, q) <= kSubspaceProfileLimit) {
      for (Index d = 0; d <= L.dim(); ++d) {
        std::array<std::uint64_t, 3> row{0, 0, 0};
        for_each_subspace<S>(L.dim(), d, [&](const Subspace<S>& U) {
          if (!is_subalgebra(L, U)) return;
          ++row[0];
          if (is_ideal(L, U)) ++row[1];
          if (is_abelian_subspace(L, U)) ++row[2];
        });
        f.subspace_profile.push_back(row);
      }
    }
  }
  return f;
}

/// |GL_n(GF(q))|, saturating.
inline std::uint64_t general_linear_order(int n, int q) {
  long double total = 1;
  long double qn = 1;
  for (int i = 0; i < n; ++i) qn *= q;
  long double qi = 1;
  for (int i = 0; i < n; ++i) {
    total *= (qn - qi);
    qi *= q;
  }
  return total > 1.8e19L ? UINT64_MAX : static_cast<std::uint64_t>(total);
}

inline constexpr std::uint64_t kIsomorphismSearchLimit = 2'000'000;

/// Exhaustive search runs for dim <= 3 (dim <= 4 over GF(2)) when
/// |GL_n(GF(p))| stays within kIsomorphismSearchLimit.
template <class S>
bool exhaustive_isomorphism_feasible(Index n) {
  if constexpr (FiniteField<S>) {
    constexpr int q = field_traits<S>::order;
    const Index cutoff = q == 2 ? 4 : 3;
    return n <= cutoff && general_linear_order(static_cast<int>(n), q) <= kIsomorphismSearchLimit;
  } else {
    return false;
  }
}

/// Searches for an invertible P with P[e_i, e_j]_a = [P e_i, P e_j]_b.
/// Columns of P are assigned one at a time; a bracket pair is checked as soon
/// as every basis vector its value depends on has an image.
template <FiniteField S>
std::optional<Matrix<S>> find_isomorphism(const LieAlgebra<S>& a, const LieAlgebra<S>& b) {
  const Index n = a.dim();
  if (b.dim() != n) return std::nullopt;
  if (n == 0) return Matrix<S>(0, 0);

  struct Pair {
    Index i, j;
    Vector<S> value;
  };
  std::vector<std::vector<Pair>> checks(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) {
      const Vector<S> v = a.bracket_basis(i, j);
      Index need = j;
      for (Index k = 0; k < n; ++k)
        if (!is_zero(v(k))) need = std::max(need, k);
      checks[static_cast<std::size_t>(need)].push_back({i, j, v});
    }

  std::vector<Vector<S>> vectors;
  for_each_vector<S>(n, [&](const Vector<S>& v) {
    if (!is_zero_matrix(v)) vectors.push_back(v);
  });

  Matrix<S> p = Matrix<S>::Zero(n, n);
  std::vector<Matrix<S>> image_ad(static_cast<std::size_t>(n));
  std::optional<Matrix<S>> found;

  auto search = [&](auto&& self, Index level, const Subspace<S>& spanned) -> bool {
    if (level == n) {
      found = p;
      return true;
    }
    for (const auto& v : vectors) {
      if (spanned.contains(v)) continue;
      p.col(level) = v;
      image_ad[static_cast<std::size_t>(level)] = ad(b, v);
      bool ok = true;
      for (const auto& pr : checks[static_cast<std::size_t>(level)]) {
        if (p * pr.value != image_ad[static_cast<std::size_t>(pr.i)] * p.col(pr.j)) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      Matrix<S> rows(spanned.dim() + 1, n);
      rows << spanned.basis(), v.transpose();
      if (self(self, level + 1, Subspace<S>::span(rows))) return true;
    }
    p.col(level).setZero();
    return false;
  };
  search(search, 0, Subspace<S>::zero(n));
  return found;
}

template <class S>
struct IsomorphismResult {
  Decision decision = Decision::unknown;
  bool fingerprints_equal = false;
  std::string method;  ///< fingerprint, identical-constants, exhaustive, small-dimension, undecided
};

/// no when fingerprints differ; yes or no by exhaustive search within the
/// cutoffs; yes for identical structure constants; unknown otherwise.
template <class S>
IsomorphismResult<S> is_isomorphic(const LieAlgebra<S>& a, const LieAlgebra<S>& b) {
  IsomorphismResult<S> r;
  r.fingerprints_equal = fingerprint(a) == fingerprint(b);
  if (!r.fingerprints_equal) {
    r.decision = Decision::no;
    r.method = "fingerprint";
    return r;
  }
  if (a.same_structure(b)) {
    r.decision = Decision::yes;
    r.method = "identical-constants";
    return r;
  }
  if (a.dim() <= 1) {  // every algebra of dimension <= 1 is abelian
    r.decision = Decision::yes;
    r.method = "small-dimension";
    return r;
  }
  if constexpr (FiniteField<S>) {
    if (exhaustive_isomorphism_feasible<S>(a.dim())) {
      r.decision = find_isomorphism(a, b) ? Decision::yes : Decision::no;
      r.method = "exhaustive";
      return r;
    }
  }
  r.decision = Decision::unknown;
  r.method = "undecided";
  return r;
}

}  // namespace csec
