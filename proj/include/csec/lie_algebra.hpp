#pragma once

// Structure-constant Lie algebras, brackets on vectors and subspaces,
// closures, quotients and restrictions.

#include "csec/exactla.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace csec {

/// Finite-dimensional Lie algebra given by structure constants
/// [e_i, e_j] = sum_k c^k_ij e_k.
///
/// Only pairs i < j are supplied; antisymmetry and [e_i, e_i] = 0 are
/// structural, so the alternating law holds in every characteristic.
/// Internally each basis element keeps its adjoint matrix, whose column j is
/// [e_i, e_j].
template <class S>
class LieAlgebra {
 public:
  using Scalar = S;

  struct Bracket {
    Index i = 0;
    Index j = 0;  ///< i < j
    Vector<S> value;
  };

  LieAlgebra() = default;

  LieAlgebra(std::vector<std::string> labels, const std::vector<Bracket>& brackets, std::string provenance = {})
      : labels_(std::move(labels)), provenance_(std::move(provenance)) {
    const Index n = dim();
    ad_.assign(static_cast<std::size_t>(n), Matrix<S>::Zero(n, n));
    std::vector<bool> seen(static_cast<std::size_t>(n * n), false);
    for (const auto& b : brackets) {
      if (b.i < 0 || b.j >= n || b.i >= b.j)
        throw DomainError("bracket indices must satisfy 0 <= i < j < dim, got (" + std::to_string(b.i) + ", " +
                          std::to_string(b.j) + ")");
      if (b.value.size() != n) throw DomainError("bracket value has wrong length");
      auto flag = seen[static_cast<std::size_t>(b.i * n + b.j)];
      if (flag) throw DomainError("bracket (" + std::to_string(b.i) + ", " + std::to_string(b.j) + ") given twice");
      flag = true;
      ad_[b.i].col(b.j) = b.value;
      ad_[b.j].col(b.i) = -b.value;
    }
  }

  /// Algebra with labels e0, e1, ...
  static LieAlgebra with_default_labels(Index n, const std::vector<Bracket>& brackets, std::string provenance = {}) {
    return LieAlgebra(default_labels(n), brackets, std::move(provenance));
  }

  static std::vector<std::string> default_labels(Index n) {
    std::vector<std::string> out;
    for (Index i = 0; i < n; ++i) out.push_back("e" + std::to_string(i));
    return out;
  }

  [[nodiscard]] Index dim() const { return static_cast<Index>(labels_.size()); }
  [[nodiscard]] FieldSpec field() const { return field_spec<S>(); }
  [[nodiscard]] const std::vector<std::string>& labels() const { return labels_; }
  [[nodiscard]] const std::string& provenance() const { return provenance_; }
  void set_provenance(std::string note) { provenance_ = std::move(note); }

  /// ad e_i; column j is [e_i, e_j].
  [[nodiscard]] const Matrix<S>& ad_basis(Index i) const { return ad_[static_cast<std::size_t>(i)]; }
  [[nodiscard]] Vector<S> bracket_basis(Index i, Index j) const { return ad_basis(i).col(j); }

  /// Nonzero brackets with i < j, in lexicographic order of (i, j).
  [[nodiscard]] std::vector<Bracket> brackets() const {
    std::vector<Bracket> out;
    for (Index i = 0; i < dim(); ++i)
      for (Index j = i + 1; j < dim(); ++j)
        if (!is_zero_matrix(ad_basis(i).col(j))) out.push_back({i, j, ad_basis(i).col(j)});
    return out;
  }

  [[nodiscard]] bool same_structure(const LieAlgebra& other) const {
    if (dim() != other.dim()) return false;
    for (Index i = 0; i < dim(); ++i)
      if (ad_basis(i) != other.ad_basis(i)) return false;
    return true;
  }

  friend bool operator==(const LieAlgebra& a, const LieAlgebra& b) {
    return a.labels_ == b.labels_ && a.provenance_ == b.provenance_ && a.same_structure(b);
  }

 private:
  std::vector<std::string> labels_;
  std::vector<Matrix<S>> ad_;
  std::string provenance_;
};

template <class S>
struct JacobiViolation {
  Index i, j, k;
  Vector<S> residual;  ///< [[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j]
};

namespace detail {
template <class S, class Derived>
void require_length(const LieAlgebra<S>& L, const Eigen::MatrixBase<Derived>& v) {
  if (v.size() != L.dim())
    throw DomainError("vector of length " + std::to_string(v.size()) + " in a Lie algebra of dimension " +
                      std::to_string(L.dim()));
}
template <class S>
void require_ambient(const LieAlgebra<S>& L, const Subspace<S>& U) {
  if (U.ambient_dim() != L.dim())
    throw DomainError("subspace of ambient dimension " + std::to_string(U.ambient_dim()) +
                      " in a Lie algebra of dimension " + std::to_string(L.dim()));
}
}  // namespace detail

/// ad x as a matrix; column j is [x, e_j].
template <class S, class Derived>
Matrix<S> ad(const LieAlgebra<S>& L, const Eigen::MatrixBase<Derived>& x) {
  detail::require_length(L, x);
  Matrix<S> out = Matrix<S>::Zero(L.dim(), L.dim());
  for (Index i = 0; i < L.dim(); ++i)
    if (!is_zero(x(i))) out += x(i) * L.ad_basis(i);
  return out;
}

template <class S, class D1, class D2>
Vector<S> bracket(const LieAlgebra<S>& L, const Eigen::MatrixBase<D1>& x, const Eigen::MatrixBase<D2>& y) {
  detail::require_length(L, y);
  return ad(L, x) * y;
}

/// Empty iff the Jacobi identity holds on every basis triple.
template <class S>
std::vector<JacobiViolation<S>> validate(const LieAlgebra<S>& L) {
  std::vector<JacobiViolation<S>> out;
  const Index n = L.dim();
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j)
      for (Index k = j + 1; k < n; ++k) {
        // [[a,b],c] = -ad(c)[a,b]
        Vector<S> r = -(L.ad_basis(k) * L.bracket_basis(i, j)) - L.ad_basis(i) * L.bracket_basis(j, k) -
                      L.ad_basis(j) * L.bracket_basis(k, i);
        if (!is_zero_matrix(r)) out.push_back({i, j, k, std::move(r)});
      }
  return out;
}

/// span{[u, v] : u in U, v in V}.
template <class S>
Subspace<S> subspace_bracket(const LieAlgebra<S>& L, const Subspace<S>& U, const Subspace<S>& V) {
  detail::require_ambient(L, U);
  detail::require_ambient(L, V);
  std::vector<Vector<S>> products;
  for (Index a = 0; a < U.dim(); ++a) {
    const Matrix<S> adu = ad(L, U.vector(a));
    for (Index b = 0; b < V.dim(); ++b) products.push_back(adu * V.vector(b));
  }
  return Subspace<S>::span(products, L.dim());
}

template <class S>
bool is_subalgebra(const LieAlgebra<S>& L, const Subspace<S>& U) {
  detail::require_ambient(L, U);
  const Matrix<S> w = U.annihilator();
  for (Index a = 0; a < U.dim(); ++a) {
    const Matrix<S> adu = ad(L, U.vector(a));
    for (Index b = a + 1; b < U.dim(); ++b)
      if (!is_zero_matrix(w * (adu * U.vector(b)))) return false;
  }
  return true;
}

template <class S>
bool is_ideal(const LieAlgebra<S>& L, const Subspace<S>& U) {
  detail::require_ambient(L, U);
  if (U.is_zero() || U.is_full()) return true;
  const Matrix<S> w = U.annihilator();
  const Matrix<S> ut = U.basis().transpose();
  for (Index k = 0; k < L.dim(); ++k)
    if (!is_zero_matrix(w * L.ad_basis(k) * ut)) return false;
  return true;
}

/// Least subalgebra containing U: iterate U <- U + [U, U].
template <class S>
Subspace<S> subalgebra_closure(const LieAlgebra<S>& L, Subspace<S> U) {
  while (true) {
    Subspace<S> next = sum(U, subspace_bracket(L, U, U));
    if (next.dim() == U.dim()) return U;
    U = std::move(next);
  }
}

/// Least ideal containing U: iterate U <- U + [L, U].
template <class S>
Subspace<S> ideal_closure(const LieAlgebra<S>& L, Subspace<S> U) {
  detail::require_ambient(L, U);
  while (true) {
    std::vector<Vector<S>> images;
    for (Index a = 0; a < U.dim(); ++a) {
      images.push_back(U.vector(a));
      for (Index k = 0; k < L.dim(); ++k) images.push_back(L.ad_basis(k) * U.vector(a));
    }
    Subspace<S> next = Subspace<S>::span(images, L.dim());
    if (next.dim() == U.dim()) return U;
    U = std::move(next);
  }
}

/// {v : [u, v] = 0 for all u in U}.
template <class S>
Subspace<S> centralizer(const LieAlgebra<S>& L, const Subspace<S>& U) {
  detail::require_ambient(L, U);
  if (U.dim() == 0) return Subspace<S>::full(L.dim());
  Matrix<S> stacked(U.dim() * L.dim(), L.dim());
  for (Index a = 0; a < U.dim(); ++a) stacked.middleRows(a * L.dim(), L.dim()) = ad(L, U.vector(a));
  return kernel(stacked);
}

template <class S>
Subspace<S> centre(const LieAlgebra<S>& L) {
  return centralizer(L, Subspace<S>::full(L.dim()));
}

/// {v : [v, u] in U for all u in U}.
template <class S>
Subspace<S> normalizer(const LieAlgebra<S>& L, const Subspace<S>& U) {
  detail::require_ambient(L, U);
  const Matrix<S> w = U.annihilator();
  if (U.dim() == 0 || w.rows() == 0) return Subspace<S>::full(L.dim());
  Matrix<S> stacked(U.dim() * w.rows(), L.dim());
  // [v, u] = -ad(u) v
  for (Index a = 0; a < U.dim(); ++a) stacked.middleRows(a * w.rows(), w.rows()) = w * ad(L, U.vector(a));
  return kernel(stacked);
}

/// Coordinates of L modulo an ideal B: the non-pivot columns of B's
/// canonical basis index the quotient basis.
template <class S>
class QuotientMap {
 public:
  QuotientMap() = default;
  explicit QuotientMap(Subspace<S> kernel) : kernel_(std::move(kernel)) {
    std::vector<bool> is_pivot(static_cast<std::size_t>(kernel_.ambient_dim()), false);
    for (Index p : kernel_.pivots()) is_pivot[static_cast<std::size_t>(p)] = true;
    for (Index c = 0; c < kernel_.ambient_dim(); ++c)
      if (!is_pivot[static_cast<std::size_t>(c)]) free_.push_back(c);
  }

  [[nodiscard]] const Subspace<S>& kernel() const { return kernel_; }
  [[nodiscard]] const std::vector<Index>& retained_coordinates() const { return free_; }
  [[nodiscard]] Index source_dim() const { return kernel_.ambient_dim(); }
  [[nodiscard]] Index target_dim() const { return static_cast<Index>(free_.size()); }

  template <class Derived>
  [[nodiscard]] Vector<S> project(const Eigen::MatrixBase<Derived>& v) const {
    const Vector<S> r = kernel_.reduce(v);
    Vector<S> out(target_dim());
    for (Index a = 0; a < target_dim(); ++a) out(a) = r(free_[a]);
    return out;
  }

  [[nodiscard]] Subspace<S> project(const Subspace<S>& U) const {
    std::vector<Vector<S>> images;
    for (Index a = 0; a < U.dim(); ++a) images.push_back(project(U.vector(a)));
    return Subspace<S>::span(images, target_dim());
  }

  template <class Derived>
  [[nodiscard]] Vector<S> lift(const Eigen::MatrixBase<Derived>& w) const {
    Vector<S> out = Vector<S>::Zero(source_dim());
    for (Index a = 0; a < target_dim(); ++a) out(free_[a]) = w(a);
    return out;
  }

  /// Full preimage: lift(W) + kernel.
  [[nodiscard]] Subspace<S> preimage(const Subspace<S>& W) const {
    std::vector<Vector<S>> rows;
    for (Index a = 0; a < W.dim(); ++a) rows.push_back(lift(W.vector(a)));
    for (Index a = 0; a < kernel_.dim(); ++a) rows.push_back(kernel_.vector(a));
    return Subspace<S>::span(rows, source_dim());
  }

 private:
  Subspace<S> kernel_;
  std::vector<Index> free_;
};

template <class S>
struct Quotient {
  LieAlgebra<S> algebra;
  QuotientMap<S> map;
};

namespace detail {
template <class S>
void require_valid(const LieAlgebra<S>& L, const char* what) {
  if (!validate(L).empty()) throw std::logic_error(std::string(what) + " produced structure constants violating Jacobi");
}
}  // namespace detail

/// L/B for an ideal B; the quotient keeps the labels of retained coordinates.
template <class S>
Quotient<S> quotient(const LieAlgebra<S>& L, const Subspace<S>& B) {
  detail::require_ambient(L, B);
  if (!is_ideal(L, B)) throw DomainError("quotient: subspace is not an ideal");
  QuotientMap<S> map(B);
  const auto& keep = map.retained_coordinates();
  std::vector<std::string> labels;
  for (Index c : keep) labels.push_back(L.labels()[static_cast<std::size_t>(c)]);
  std::vector<typename LieAlgebra<S>::Bracket> brackets;
  for (Index a = 0; a < map.target_dim(); ++a)
    for (Index b = a + 1; b < map.target_dim(); ++b) {
      Vector<S> v = map.project(L.bracket_basis(keep[a], keep[b]));
      if (!is_zero_matrix(v)) brackets.push_back({a, b, std::move(v)});
    }
  Quotient<S> out{LieAlgebra<S>(std::move(labels), brackets, L.provenance()), std::move(map)};
  detail::require_valid(out.algebra, "quotient");
  return out;
}

/// The subalgebra U as a Lie algebra in the basis of U's canonical rows.
template <class S>
LieAlgebra<S> restrict(const LieAlgebra<S>& L, const Subspace<S>& U) {
  detail::require_ambient(L, U);
  if (!is_subalgebra(L, U)) throw DomainError("restrict: subspace is not a subalgebra");
  std::vector<std::string> labels;
  for (Index a = 0; a < U.dim(); ++a) {
    const Vector<S> v = U.vector(a);
    Index nonzero = 0;
    for (Index c = 0; c < v.size(); ++c) nonzero += is_zero(v(c)) ? 0 : 1;
    labels.push_back(nonzero == 1 ? L.labels()[static_cast<std::size_t>(U.pivots()[a])] : "u" + std::to_string(a));
  }
  std::vector<typename LieAlgebra<S>::Bracket> brackets;
  for (Index a = 0; a < U.dim(); ++a) {
    const Matrix<S> adu = ad(L, U.vector(a));
    for (Index b = a + 1; b < U.dim(); ++b) {
      Vector<S> c = U.coordinates(adu * U.vector(b));
      if (!is_zero_matrix(c)) brackets.push_back({a, b, std::move(c)});
    }
  }
  LieAlgebra<S> out(std::move(labels), brackets, L.provenance());
  detail::require_valid(out, "restrict");
  return out;
}

/// Coordinates of the subspace V (inside U) in U's basis.
template <class S>
Subspace<S> relative_subspace(const Subspace<S>& U, const Subspace<S>& V) {
  if (!U.contains(V)) throw DomainError("relative_subspace: V is not contained in U");
  std::vector<Vector<S>> rows;
  for (Index a = 0; a < V.dim(); ++a) rows.push_back(U.coordinates(V.vector(a)));
  return Subspace<S>::span(rows, U.dim());
}

/// The section algebra A/B for subalgebras B subset A with B an ideal of A.
template <class S>
LieAlgebra<S> section_algebra(const LieAlgebra<S>& L, const Subspace<S>& A, const Subspace<S>& B) {
  const LieAlgebra<S> upper = restrict(L, A);
  return quotient(upper, relative_subspace(A, B)).algebra;
}

/// L1 (+) L2 with L1's basis first.
template <class S>
LieAlgebra<S> direct_sum(const LieAlgebra<S>& a, const LieAlgebra<S>& b) {
  const Index n = a.dim() + b.dim();
  std::vector<std::string> labels = a.labels();
  for (const auto& l : b.labels()) {
    std::string name = l;
    while (std::find(labels.begin(), labels.end(), name) != labels.end()) name += "'";
    labels.push_back(name);
  }
  std::vector<typename LieAlgebra<S>::Bracket> brackets;
  for (const auto& br : a.brackets()) {
    Vector<S> v = Vector<S>::Zero(n);
    v.head(a.dim()) = br.value;
    brackets.push_back({br.i, br.j, std::move(v)});
  }
  for (const auto& br : b.brackets()) {
    Vector<S> v = Vector<S>::Zero(n);
    v.tail(b.dim()) = br.value;
    brackets.push_back({br.i + a.dim(), br.j + a.dim(), std::move(v)});
  }
  return LieAlgebra<S>(std::move(labels), brackets);
}

}  // namespace csec
