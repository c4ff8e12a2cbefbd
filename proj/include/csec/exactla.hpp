#pragma once

// Exact linear algebra over Q and GF(p): row reduction, kernels, canonical
// subspaces and exhaustive subspace enumeration.

#include "csec/field.hpp"

#include <Eigen/Core>

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <vector>

namespace csec {

using Index = Eigen::Index;

template <class S>
using Matrix = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
template <class S>
using Vector = Eigen::Matrix<S, Eigen::Dynamic, 1>;

/// Enumeration request larger than the configured subspace budget.
class BudgetExceeded : public CapabilityError {
 public:
  using CapabilityError::CapabilityError;
};

inline constexpr std::uint64_t kDefaultSubspaceBudget = 1'000'000;

template <class Derived>
bool is_zero_matrix(const Eigen::MatrixBase<Derived>& m) {
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i)
      if (!is_zero(m.coeff(i, j))) return false;
  return true;
}

template <class S>
Vector<S> unit_vector(Index n, Index i) {
  Vector<S> v = Vector<S>::Zero(n);
  v(i) = S(1);
  return v;
}

template <class S>
struct RrefResult {
  Matrix<S> matrix;  ///< same shape as the input, zero rows at the bottom
  Index rank = 0;
  std::vector<Index> pivots;
};

/// Reduced row-echelon form: pivots are 1 and are the only nonzero entries
/// in their columns.
template <class Derived>
RrefResult<typename Derived::Scalar> rref(const Eigen::MatrixBase<Derived>& input) {
  using S = typename Derived::Scalar;
  RrefResult<S> out;
  Matrix<S>& m = out.matrix;
  m = input;
  for (Index c = 0; c < m.cols() && out.rank < m.rows(); ++c) {
    Index r = out.rank;
    while (r < m.rows() && is_zero(m(r, c))) ++r;
    if (r == m.rows()) continue;
    if (r != out.rank) m.row(r).swap(m.row(out.rank));
    const S inv = m(out.rank, c).inverse();
    m.row(out.rank) *= inv;
    for (Index i = 0; i < m.rows(); ++i) {
      if (i == out.rank || is_zero(m(i, c))) continue;
      const S f = m(i, c);
      m.row(i) -= f * m.row(out.rank);
    }
    out.pivots.push_back(c);
    ++out.rank;
  }
  return out;
}

template <class Derived>
Index rank(const Eigen::MatrixBase<Derived>& m) {
  return rref(m).rank;
}

/// Subspace of F^n stored as the RREF of a spanning set (no zero rows).
/// Equal subspaces have identical basis matrices.
template <class S>
class Subspace {
 public:
  using Scalar = S;

  Subspace() = default;
  explicit Subspace(Index ambient) : ambient_(ambient), basis_(0, ambient) {}

  static Subspace zero(Index n) { return Subspace(n); }
  static Subspace full(Index n) { return span(Matrix<S>::Identity(n, n)); }

  /// Row space of `rows`.
  template <class Derived>
  static Subspace span(const Eigen::MatrixBase<Derived>& rows) {
    auto r = rref(rows);
    Subspace s(rows.cols());
    s.basis_ = r.matrix.topRows(r.rank);
    s.pivots_ = std::move(r.pivots);
    return s;
  }

  static Subspace span(const std::vector<Vector<S>>& vectors, Index ambient) {
    Matrix<S> rows(static_cast<Index>(vectors.size()), ambient);
    for (std::size_t i = 0; i < vectors.size(); ++i) rows.row(static_cast<Index>(i)) = vectors[i].transpose();
    return span(rows);
  }

  /// Wraps a matrix already known to be in RREF with no zero rows.
  static Subspace from_canonical(Matrix<S> basis, std::vector<Index> pivots) {
    Subspace s(basis.cols());
    s.basis_ = std::move(basis);
    s.pivots_ = std::move(pivots);
    return s;
  }

  [[nodiscard]] Index ambient_dim() const { return ambient_; }
  [[nodiscard]] Index dim() const { return basis_.rows(); }
  [[nodiscard]] Index codim() const { return ambient_ - dim(); }
  [[nodiscard]] bool is_zero() const { return dim() == 0; }
  [[nodiscard]] bool is_full() const { return dim() == ambient_; }
  [[nodiscard]] const Matrix<S>& basis() const { return basis_; }
  [[nodiscard]] const std::vector<Index>& pivots() const { return pivots_; }
  [[nodiscard]] Vector<S> vector(Index i) const { return basis_.row(i).transpose(); }

  /// v minus its pivot-column component; zero iff v lies in the subspace.
  template <class Derived>
  [[nodiscard]] Vector<S> reduce(const Eigen::MatrixBase<Derived>& v) const {
    Vector<S> r = v;
    for (Index k = 0; k < dim(); ++k) {
      const S c = r(pivots_[k]);
      if (!csec::is_zero(c)) r -= c * basis_.row(k).transpose();
    }
    return r;
  }

  template <class Derived>
  [[nodiscard]] bool contains(const Eigen::MatrixBase<Derived>& v) const {
    check_ambient(v.size());
    return is_zero_matrix(reduce(v));
  }

  [[nodiscard]] bool contains(const Subspace& other) const {
    check_ambient(other.ambient_dim());
    if (other.dim() > dim()) return false;
    for (Index i = 0; i < other.dim(); ++i)
      if (!is_zero_matrix(reduce(other.basis_.row(i).transpose()))) return false;
    return true;
  }

  /// Coordinates of a member vector with respect to basis().
  template <class Derived>
  [[nodiscard]] Vector<S> coordinates(const Eigen::MatrixBase<Derived>& v) const {
    Vector<S> c(dim());
    for (Index k = 0; k < dim(); ++k) c(k) = v(pivots_[k]);
    return c;
  }

  /// Rows w with w.u = 0 for every member u; x is a member iff annihilator()*x = 0.
  [[nodiscard]] Matrix<S> annihilator() const;

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.basis_.rows() == b.basis_.rows() && a.basis_ == b.basis_;
  }

  /// Ambient, then dimension, then row-major entries of the canonical basis.
  friend bool operator<(const Subspace& a, const Subspace& b) {
    if (a.ambient_ != b.ambient_) return a.ambient_ < b.ambient_;
    if (a.dim() != b.dim()) return a.dim() < b.dim();
    for (Index i = 0; i < a.dim(); ++i)
      for (Index j = 0; j < a.ambient_; ++j)
        if (a.basis_(i, j) != b.basis_(i, j)) return a.basis_(i, j) < b.basis_(i, j);
    return false;
  }

 private:
  void check_ambient(Index n) const {
    if (n != ambient_)
      throw DomainError("ambient dimension mismatch: " + std::to_string(n) + " vs " + std::to_string(ambient_));
  }

  Index ambient_ = 0;
  Matrix<S> basis_;
  std::vector<Index> pivots_;
};

/// Null space {v : m v = 0}.
template <class Derived>
Subspace<typename Derived::Scalar> kernel(const Eigen::MatrixBase<Derived>& m) {
  using S = typename Derived::Scalar;
  const auto r = rref(m);
  const Index n = m.cols();
  std::vector<bool> is_pivot(static_cast<std::size_t>(n), false);
  for (Index p : r.pivots) is_pivot[static_cast<std::size_t>(p)] = true;
  Matrix<S> rows = Matrix<S>::Zero(n - r.rank, n);
  Index row = 0;
  for (Index f = 0; f < n; ++f) {
    if (is_pivot[static_cast<std::size_t>(f)]) continue;
    rows(row, f) = S(1);
    for (Index k = 0; k < r.rank; ++k) rows(row, r.pivots[k]) = -r.matrix(k, f);
    ++row;
  }
  return Subspace<S>::span(rows);
}

template <class S>
Matrix<S> Subspace<S>::annihilator() const {
  if (dim() == 0) return Matrix<S>::Identity(ambient_, ambient_);
  return kernel(basis_).basis();
}

namespace detail {
template <class S>
void require_same_ambient(const Subspace<S>& u, const Subspace<S>& v) {
  if (u.ambient_dim() != v.ambient_dim())
    throw DomainError("subspaces live in different ambient spaces (" + std::to_string(u.ambient_dim()) + " vs " +
                      std::to_string(v.ambient_dim()) + ")");
}
}  // namespace detail

template <class S>
Subspace<S> sum(const Subspace<S>& u, const Subspace<S>& v) {
  detail::require_same_ambient(u, v);
  Matrix<S> rows(u.dim() + v.dim(), u.ambient_dim());
  rows << u.basis(), v.basis();
  return Subspace<S>::span(rows);
}

template <class S>
Subspace<S> intersect(const Subspace<S>& u, const Subspace<S>& v) {
  detail::require_same_ambient(u, v);
  if (u.contains(v)) return v;
  if (v.contains(u)) return u;
  const Matrix<S> au = u.annihilator();
  const Matrix<S> av = v.annihilator();
  Matrix<S> rows(au.rows() + av.rows(), u.ambient_dim());
  rows << au, av;
  return kernel(rows);
}

/// {a u : u in U} for a square or rectangular map a acting on column vectors.
template <class Derived, class S = typename Derived::Scalar>
Subspace<S> image(const Eigen::MatrixBase<Derived>& a, const Subspace<S>& u) {
  if (u.dim() == 0) return Subspace<S>::zero(a.rows());
  return Subspace<S>::span(Matrix<S>(u.basis() * a.transpose()));
}

/// Column space of a.
template <class Derived>
Subspace<typename Derived::Scalar> column_space(const Eigen::MatrixBase<Derived>& a) {
  return Subspace<typename Derived::Scalar>::span(a.transpose());
}

/// {x : a x in U}.
template <class Derived, class S = typename Derived::Scalar>
Subspace<S> preimage(const Eigen::MatrixBase<Derived>& a, const Subspace<S>& u) {
  return kernel(Matrix<S>(u.annihilator() * a));
}

/// Number of k-dimensional subspaces of GF(q)^n, saturating at UINT64_MAX.
inline std::uint64_t gaussian_binomial(int n, int k, int q) {
  if (k < 0 || k > n) return 0;
  using Big = boost::multiprecision::cpp_int;
  Big result = 1;
  for (int i = 0; i < k; ++i) {
    Big top = boost::multiprecision::pow(Big(q), static_cast<unsigned>(n - i)) - 1;
    Big bottom = boost::multiprecision::pow(Big(q), static_cast<unsigned>(i + 1)) - 1;
    result = result * top / bottom;
  }
  if (result > std::numeric_limits<std::uint64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
  return static_cast<std::uint64_t>(result);
}

inline std::uint64_t count_all_subspaces(int n, int q) {
  std::uint64_t total = 0;
  for (int k = 0; k <= n; ++k) {
    const auto c = gaussian_binomial(n, k, q);
    if (c > std::numeric_limits<std::uint64_t>::max() - total) return std::numeric_limits<std::uint64_t>::max();
    total += c;
  }
  return total;
}

/// Calls fn(Subspace) once for each dim-dimensional subspace of GF(p)^n.
/// Visit order is by pivot set, then by free entries; use
/// enumerate_subspaces for canonical lexicographic order.
template <FiniteField S, class Fn>
void for_each_subspace(Index n, Index dim, Fn&& fn, std::uint64_t budget = kDefaultSubspaceBudget) {
  constexpr int q = field_traits<S>::order;
  if (dim < 0 || dim > n) throw DomainError("subspace dimension out of range");
  const auto count = gaussian_binomial(static_cast<int>(n), static_cast<int>(dim), q);
  if (count > budget)
    throw BudgetExceeded("enumerating " + std::to_string(dim) + "-dim subspaces of GF(" + std::to_string(q) + ")^" +
                         std::to_string(n) + " needs " + std::to_string(count) + " > budget " + std::to_string(budget));

  std::vector<Index> piv(static_cast<std::size_t>(dim));
  std::iota(piv.begin(), piv.end(), 0);
  while (true) {
    std::vector<bool> is_pivot(static_cast<std::size_t>(n), false);
    for (Index p : piv) is_pivot[static_cast<std::size_t>(p)] = true;
    std::vector<std::pair<Index, Index>> free;
    for (Index r = 0; r < dim; ++r)
      for (Index c = piv[r] + 1; c < n; ++c)
        if (!is_pivot[static_cast<std::size_t>(c)]) free.emplace_back(r, c);

    Matrix<S> basis = Matrix<S>::Zero(dim, n);
    for (Index r = 0; r < dim; ++r) basis(r, piv[r]) = S(1);
    std::vector<int> digits(free.size(), 0);
    while (true) {
      fn(Subspace<S>::from_canonical(basis, piv));
      std::size_t pos = 0;
      while (pos < digits.size()) {
        auto [r, c] = free[pos];
        if (++digits[pos] < q) {
          basis(r, c) = field_traits<S>::element(digits[pos]);
          break;
        }
        digits[pos] = 0;
        basis(r, c) = S(0);
        ++pos;
      }
      if (pos == digits.size()) break;
    }

    // next combination of pivot columns
    Index i = dim - 1;
    while (i >= 0 && piv[i] == n - dim + i) --i;
    if (i < 0) break;
    ++piv[i];
    for (Index j = i + 1; j < dim; ++j) piv[j] = piv[j - 1] + 1;
  }
}

/// All dim-dimensional subspaces of GF(p)^n in lexicographic order of their
/// canonical basis matrices.
template <FiniteField S>
std::vector<Subspace<S>> enumerate_subspaces(Index n, Index dim, std::uint64_t budget = kDefaultSubspaceBudget) {
  std::vector<Subspace<S>> out;
  for_each_subspace<S>(n, dim, [&](Subspace<S> s) { out.push_back(std::move(s)); }, budget);
  std::sort(out.begin(), out.end());
  return out;
}

/// Every subspace of GF(p)^n, by dimension then lexicographically.
template <FiniteField S>
std::vector<Subspace<S>> enumerate_all_subspaces(Index n, std::uint64_t budget = kDefaultSubspaceBudget) {
  const auto total = count_all_subspaces(static_cast<int>(n), field_traits<S>::order);
  if (total > budget)
    throw BudgetExceeded("enumerating all subspaces of GF(" + std::to_string(field_traits<S>::order) + ")^" +
                         std::to_string(n) + " needs " + std::to_string(total) + " > budget " + std::to_string(budget));
  std::vector<Subspace<S>> out;
  for (Index d = 0; d <= n; ++d) {
    auto part = enumerate_subspaces<S>(n, d, budget);
    out.insert(out.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
  }
  return out;
}

/// Calls fn(v) for every vector of GF(p)^n (p^n of them), zero first.
template <FiniteField S, class Fn>
void for_each_vector(Index n, Fn&& fn) {
  constexpr int q = field_traits<S>::order;
  Vector<S> v = Vector<S>::Zero(n);
  std::vector<int> digits(static_cast<std::size_t>(n), 0);
  while (true) {
    fn(static_cast<const Vector<S>&>(v));
    Index pos = 0;
    while (pos < n) {
      if (++digits[pos] < q) {
        v(pos) = field_traits<S>::element(digits[pos]);
        break;
      }
      digits[pos] = 0;
      v(pos) = S(0);
      ++pos;
    }
    if (pos == n) break;
  }
}

/// One representative per 1-dim subspace of GF(p)^n: last nonzero entry is 1.
template <FiniteField S, class Fn>
void for_each_projective_point(Index n, Fn&& fn) {
  for_each_vector<S>(n, [&](const Vector<S>& v) {
    Index last = n - 1;
    while (last >= 0 && is_zero(v(last))) --last;
    if (last >= 0 && v(last) == S(1)) fn(v);
  });
}

}  // namespace csec
