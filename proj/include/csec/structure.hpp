#pragma once

// Structural invariants: derived and lower central series, Killing form,
// Fitting decomposition, nil test, centroid and a simplicity certificate.

#include "csec/lie_algebra.hpp"

#include <boost/multiprecision/integer.hpp>

namespace csec {

enum class SeriesKind { derived, lower_central };

template <class S>
struct SeriesReport {
  SeriesKind kind = SeriesKind::derived;
  std::vector<Subspace<S>> terms;  ///< terms[0] = L, strictly decreasing
  bool stabilized = false;         ///< stopped at a nonzero term instead of reaching 0

  [[nodiscard]] const Subspace<S>& last() const { return terms.back(); }
  [[nodiscard]] std::vector<Index> dims() const {
    std::vector<Index> out;
    for (const auto& t : terms) out.push_back(t.dim());
    return out;
  }
};

template <class S>
SeriesReport<S> series(const LieAlgebra<S>& L, SeriesKind kind) {
  SeriesReport<S> out{kind, {Subspace<S>::full(L.dim())}, false};
  const Subspace<S> whole = out.terms.front();
  while (!out.last().is_zero()) {
    const Subspace<S>& cur = out.last();
    Subspace<S> next = kind == SeriesKind::derived ? subspace_bracket(L, cur, cur) : subspace_bracket(L, whole, cur);
    if (next.dim() == cur.dim()) {
      out.stabilized = true;
      break;
    }
    out.terms.push_back(std::move(next));
  }
  return out;
}

template <class S>
bool is_solvable(const LieAlgebra<S>& L) {
  return series(L, SeriesKind::derived).last().is_zero();
}

template <class S>
bool is_nilpotent(const LieAlgebra<S>& L) {
  return series(L, SeriesKind::lower_central).last().is_zero();
}

template <class S>
bool is_abelian(const LieAlgebra<S>& L) {
  for (Index i = 0; i < L.dim(); ++i)
    if (!is_zero_matrix(L.ad_basis(i))) return false;
  return true;
}

template <class S>
Subspace<S> derived_algebra(const LieAlgebra<S>& L) {
  const auto full = Subspace<S>::full(L.dim());
  return subspace_bracket(L, full, full);
}

/// kappa(e_i, e_j) = trace(ad e_i ad e_j).
template <class S>
Matrix<S> killing_form(const LieAlgebra<S>& L) {
  const Index n = L.dim();
  Matrix<S> k(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = i; j < n; ++j) {
      S t(0);
      // trace(A B) = sum_{a,b} A(a,b) B(b,a)
      for (Index a = 0; a < n; ++a)
        for (Index b = 0; b < n; ++b) t += L.ad_basis(i)(a, b) * L.ad_basis(j)(b, a);
      k(i, j) = t;
      k(j, i) = t;
    }
  return k;
}

template <class Derived>
Matrix<typename Derived::Scalar> matrix_power(const Eigen::MatrixBase<Derived>& a, Index e) {
  using S = typename Derived::Scalar;
  Matrix<S> out = Matrix<S>::Identity(a.rows(), a.cols());
  for (Index i = 0; i < e; ++i) out = out * a;
  return out;
}

/// Smallest k >= 1 with a^k = 0, or 0 if a is not nilpotent.
template <class Derived>
Index nilpotency_index(const Eigen::MatrixBase<Derived>& a) {
  using S = typename Derived::Scalar;
  Matrix<S> p = a;
  for (Index k = 1; k <= std::max<Index>(a.rows(), 1); ++k) {
    if (is_zero_matrix(p)) return k;
    p = p * a;
  }
  return 0;
}

template <class S>
struct FittingDecomposition {
  Subspace<S> null_component;  ///< L0 = ker (ad a)^n
  Subspace<S> one_component;   ///< L1 = im (ad a)^n
};

template <class S, class Derived>
FittingDecomposition<S> fitting_decomposition(const LieAlgebra<S>& L, const Eigen::MatrixBase<Derived>& a) {
  const Matrix<S> t = matrix_power(ad(L, a), L.dim());
  return {kernel(t), column_space(t)};
}

namespace detail {

template <class S>
Vector<S> flatten(const Matrix<S>& m) {
  return Eigen::Map<const Vector<S>>(m.data(), m.size());
}

template <class S>
Matrix<S> unflatten(const Vector<S>& v, Index n) {
  return Eigen::Map<const Matrix<S>>(v.data(), n, n);
}

}  // namespace detail

/// True iff ad u is nilpotent on L for every u in the subalgebra U.
///
/// Decided on the associative envelope of ad U: since ad U is closed under
/// commutators, all its elements are nilpotent exactly when the envelope is
/// a nilpotent algebra, and that happens iff words of length dim L in the
/// generators ad u_i all vanish.
template <class S>
bool is_nil_subalgebra(const LieAlgebra<S>& L, const Subspace<S>& U) {
  if (!is_subalgebra(L, U)) throw DomainError("is_nil_subalgebra: subspace is not a subalgebra");
  const Index n = L.dim();
  std::vector<Matrix<S>> gens;
  for (Index a = 0; a < U.dim(); ++a) gens.push_back(ad(L, U.vector(a)));
  if (gens.empty() || n == 0) return true;

  std::vector<Vector<S>> flat;
  for (const auto& g : gens) flat.push_back(detail::flatten(g));
  Subspace<S> words = Subspace<S>::span(flat, n * n);  // words of length exactly m
  for (Index m = 1; m < n; ++m) {
    if (words.is_zero()) return true;
    std::vector<Vector<S>> next;
    for (Index w = 0; w < words.dim(); ++w) {
      const Matrix<S> wm = detail::unflatten(words.vector(w), n);
      for (const auto& g : gens) next.push_back(detail::flatten(Matrix<S>(wm * g)));
    }
    words = Subspace<S>::span(next, n * n);
  }
  return words.is_zero();
}

/// Basis of the derivation algebra {D : D[x, y] = [Dx, y] + [x, Dy]}.
template <class S>
std::vector<Matrix<S>> derivations(const LieAlgebra<S>& L) {
  const Index n = L.dim();
  if (n == 0) return {};
  // unknowns D(r, c) at column-major position c * n + r
  Matrix<S> system = Matrix<S>::Zero(n * n * n, n * n);
  Index row = 0;
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) {
      const Vector<S> bij = L.bracket_basis(i, j);
      for (Index k = 0; k < n; ++k, ++row)
        for (Index m = 0; m < n; ++m) {
          system(row, m * n + k) += bij(m);                        // (D [e_i, e_j])_k
          system(row, i * n + m) -= L.bracket_basis(m, j)(k);      // [D e_i, e_j]_k
          system(row, j * n + m) -= L.bracket_basis(i, m)(k);      // [e_i, D e_j]_k
        }
    }
  const Subspace<S> solutions = kernel(system);
  std::vector<Matrix<S>> out;
  for (Index a = 0; a < solutions.dim(); ++a) out.push_back(detail::unflatten(solutions.vector(a), n));
  return out;
}

/// Basis of the centroid {T : T ad x = ad x T for all x}.
template <class S>
std::vector<Matrix<S>> centroid(const LieAlgebra<S>& L) {
  const Index n = L.dim();
  if (n == 0) return {};
  // vec(T A - A T) = (A^T (x) I - I (x) A) vec(T), column-major vec
  Matrix<S> system = Matrix<S>::Zero(n * n * n, n * n);
  for (Index k = 0; k < n; ++k) {
    const Matrix<S>& a = L.ad_basis(k);
    auto block = system.middleRows(k * n * n, n * n);
    for (Index p = 0; p < n; ++p)
      for (Index q = 0; q < n; ++q)
        for (Index r = 0; r < n; ++r) {
          // (A^T (x) I): entry ((q, r), (p, r)) = A(p, q)
          block(q * n + r, p * n + r) += a(p, q);
          // (I (x) A): entry ((q, r), (q, p)) = A(r, p)
          block(q * n + r, q * n + p) -= a(r, p);
        }
  }
  const Subspace<S> solutions = kernel(system);
  std::vector<Matrix<S>> out;
  for (Index a = 0; a < solutions.dim(); ++a) out.push_back(detail::unflatten(solutions.vector(a), n));
  return out;
}

/// Monic minimal polynomial of a square matrix, lowest coefficient first.
template <class Derived>
std::vector<typename Derived::Scalar> minimal_polynomial(const Eigen::MatrixBase<Derived>& a) {
  using S = typename Derived::Scalar;
  const Index n = a.rows();
  std::vector<Matrix<S>> powers{Matrix<S>::Identity(n, n)};
  while (true) {
    const Matrix<S> next = powers.back() * a;
    // solve next = sum c_i powers[i]
    const Index m = static_cast<Index>(powers.size());
    Matrix<S> system(n * n, m + 1);
    for (Index i = 0; i < m; ++i) system.col(i) = detail::flatten(powers[static_cast<std::size_t>(i)]);
    system.col(m) = detail::flatten(next);
    const Subspace<S> rel = kernel(system);
    for (Index r = 0; r < rel.dim(); ++r) {
      const Vector<S> v = rel.vector(r);
      if (is_zero(v(m))) continue;
      std::vector<S> poly(static_cast<std::size_t>(m + 1));
      const S lead = v(m).inverse();
      for (Index i = 0; i <= m; ++i) poly[static_cast<std::size_t>(i)] = v(i) * lead;
      return poly;
    }
    powers.push_back(next);
  }
}

/// Rational-root test for a polynomial with rational coefficients (lowest
/// first). Returns nullopt when the integer coefficients are too large to
/// enumerate divisors.
inline std::optional<bool> has_rational_root(const std::vector<Rational>& poly) {
  using Int = Rational::Integer;
  if (poly.size() <= 1) return false;
  if (poly.front().is_zero()) return true;
  Int lcm = 1;
  for (const auto& c : poly) lcm = boost::multiprecision::lcm(lcm, c.denominator());
  std::vector<Int> coeffs;
  for (const auto& c : poly) coeffs.push_back(c.numerator() * (lcm / c.denominator()));
  const Int a0 = boost::multiprecision::abs(coeffs.front());
  const Int an = boost::multiprecision::abs(coeffs.back());
  const Int limit = 1'000'000;
  if (a0 > limit || an > limit) return std::nullopt;
  auto divisors = [](Int v) {
    std::vector<Int> out;
    for (Int d = 1; d <= v; ++d)
      if (v % d == 0) out.push_back(d);
    return out;
  };
  for (const Int& p : divisors(a0))
    for (const Int& q : divisors(an))
      for (int sign : {1, -1}) {
        const Rational x(Int(p * sign), q);
        Rational value(0);
        for (auto it = poly.rbegin(); it != poly.rend(); ++it) value = value * x + *it;
        if (value.is_zero()) return true;
      }
  return false;
}

struct SimplicityCertificate {
  bool killing_nondegenerate = false;
  Index centroid_dim = 0;
  bool centroid_is_field = false;
  bool certified = false;
  std::string reason;
};

/// Sufficient test for simplicity over Q: a nondegenerate Killing form makes
/// L semisimple, a direct sum of simple ideals whose centroids are fields;
/// the centroid of L is then their product, so L is simple iff its centroid
/// is a field. The field property is certified for centroid dimension 1, or
/// dimension 2-3 when some basis element has a full-degree minimal polynomial
/// with no rational root.
template <class S>
SimplicityCertificate certify_simple_char0(const LieAlgebra<S>& L) {
  SimplicityCertificate cert;
  if constexpr (field_traits<S>::characteristic != 0) {
    cert.reason = "Killing-form certificate applies in characteristic 0 only";
    return cert;
  } else {
    if (L.dim() == 0) {
      cert.reason = "zero algebra";
      return cert;
    }
    cert.killing_nondegenerate = rank(killing_form(L)) == L.dim();
    const auto gamma = centroid(L);
    cert.centroid_dim = static_cast<Index>(gamma.size());
    if (!cert.killing_nondegenerate) {
      cert.reason = "Killing form is degenerate";
      return cert;
    }
    if (cert.centroid_dim == 1) {
      cert.centroid_is_field = true;
    } else if (cert.centroid_dim <= 3) {
      for (const auto& g : gamma) {
        const auto poly = minimal_polynomial(g);
        if (static_cast<Index>(poly.size()) - 1 != cert.centroid_dim) continue;
        if (auto root = has_rational_root(poly); root && !*root) {
          cert.centroid_is_field = true;
          break;
        }
      }
    }
    cert.certified = cert.centroid_is_field;
    cert.reason = cert.certified ? "nondegenerate Killing form and centroid is a field of dimension " +
                                       std::to_string(cert.centroid_dim)
                                 : "centroid of dimension " + std::to_string(cert.centroid_dim) +
                                       " not certified to be a field";
    return cert;
  }
}

}  // namespace csec
