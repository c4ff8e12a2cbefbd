#pragma once

// Named Lie algebras with declared maximal subalgebras and properties, and
// the matrix-closure builder they share with the corpus generator.

#include "csec/maximal.hpp"

#include <charconv>

namespace csec {

/// Lie subalgebra of gl_m generated by `generators`: the span is closed under
/// commutators and re-expressed in structure constants. The first labels
/// name the linearly independent generators in order; later elements are
/// called c0, c1, ... Returns nullopt once the dimension exceeds max_dim
/// (max_dim < 0: unbounded).
template <class S>
std::optional<LieAlgebra<S>> from_matrices(const std::vector<Matrix<S>>& generators,
                                           const std::vector<std::string>& labels = {}, Index max_dim = -1,
                                           std::string provenance = {}) {
  if (generators.empty()) return LieAlgebra<S>({}, {}, std::move(provenance));
  const Index m = generators.front().rows();
  std::vector<Matrix<S>> basis;
  std::vector<std::string> names;
  Matrix<S> reduced(0, m * m);  // RREF of flattened basis, for membership
  std::vector<Index> pivots;
  auto try_add = [&](const Matrix<S>& x, std::string name) {
    Vector<S> r = detail::flatten(x);
    for (Index k = 0; k < reduced.rows(); ++k) {
      const S c = r(pivots[k]);
      if (!is_zero(c)) r -= c * reduced.row(k).transpose();
    }
    if (is_zero_matrix(r)) return false;
    Matrix<S> rows(reduced.rows() + 1, m * m);
    rows << reduced, r.transpose();
    auto rr = rref(rows);
    reduced = rr.matrix;
    pivots = rr.pivots;
    basis.push_back(x);
    names.push_back(std::move(name));
    return true;
  };
  for (std::size_t g = 0; g < generators.size(); ++g) {
    if (generators[g].rows() != m || generators[g].cols() != m) throw DomainError("from_matrices: shape mismatch");
    try_add(generators[g], g < labels.size() ? labels[g] : "c" + std::to_string(names.size()));
    if (max_dim >= 0 && static_cast<Index>(basis.size()) > max_dim) return std::nullopt;
  }
  int extra = 0;
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) {
      const Matrix<S> c = basis[i] * basis[j] - basis[j] * basis[i];
      if (try_add(c, "c" + std::to_string(extra))) {
        ++extra;
        if (max_dim >= 0 && static_cast<Index>(basis.size()) > max_dim) return std::nullopt;
      }
    }

  // coordinates: solve [flat(b_0) ... flat(b_{d-1})] x = flat(target)
  const Index d = static_cast<Index>(basis.size());
  Matrix<S> columns(m * m, d);
  for (Index a = 0; a < d; ++a) columns.col(a) = detail::flatten(basis[static_cast<std::size_t>(a)]);
  auto coords = [&](const Matrix<S>& target) {
    Matrix<S> aug(m * m, d + 1);
    aug << columns, detail::flatten(target);
    const auto r = rref(aug);
    if (r.rank != d) throw std::logic_error("from_matrices: commutator left the closed span");
    Vector<S> x(d);
    for (Index a = 0; a < d; ++a) x(a) = r.matrix(a, d);
    return x;
  };
  std::vector<typename LieAlgebra<S>::Bracket> brackets;
  for (Index i = 0; i < d; ++i)
    for (Index j = i + 1; j < d; ++j) {
      const auto& x = basis[static_cast<std::size_t>(i)];
      const auto& y = basis[static_cast<std::size_t>(j)];
      Vector<S> v = coords(Matrix<S>(x * y - y * x));
      if (!is_zero_matrix(v)) brackets.push_back({i, j, std::move(v)});
    }
  return LieAlgebra<S>(std::move(names), brackets, std::move(provenance));
}

/// The split extension F t (+) N with [t, x] = D x for a derivation D of N;
/// t is the last basis vector. N is an ideal of codimension 1, and every
/// algebra with an ideal of codimension 1 arises this way.
template <class S>
LieAlgebra<S> derivation_extension(const LieAlgebra<S>& N, const Matrix<S>& D, std::string provenance = {}) {
  const Index n = N.dim();
  std::vector<typename LieAlgebra<S>::Bracket> brackets;
  for (const auto& b : N.brackets()) {
    Vector<S> v = Vector<S>::Zero(n + 1);
    v.head(n) = b.value;
    brackets.push_back({b.i, b.j, std::move(v)});
  }
  for (Index j = 0; j < n; ++j) {
    Vector<S> v = Vector<S>::Zero(n + 1);
    v.head(n) = -D.col(j);  // [e_j, t] = -D e_j
    if (!is_zero_matrix(v)) brackets.push_back({j, n, std::move(v)});
  }
  std::vector<std::string> labels = N.labels();
  std::string t = "t";
  while (std::find(labels.begin(), labels.end(), t) != labels.end()) t += "'";
  labels.push_back(t);
  LieAlgebra<S> out(std::move(labels), brackets, std::move(provenance));
  detail::require_valid(out, "derivation_extension");
  return out;
}

enum class Property { simple, solvable, nilpotent, semisimple, minimal_nonabelian };

inline const char* to_string(Property p) {
  switch (p) {
    case Property::simple: return "simple";
    case Property::solvable: return "solvable";
    case Property::nilpotent: return "nilpotent";
    case Property::semisimple: return "semisimple";
    case Property::minimal_nonabelian: return "minimal_nonabelian";
  }
  return "?";
}

template <class S>
struct CatalogEntry {
  std::string name;
  LieAlgebra<S> algebra;
  std::vector<Subspace<S>> declared_maximals;
  std::set<Property> declared_properties;
  std::string citation;
};

/// Decides a property where a procedure exists: structure over any field,
/// simplicity and minimal-nonabelian exhaustively over GF(p), simplicity
/// over Q by the Killing/centroid certificate (nullopt when uncertified).
template <class S>
std::optional<bool> decide_property(const LieAlgebra<S>& L, Property p) {
  switch (p) {
    case Property::solvable: return is_solvable(L);
    case Property::nilpotent: return is_nilpotent(L);
    case Property::semisimple: return radical(L).is_zero() && L.dim() > 0;
    case Property::simple:
      if (is_abelian(L)) return false;
      if constexpr (FiniteField<S>) {
        const auto lat = ideal_lattice(L);
        return lat->ideals.size() == 2;
      } else {
        if (certify_simple_char0(L).certified) return true;
        return std::nullopt;
      }
    case Property::minimal_nonabelian:
      if (is_abelian(L)) return false;
      if constexpr (FiniteField<S>) {
        for (const auto& m : maximal_subalgebras(L))
          if (!is_abelian_subspace(L, m)) return false;
        return true;
      } else {
        return std::nullopt;
      }
  }
  return std::nullopt;
}

namespace detail {

template <class S>
CatalogEntry<S> checked(CatalogEntry<S> e) {
  if (!validate(e.algebra).empty()) throw std::logic_error("catalog entry " + e.name + " violates Jacobi");
  if (e.algebra.provenance().empty()) e.algebra.set_provenance("catalog:" + e.name);
  for (const auto& m : e.declared_maximals)
    if (m.is_full() || !is_subalgebra(e.algebra, m))
      throw std::logic_error("catalog entry " + e.name + ": declared maximal is not a proper subalgebra");
  for (Property p : e.declared_properties)
    if (auto v = decide_property(e.algebra, p); v && !*v)
      throw std::logic_error("catalog entry " + e.name + ": declared property " + to_string(p) + " fails");
  return e;
}

template <class S>
Subspace<S> coordinate_span(Index n, std::initializer_list<Index> coords) {
  std::vector<Vector<S>> rows;
  for (Index c : coords) rows.push_back(unit_vector<S>(n, c));
  return Subspace<S>::span(rows, n);
}

template <class S>
Vector<S> vec(std::initializer_list<int> entries) {
  Vector<S> v(static_cast<Index>(entries.size()));
  Index i = 0;
  for (int x : entries) v(i++) = S(x);
  return v;
}

}  // namespace detail

template <class S>
CatalogEntry<S> abelian(Index n) {
  if (n < 0) throw DomainError("abelian: dimension must be non-negative");
  CatalogEntry<S> e{"abelian(" + std::to_string(n) + ")", LieAlgebra<S>::with_default_labels(n, {}), {}, {}, ""};
  e.declared_properties = {Property::solvable, Property::nilpotent};
  for (Index i = 0; i < n && n > 1; ++i) {
    std::vector<Vector<S>> rows;
    for (Index j = 0; j < n; ++j)
      if (j != i) rows.push_back(unit_vector<S>(n, j));
    e.declared_maximals.push_back(Subspace<S>::span(rows, n));
  }
  if (n == 1) e.declared_maximals.push_back(Subspace<S>::zero(1));
  e.citation = "abelian Lie algebra";
  return detail::checked(std::move(e));
}

/// Two-dimensional nonabelian algebra, [x, y] = x.
template <class S>
CatalogEntry<S> r2() {
  CatalogEntry<S> e{"r2", LieAlgebra<S>({"x", "y"}, {{0, 1, detail::vec<S>({1, 0})}}), {}, {}, ""};
  e.declared_maximals = {detail::coordinate_span<S>(2, {0}), detail::coordinate_span<S>(2, {1})};
  e.declared_properties = {Property::solvable, Property::minimal_nonabelian};
  e.citation = "nonabelian 2-dimensional algebra";
  return detail::checked(std::move(e));
}

/// Heisenberg algebra, [x, y] = z.
template <class S>
CatalogEntry<S> heisenberg() {
  CatalogEntry<S> e{"heisenberg", LieAlgebra<S>({"x", "y", "z"}, {{0, 1, detail::vec<S>({0, 0, 1})}}), {}, {}, ""};
  e.declared_maximals = {detail::coordinate_span<S>(3, {0, 2}), detail::coordinate_span<S>(3, {1, 2})};
  e.declared_properties = {Property::solvable, Property::nilpotent, Property::minimal_nonabelian};
  e.citation = "3-dimensional Heisenberg algebra";
  return detail::checked(std::move(e));
}

/// Upper triangular n x n matrices, basis E_ij (i <= j) in row-major order.
template <class S>
CatalogEntry<S> upper_triangular(Index n) {
  if (n < 1) throw DomainError("upper_triangular: n must be at least 1");
  std::vector<Matrix<S>> gens;
  std::vector<std::string> labels;
  for (Index i = 0; i < n; ++i)
    for (Index j = i; j < n; ++j) {
      Matrix<S> m = Matrix<S>::Zero(n, n);
      m(i, j) = S(1);
      gens.push_back(m);
      labels.push_back("E" + std::to_string(i + 1) + std::to_string(j + 1));
    }
  CatalogEntry<S> e{"upper_triangular(" + std::to_string(n) + ")", *from_matrices(gens, labels), {}, {}, ""};
  e.declared_properties = {Property::solvable};
  if (n == 1) e.declared_properties.insert(Property::nilpotent);
  e.citation = "upper triangular matrices";
  return detail::checked(std::move(e));
}

/// sl2 with basis e, h, f: [e, f] = h, [h, e] = 2e, [h, f] = -2f.
template <class S>
CatalogEntry<S> sl2() {
  CatalogEntry<S> e{"sl2",
                    LieAlgebra<S>({"e", "h", "f"}, {{0, 1, detail::vec<S>({-2, 0, 0})},
                                                    {0, 2, detail::vec<S>({0, 1, 0})},
                                                    {1, 2, detail::vec<S>({0, 0, -2})}}),
                    {},
                    {},
                    ""};
  e.declared_maximals = {detail::coordinate_span<S>(3, {0, 1}), detail::coordinate_span<S>(3, {1, 2})};
  if constexpr (field_traits<S>::characteristic != 2)
    e.declared_properties = {Property::simple, Property::semisimple};
  else
    e.declared_properties = {Property::solvable, Property::nilpotent};
  e.citation = "split simple 3-dimensional algebra";
  return detail::checked(std::move(e));
}

/// Cross-product algebra: [x, y] = z, [y, z] = x, [z, x] = y.
template <class S>
CatalogEntry<S> so3() {
  CatalogEntry<S> e{"so3",
                    LieAlgebra<S>({"x", "y", "z"}, {{0, 1, detail::vec<S>({0, 0, 1})},
                                                    {0, 2, detail::vec<S>({0, -1, 0})},
                                                    {1, 2, detail::vec<S>({1, 0, 0})}}),
                    {},
                    {},
                    ""};
  if constexpr (field_traits<S>::characteristic == 0) {
    // over Q the only proper subalgebras are lines (no ad x has a rational eigenvector outside Qx)
    e.declared_maximals = {detail::coordinate_span<S>(3, {0}), detail::coordinate_span<S>(3, {1}),
                           detail::coordinate_span<S>(3, {2})};
    e.declared_properties = {Property::simple, Property::semisimple, Property::minimal_nonabelian};
  }
  e.citation = "cross-product algebra (non-split form of sl2 over Q)";
  return detail::checked(std::move(e));
}

/// Simple minimal nonabelian algebra over Q of dimension 3(k+1).
///
/// With A the (k+1) x (k+1) matrix with A(0, k) = 2 and ones on the
/// subdiagonal (so A^(k+1) = 2E), the generators are
///   f1 = [0 0 0; 0 0 -E; 0 E 0], f2 = [0 0 A; 0 0 0; -E 0 0],
///   f3 = [0 -A 0; E 0 0; 0 0 0]
/// and their images D^m f_i under D = diag(A, A, A). For k = 1 the basis is
/// f1, f2, f3, g1, g2, g3 with g_i = D f_i; in general D^m f_i is labelled
/// f_i, g_i, then d<m>f<i>. The declared maximals are span{D^m f_i : m}.
template <class S>
CatalogEntry<S> gejn(Index k) {
  static_assert(field_traits<S>::characteristic == 0, "gejn is defined over Q");
  if (k < 1) throw DomainError("gejn: k must be at least 1");
  const Index m = k + 1;
  Matrix<S> a = Matrix<S>::Zero(m, m);
  a(0, m - 1) = S(2);
  for (Index i = 1; i < m; ++i) a(i, i - 1) = S(1);
  const Matrix<S> id = Matrix<S>::Identity(m, m);
  auto block = [&](std::initializer_list<std::tuple<int, int, Matrix<S>>> parts) {
    Matrix<S> out = Matrix<S>::Zero(3 * m, 3 * m);
    for (const auto& [r, c, b] : parts) out.block(r * m, c * m, m, m) = b;
    return out;
  };
  const std::vector<Matrix<S>> f = {block({{1, 2, -id}, {2, 1, id}}), block({{0, 2, a}, {2, 0, -id}}),
                                    block({{0, 1, -a}, {1, 0, id}})};
  Matrix<S> d = Matrix<S>::Zero(3 * m, 3 * m);
  for (int b = 0; b < 3; ++b) d.block(b * m, b * m, m, m) = a;

  std::vector<Matrix<S>> gens;
  std::vector<std::string> labels;
  Matrix<S> power = Matrix<S>::Identity(3 * m, 3 * m);
  for (Index p = 0; p < m; ++p) {
    for (int i = 0; i < 3; ++i) {
      gens.push_back(power * f[static_cast<std::size_t>(i)]);
      const std::string idx = std::to_string(i + 1);
      labels.push_back(p == 0 ? "f" + idx : p == 1 ? "g" + idx : "d" + std::to_string(p) + "f" + idx);
    }
    power = power * d;
  }
  auto alg = from_matrices(gens, labels);
  if (alg->dim() != 3 * m) throw std::logic_error("gejn: unexpected closure dimension");
  CatalogEntry<S> e{"gejn(" + std::to_string(k) + ")", std::move(*alg), {}, {}, ""};
  for (Index i = 0; i < 3; ++i) {
    std::vector<Vector<S>> rows;
    for (Index p = 0; p < m; ++p) rows.push_back(unit_vector<S>(3 * m, 3 * p + i));
    e.declared_maximals.push_back(Subspace<S>::span(rows, 3 * m));
  }
  e.declared_properties = {Property::simple, Property::semisimple, Property::minimal_nonabelian};
  e.citation = "Gejn's simple minimal nonabelian algebras over Q";
  return detail::checked(std::move(e));
}

/// L1 (+) L2; declared maximals are M1 (+) L2 and L1 (+) M2.
template <class S>
CatalogEntry<S> direct_sum(const CatalogEntry<S>& a, const CatalogEntry<S>& b) {
  const Index n1 = a.algebra.dim(), n2 = b.algebra.dim(), n = n1 + n2;
  CatalogEntry<S> e{"direct_sum(" + a.name + "," + b.name + ")", direct_sum(a.algebra, b.algebra), {}, {}, ""};
  for (const auto& m : a.declared_maximals) {
    Matrix<S> rows = Matrix<S>::Zero(m.dim() + n2, n);
    rows.topLeftCorner(m.dim(), n1) = m.basis();
    rows.bottomRightCorner(n2, n2) = Matrix<S>::Identity(n2, n2);
    e.declared_maximals.push_back(Subspace<S>::span(rows));
  }
  for (const auto& m : b.declared_maximals) {
    Matrix<S> rows = Matrix<S>::Zero(n1 + m.dim(), n);
    rows.topLeftCorner(n1, n1) = Matrix<S>::Identity(n1, n1);
    rows.bottomRightCorner(m.dim(), n2) = m.basis();
    e.declared_maximals.push_back(Subspace<S>::span(rows));
  }
  auto both = [&](Property p) { return a.declared_properties.count(p) && b.declared_properties.count(p); };
  for (Property p : {Property::solvable, Property::nilpotent, Property::semisimple})
    if (both(p)) e.declared_properties.insert(p);
  e.citation = "direct sum";
  return detail::checked(std::move(e));
}

/// Catalog lookup by spec string: name or name:param, e.g. "sl2", "abelian:3",
/// "gejn:1", "direct_sum:sl2+r2" (nested entries separated by '+').
template <class S>
CatalogEntry<S> catalog(std::string_view spec) {
  const auto colon = spec.find(':');
  const std::string_view name = spec.substr(0, colon);
  const std::string_view param = colon == std::string_view::npos ? std::string_view{} : spec.substr(colon + 1);
  auto integer = [&]() -> Index {
    Index v = 0;
    const auto [ptr, ec] = std::from_chars(param.data(), param.data() + param.size(), v);
    if (param.empty() || ec != std::errc() || ptr != param.data() + param.size())
      throw DomainError("catalog entry " + std::string(name) + " needs an integer parameter, got '" +
                        std::string(param) + "'");
    return v;
  };
  auto no_param = [&] {
    if (!param.empty()) throw DomainError("catalog entry " + std::string(name) + " takes no parameter");
  };
  if (name == "abelian") return abelian<S>(integer());
  if (name == "upper_triangular") return upper_triangular<S>(integer());
  if (name == "r2") return no_param(), r2<S>();
  if (name == "heisenberg") return no_param(), heisenberg<S>();
  if (name == "sl2") return no_param(), sl2<S>();
  if (name == "so3") return no_param(), so3<S>();
  if (name == "gejn") {
    if constexpr (field_traits<S>::characteristic == 0)
      return gejn<S>(integer());
    else
      throw CapabilityError("gejn is defined over Q only");
  }
  if (name == "direct_sum") {
    std::vector<CatalogEntry<S>> parts;
    std::string_view rest = param;
    while (!rest.empty()) {
      const auto plus = rest.find('+');
      parts.push_back(catalog<S>(rest.substr(0, plus)));
      rest = plus == std::string_view::npos ? std::string_view{} : rest.substr(plus + 1);
    }
    if (parts.size() < 2) throw DomainError("direct_sum needs at least two entries, e.g. direct_sum:sl2+r2");
    CatalogEntry<S> acc = parts.front();
    for (std::size_t i = 1; i < parts.size(); ++i) acc = direct_sum(acc, parts[i]);
    return acc;
  }
  throw DomainError("unknown catalog entry '" + std::string(name) + "'");
}

/// Catalog entries injected into every finite-field corpus, in fixed order.
inline const std::vector<std::string>& finite_field_catalog_specs() {
  static const std::vector<std::string> specs = {
      "abelian:1",         "abelian:2",          "abelian:3",           "abelian:4",           "abelian:5",
      "r2",                "heisenberg",         "upper_triangular:2",  "sl2",                 "so3",
      "direct_sum:r2+abelian:1", "direct_sum:r2+abelian:2", "direct_sum:r2+r2", "direct_sum:heisenberg+abelian:1",
      "direct_sum:heisenberg+abelian:2", "direct_sum:sl2+abelian:1", "direct_sum:sl2+abelian:2",
      "direct_sum:sl2+r2", "direct_sum:so3+abelian:1", "direct_sum:so3+r2", "direct_sum:upper_triangular:2+abelian:1",
      "direct_sum:r2+heisenberg"};
  return specs;
}

/// The catalog entries over Q used by the characteristic-0 checks.
inline const std::vector<std::string>& rational_catalog_specs() {
  static const std::vector<std::string> specs = {"sl2", "so3", "gejn:1", "r2", "heisenberg", "direct_sum:sl2+r2"};
  return specs;
}

template <FiniteField S>
std::vector<CatalogEntry<S>> finite_field_catalog(Index max_dim) {
  std::vector<CatalogEntry<S>> out;
  for (const auto& spec : finite_field_catalog_specs()) {
    auto e = catalog<S>(spec);
    if (e.algebra.dim() <= max_dim) out.push_back(std::move(e));
  }
  return out;
}

}  // namespace csec
