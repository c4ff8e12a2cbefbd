#pragma once

// Reproducible corpora of small Lie algebras over GF(p).

#include "csec/catalog.hpp"

namespace csec {

struct CorpusSpec {
  Index ambient_matrix_size = 3;
  Index generator_count = 2;
  std::uint64_t seed = 42;
  Index max_dim = 5;
  std::size_t target_count = 100;
  std::size_t attempt_budget = 0;  ///< 0: 200 * target_count
  bool include_catalog = true;
};

/// Algebras with pairwise distinct fingerprints, in insertion order.
template <class S>
class Corpus {
 public:
  std::vector<LieAlgebra<S>> algebras;
  std::vector<std::string> warnings;

  /// Adds L unless an algebra with the same fingerprint is present. Full
  /// fingerprints are only computed when the coarse ones collide.
  bool add(LieAlgebra<S> L) {
    Fingerprint coarse = fingerprint(L, false);
    std::optional<Fingerprint> full;
    for (std::size_t i = 0; i < algebras.size(); ++i) {
      if (coarse_[i] != coarse) continue;
      if (!full) full = fingerprint(L);
      if (full_fingerprint(i) == *full) return false;
    }
    algebras.push_back(std::move(L));
    coarse_.push_back(std::move(coarse));
    full_.push_back(std::move(full));
    return true;
  }

  [[nodiscard]] std::size_t size() const { return algebras.size(); }

  const Fingerprint& full_fingerprint(std::size_t i) {
    if (!full_[i]) full_[i] = fingerprint(algebras[i]);
    return *full_[i];
  }

  bool contains_fingerprint(const Fingerprint& f) {
    for (std::size_t i = 0; i < size(); ++i)
      if (full_fingerprint(i) == f) return true;
    return false;
  }

 private:
  std::vector<Fingerprint> coarse_;
  std::vector<std::optional<Fingerprint>> full_;
};

/// One random generator matrix: each entry is drawn as r = below(2p) and set
/// to 0 when r < p, otherwise to r - p (so about half the entries vanish).
template <FiniteField S>
Matrix<S> random_generator(SplitMix64& rng, Index n) {
  constexpr int p = field_traits<S>::order;
  Matrix<S> m(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) {
      const auto r = static_cast<int>(rng.below(2 * p));
      m(i, j) = r < p ? S(0) : field_traits<S>::element(r - p);
    }
  return m;
}

/// Adds algebras to `corpus` until it holds spec.target_count members or the
/// attempt budget runs out. The catalog (dim <= max_dim) is injected first
/// when requested; then each attempt draws generator_count matrices in
/// gl_n(GF(p)) (entries row-major, matrices in order), closes their span
/// under commutators and keeps the result when 0 < dim <= max_dim and its
/// fingerprint is new.
template <FiniteField S>
void extend_corpus(Corpus<S>& corpus, const CorpusSpec& spec) {
  if (spec.include_catalog)
    for (auto& e : finite_field_catalog<S>(spec.max_dim)) corpus.add(std::move(e.algebra));
  SplitMix64 rng(spec.seed);
  const std::size_t budget = spec.attempt_budget ? spec.attempt_budget : 200 * spec.target_count;
  for (std::size_t attempt = 0; attempt < budget && corpus.size() < spec.target_count; ++attempt) {
    std::vector<Matrix<S>> gens;
    for (Index g = 0; g < spec.generator_count; ++g) gens.push_back(random_generator<S>(rng, spec.ambient_matrix_size));
    auto L = from_matrices(gens, {}, spec.max_dim,
                           "corpus gl" + std::to_string(spec.ambient_matrix_size) + " k=" +
                               std::to_string(spec.generator_count) + " seed=" + std::to_string(spec.seed) +
                               " attempt=" + std::to_string(attempt));
    if (!L || L->dim() == 0) continue;
    if (!validate(*L).empty()) throw std::logic_error("corpus generator produced a non-Lie algebra");
    corpus.add(std::move(*L));
  }
}

template <FiniteField S>
Corpus<S> generate_corpus(const CorpusSpec& spec) {
  Corpus<S> corpus;
  extend_corpus(corpus, spec);
  if (corpus.size() < spec.target_count)
    corpus.warnings.push_back("target of " + std::to_string(spec.target_count) + " algebras not reached: " +
                              std::to_string(corpus.size()) + " fingerprint-distinct algebras found");
  return corpus;
}

inline constexpr std::size_t kExtensionSamples = 64;

/// Adds split extensions F t (+) N of corpus members N by derivations, in
/// increasing dim N (so new members serve as parents in the next round).
/// When the derivation algebra has at most kExtensionSamples elements all of
/// them are used; otherwise kExtensionSamples random combinations of its
/// basis, with coefficients drawn from a SplitMix64 seeded with seed.
template <FiniteField S>
void extend_by_derivations(Corpus<S>& corpus, std::uint64_t seed, Index max_dim, std::size_t target_count) {
  constexpr int q = field_traits<S>::order;
  SplitMix64 rng(seed);
  for (Index d = 0; d < max_dim && corpus.size() < target_count; ++d) {
    std::vector<LieAlgebra<S>> parents;
    if (d == 0) parents.emplace_back();
    for (const auto& L : corpus.algebras)
      if (L.dim() == d) parents.push_back(L);
    for (std::size_t p = 0; p < parents.size() && corpus.size() < target_count; ++p) {
      const auto& parent = parents[p];
      const auto basis = derivations(parent);
      std::uint64_t total = 1;
      for (std::size_t i = 0; i < basis.size() && total <= kExtensionSamples; ++i) total *= q;
      const bool exhaustive = total <= kExtensionSamples;
      const std::uint64_t count = exhaustive ? total : kExtensionSamples;
      for (std::uint64_t s = 0; s < count && corpus.size() < target_count; ++s) {
        Matrix<S> D = Matrix<S>::Zero(d, d);
        std::uint64_t digits = s;
        for (const auto& b : basis) {
          const int c = exhaustive ? static_cast<int>(digits % q) : static_cast<int>(rng.below(q));
          digits /= q;
          D += field_traits<S>::element(c) * b;
        }
        corpus.add(derivation_extension(parent, D,
                                        "corpus extension seed=" + std::to_string(seed) + " dim=" + std::to_string(d) +
                                            " parent=" + std::to_string(p) + " sample=" + std::to_string(s)));
      }
    }
  }
}

/// The corpus used by the verification pipelines: the catalog, then matrix
/// closures from a fixed schedule of (ambient size, generator count) pairs
/// (stage i seeded with seed + i), then derivation extensions of the members
/// found so far (seeded with seed + 100).
template <FiniteField S>
Corpus<S> standard_corpus(std::uint64_t seed, Index max_dim, std::size_t target_count) {
  static constexpr std::pair<Index, Index> schedule[] = {{2, 2}, {3, 1}, {3, 2}, {3, 3}, {4, 2}, {4, 3}, {5, 2}};
  Corpus<S> corpus;
  for (auto& e : finite_field_catalog<S>(max_dim)) corpus.add(std::move(e.algebra));
  for (std::size_t i = 0; i < std::size(schedule) && corpus.size() < target_count; ++i) {
    CorpusSpec spec{schedule[i].first, schedule[i].second, seed + i, max_dim, target_count, 400, false};
    extend_corpus(corpus, spec);
  }
  extend_by_derivations(corpus, seed + 100, max_dim, target_count);
  if (corpus.size() < target_count)
    corpus.warnings.push_back("target of " + std::to_string(target_count) + " algebras not reached: " +
                              std::to_string(corpus.size()) + " fingerprint-distinct algebras found");
  return corpus;
}

}  // namespace csec
