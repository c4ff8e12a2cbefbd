#pragma once

// The claim registry: each claim is checked over every applicable
// (algebra, maximal subalgebra) pair; failures are data, not exceptions.

#include "csec/csection.hpp"

#include <atomic>
#include <mutex>
#include <thread>

namespace csec {

inline const std::vector<std::string>& claim_ids() {
  static const std::vector<std::string> ids = {
      "lemma_unique", "lemma2_i",      "lemma2_ii", "lemma_supp",          "lemma_factor", "lemma_prim",
      "lemma_prim_ii", "thm_trivial_i", "thm_nil",   "thm_char0_structure", "cor_cindex"};
  return ids;
}

enum class ClaimStatus { pass, fail, skipped };

inline const char* to_string(ClaimStatus s) {
  switch (s) {
    case ClaimStatus::pass: return "pass";
    case ClaimStatus::fail: return "fail";
    case ClaimStatus::skipped: return "skipped-with-reason";
  }
  return "?";
}

struct Violation {
  std::string algebra;
  std::string witness;
};

struct VerificationOutcome {
  std::string claim_id;
  std::uint64_t instances_checked = 0;
  std::vector<Violation> violations;
  ClaimStatus status = ClaimStatus::pass;
  std::string reason;                     ///< why the claim was skipped
  std::vector<Violation> degradations;    ///< instances decided by a weaker check, with what was used
};

/// One algebra to verify; declared maximals replace exhaustive enumeration
/// (required over Q).
template <class S>
struct VerifyItem {
  std::string id;
  LieAlgebra<S> algebra;
  std::optional<std::vector<Subspace<S>>> declared_maximals;
  std::string catalog_spec;  ///< set for catalog entries, used by the statement-level claims
};

namespace detail {

template <class S>
std::string rows_string(const Subspace<S>& U) {
  std::ostringstream os;
  for (Index r = 0; r < U.dim(); ++r) {
    if (r) os << ';';
    for (Index c = 0; c < U.ambient_dim(); ++c) os << (c ? " " : "") << field_traits<S>::format(U.basis()(r, c));
  }
  return "span{" + os.str() + "}";
}

/// Runs body(i) for i in [0, n) on `jobs` threads; the first exception is
/// rethrown after all workers finish.
template <class F>
void parallel_for(std::size_t n, unsigned jobs, F&& body) {
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < std::max(1u, jobs); ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

/// Sections agree: exhaustive isomorphism where feasible, else fingerprints
/// (reported as a degradation through `degraded`).
template <class S>
bool sections_agree(const LieAlgebra<S>& a, const LieAlgebra<S>& b, bool& degraded) {
  const auto r = is_isomorphic(a, b);
  if (r.decision == Decision::unknown) degraded = true;
  return r.decision == Decision::yes || (r.decision == Decision::unknown && r.fingerprints_equal);
}

/// Everything the claims need about one algebra, computed once.
template <class S>
struct AlgebraContext {
  const VerifyItem<S>* item = nullptr;
  std::optional<IdealLattice<S>> lattice;
  std::vector<Subspace<S>> maximals;
  bool exhaustive_maximals = false;
  std::vector<MaximalReport<S>> reports;
  bool solvable = false;
  std::string error;  ///< capability error that stopped the analysis
};

template <class S>
AlgebraContext<S> build_context(const VerifyItem<S>& item, std::uint64_t budget) {
  AlgebraContext<S> ctx;
  ctx.item = &item;
  const auto& L = item.algebra;
  ctx.solvable = is_solvable(L);
  try {
    ctx.lattice = ideal_lattice(L, budget);
    if (item.declared_maximals) {
      ctx.maximals = *item.declared_maximals;
    } else if constexpr (FiniteField<S>) {
      ctx.maximals = maximal_subalgebras(L, budget);
      ctx.exhaustive_maximals = true;
    } else {
      throw CapabilityError("maximal subalgebras over Q need declared candidates");
    }
    for (const auto& M : ctx.maximals) ctx.reports.push_back(analyze_maximal(L, M, ctx.lattice ? &*ctx.lattice : nullptr));
  } catch (const CapabilityError& e) {  // includes BudgetExceeded
    ctx.error = e.what();
  }
  return ctx;
}

/// Per-algebra contribution to one claim.
struct ClaimPart {
  std::uint64_t instances = 0;
  std::vector<Violation> violations;
  std::vector<Violation> degradations;
};

inline bool declared_rhs_part(const std::set<Property>& props, const std::string& name) {
  return props.count(Property::solvable) || name == "sl2" ||
         (props.count(Property::simple) && props.count(Property::minimal_nonabelian));
}

template <class S>
ClaimPart check_claim(const std::string& claim, const AlgebraContext<S>& ctx) {
  ClaimPart out;
  const auto& item = *ctx.item;
  const auto& L = item.algebra;
  auto violation = [&](std::string w) { out.violations.push_back({item.id, std::move(w)}); };
  auto degrade = [&](std::string w) { out.degradations.push_back({item.id, std::move(w)}); };
  if (!ctx.error.empty()) {
    degrade("not analyzed: " + ctx.error);
    return out;
  }

  if (claim == "lemma_unique") {
    if (!ctx.lattice) {
      degrade("ideal lattice not certified; supplementing factors unknown");
      return out;
    }
    for (const auto& r : ctx.reports) {
      const auto factors = supplementing_chief_factors(L, r.maximal, *ctx.lattice);
      if (factors.size() < 2) continue;
      std::vector<LieAlgebra<S>> secs;
      for (const auto& f : factors) secs.push_back(c_section_from(L, r.maximal, f).algebra);
      bool degraded = false;
      // isomorphism and fingerprint equality are equivalence relations, so
      // comparing with the first section decides pairwise agreement
      for (std::size_t b = 1; b < secs.size(); ++b) {
        ++out.instances;
        if (!sections_agree(secs.front(), secs[b], degraded))
          violation("M=" + rows_string(r.maximal) + ": sections from factors 0 and " + std::to_string(b) +
                    " differ (dims " + std::to_string(secs.front().dim()) + ", " + std::to_string(secs[b].dim()) + ")");
      }
      if (degraded) degrade("M=" + rows_string(r.maximal) + ": some section pairs compared by fingerprint only");
    }
  } else if (claim == "lemma2_i") {
    for (const auto& r : ctx.reports) {
      ++out.instances;
      if (!r.c_ideal.exhaustive && !r.c_ideal.value) {
        if (r.c_index == 0) degrade("M=" + rows_string(r.maximal) + ": no c-ideal witness in a partial ideal list");
        continue;
      }
      if (r.c_ideal.value != (r.c_index == 0))
        violation("M=" + rows_string(r.maximal) + ": c-ideal " + (r.c_ideal.value ? "true" : "false") +
                  ", c-index " + std::to_string(r.c_index));
    }
  } else if (claim == "lemma2_ii") {
    for (const auto& r : ctx.reports) {
      if (!r.ideal_index) {
        degrade("M=" + rows_string(r.maximal) + ": ideal index needs the ideal lattice");
        continue;
      }
      ++out.instances;
      if (*r.ideal_index != r.c_index + r.maximal.codim())
        violation("M=" + rows_string(r.maximal) + ": eta " + std::to_string(*r.ideal_index) + " != eta* " +
                  std::to_string(r.c_index) + " + " + std::to_string(r.maximal.codim()));
    }
  } else if (claim == "lemma_supp") {
    if (!ctx.lattice) {
      degrade("ideal lattice not certified; chief factors unknown");
      return out;
    }
    for (const auto& r : ctx.reports)
      for (const auto& f : supplementing_chief_factors(L, r.maximal, *ctx.lattice)) {
        if (!f.abelian) continue;
        ++out.instances;
        if (!(intersect(r.maximal, f.upper) == f.lower))
          violation("M=" + rows_string(r.maximal) + ", A=" + rows_string(f.upper) + ": M meet A != B");
      }
  } else if (claim == "lemma_factor") {
    if (!ctx.lattice) {
      degrade("ideal lattice not certified; ideals inside M unknown");
      return out;
    }
    for (const auto& r : ctx.reports) {
      bool degraded = false;
      for (const auto& B : ctx.lattice->ideals) {
        if (B.is_zero() || !r.maximal.contains(B)) continue;
        ++out.instances;
        const auto q = quotient(L, B);
        const auto sec = c_section(q.algebra, q.map.project(r.maximal)).algebra;
        if (!sections_agree(r.section.algebra, sec, degraded))
          violation("M=" + rows_string(r.maximal) + ", B=" + rows_string(B) + ": Sec(M) and Sec(M/B) differ");
      }
      if (degraded) degrade("M=" + rows_string(r.maximal) + ": some sections compared by fingerprint only");
    }
  } else if (claim == "lemma_prim") {
    for (const auto& r : ctx.reports) {
      ++out.instances;
      if ((r.prim_type == 1 || r.prim_type == 3) && r.c_index != 0)
        violation("M=" + rows_string(r.maximal) + ": type " + std::to_string(r.prim_type) + ", c-index " +
                  std::to_string(r.c_index));
    }
  } else if (claim == "lemma_prim_ii") {
    // type 2 in characteristic 0: Sec(M) is isomorphic to M/core(M)
    for (const auto& r : ctx.reports) {
      if (r.prim_type != 2) continue;
      ++out.instances;
      const auto quot = section_algebra(L, r.maximal, r.core);
      bool degraded = false;
      if (!sections_agree(r.section.algebra, quot, degraded))
        violation("M=" + rows_string(r.maximal) + ": Sec(M) and M/core(M) differ");
      if (degraded) degrade("M=" + rows_string(r.maximal) + ": compared by fingerprint only");
    }
  } else if (claim == "thm_trivial_i" || claim == "thm_nil") {
    const bool trivial = claim == "thm_trivial_i";
    ++out.instances;
    const bool all = std::all_of(ctx.reports.begin(), ctx.reports.end(),
                                 [&](const auto& r) { return trivial ? r.c_index == 0 : r.sec_nil; });
    if (ctx.solvable && !all) {
      violation(std::string("solvable algebra with a maximal whose section is ") + (trivial ? "nonzero" : "not nil"));
    } else if (!ctx.solvable && all) {
      if (ctx.exhaustive_maximals)
        violation(std::string("non-solvable algebra with every section ") + (trivial ? "zero" : "nil"));
      else
        degrade("non-solvable, all declared maximals conform; other maximals not enumerated");
    }
  } else if (claim == "thm_char0_structure") {
    // Sec(M) solvable for every M  <=>  every simple Levi component is
    // minimal non-abelian or sl2; sides read from declared maximals and the
    // declared properties of the direct summands.
    if (item.catalog_spec.empty()) return out;
    ++out.instances;
    const bool lhs = std::all_of(ctx.reports.begin(), ctx.reports.end(), [](const auto& r) { return r.sec_solvable; });
    std::vector<std::string> parts;
    std::string_view spec = item.catalog_spec;
    if (spec.starts_with("direct_sum:")) {
      spec.remove_prefix(11);
      while (!spec.empty()) {
        const auto plus = spec.find('+');
        parts.emplace_back(spec.substr(0, plus));
        spec = plus == std::string_view::npos ? std::string_view{} : spec.substr(plus + 1);
      }
    } else {
      parts.emplace_back(spec);
    }
    bool rhs = true;
    for (const auto& p : parts) {
      const auto e = catalog<S>(p);
      rhs = rhs && declared_rhs_part(e.declared_properties, p);
    }
    if (lhs != rhs)
      violation(std::string("declared maximals give all sections solvable = ") + (lhs ? "true" : "false") +
                " but the Levi components condition is " + (rhs ? "true" : "false"));
    if (lhs) degrade("statement-level: only declared maximal subalgebras examined");
  } else if (claim == "cor_cindex") {
    if (item.catalog_spec.empty() || !(item.catalog_spec.starts_with("gejn") || item.catalog_spec == "sl2" ||
                                       item.catalog_spec == "so3"))
      return out;
    ++out.instances;
    std::set<Index> values;
    for (const auto& r : ctx.reports) values.insert(r.c_index);
    if (values.size() > 1) {
      std::string w = "declared maximals have c-indices";
      for (Index v : values) w += " " + std::to_string(v);
      violation(std::move(w));
    }
  } else {
    throw DomainError("unknown claim '" + claim + "'");
  }
  return out;
}

/// Why a claim does not apply over this field, or empty.
template <class S>
std::string skip_reason(const std::string& claim) {
  const bool char0 = field_traits<S>::characteristic == 0;
  if ((claim == "thm_char0_structure" || claim == "cor_cindex" || claim == "lemma_prim_ii") && !char0)
    return "characteristic 0 claim; checked on Q catalog entries only";
  return {};
}

}  // namespace detail

/// Checks `claims` (ids from claim_ids()) over `items`. Algebras are
/// analysed by `jobs` worker threads; outcomes are merged by claim order
/// then algebra order, so the result does not depend on `jobs`.
template <class S>
std::vector<VerificationOutcome> verify(const std::vector<std::string>& claims, const std::vector<VerifyItem<S>>& items,
                                        unsigned jobs = 1, std::uint64_t budget = kDefaultSubspaceBudget) {
  for (const auto& c : claims)
    if (std::find(claim_ids().begin(), claim_ids().end(), c) == claim_ids().end())
      throw DomainError("unknown claim '" + c + "'");
  std::vector<std::string> active;
  for (const auto& c : claims)
    if (detail::skip_reason<S>(c).empty()) active.push_back(c);

  std::vector<std::vector<detail::ClaimPart>> parts(items.size());
  if (!active.empty())
    detail::parallel_for(items.size(), jobs, [&](std::size_t i) {
      const auto ctx = detail::build_context(items[i], budget);
      for (const auto& c : active) parts[i].push_back(detail::check_claim(c, ctx));
    });

  std::vector<VerificationOutcome> out;
  for (const auto& c : claims) {
    VerificationOutcome o;
    o.claim_id = c;
    if (auto reason = detail::skip_reason<S>(c); !reason.empty()) {
      o.status = ClaimStatus::skipped;
      o.reason = std::move(reason);
      out.push_back(std::move(o));
      continue;
    }
    const auto k = static_cast<std::size_t>(std::find(active.begin(), active.end(), c) - active.begin());
    for (const auto& per_algebra : parts) {
      const auto& p = per_algebra[k];
      o.instances_checked += p.instances;
      o.violations.insert(o.violations.end(), p.violations.begin(), p.violations.end());
      o.degradations.insert(o.degradations.end(), p.degradations.begin(), p.degradations.end());
    }
    if (!o.violations.empty()) {
      o.status = ClaimStatus::fail;
    } else if (o.instances_checked == 0) {
      o.status = ClaimStatus::skipped;
      o.reason = "no applicable instances in this corpus";
    }
    out.push_back(std::move(o));
  }
  return out;
}

/// Items for a GF(p) corpus, with ids "<field>#<index>".
template <FiniteField S>
std::vector<VerifyItem<S>> corpus_items(const Corpus<S>& corpus) {
  std::vector<VerifyItem<S>> out;
  for (std::size_t i = 0; i < corpus.algebras.size(); ++i)
    out.push_back({field_spec<S>().token() + "#" + std::to_string(i), corpus.algebras[i], std::nullopt, {}});
  return out;
}

/// The Q catalog with declared maximals (ids are the catalog specs).
inline std::vector<VerifyItem<Rational>> rational_catalog_items() {
  std::vector<VerifyItem<Rational>> out;
  for (const auto& spec : rational_catalog_specs()) {
    auto e = catalog<Rational>(spec);
    out.push_back({spec, std::move(e.algebra), std::move(e.declared_maximals), spec});
  }
  return out;
}

struct Finding {
  std::string algebra;
  std::string provenance;
  Index dim = 0;
  std::string maximal;
  int prim_type = 0;
};

/// Non-solvable corpus algebras with a maximal subalgebra whose c-section is
/// zero (one finding per such maximal); an empty list is a valid outcome.
template <FiniteField S>
std::vector<Finding> search_counterexample(const std::vector<VerifyItem<S>>& items, unsigned jobs = 1) {
  std::vector<std::vector<Finding>> per(items.size());
  detail::parallel_for(items.size(), jobs, [&](std::size_t i) {
    const auto& L = items[i].algebra;
    if (is_solvable(L)) return;
    const auto lattice = ideal_lattice(L);
    for (const auto& M : maximal_subalgebras(L)) {
      const auto r = analyze_maximal(L, M, lattice ? &*lattice : nullptr);
      if (r.c_index == 0) per[i].push_back({items[i].id, L.provenance(), L.dim(), detail::rows_string(M), r.prim_type});
    }
  });
  std::vector<Finding> out;
  for (auto& v : per) out.insert(out.end(), v.begin(), v.end());
  return out;
}

}  // namespace csec
