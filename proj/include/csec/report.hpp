#pragma once

// The reproducible pipelines behind the command-line tool, each producing a
// schema-versioned JSON report. Reports are deterministic given the inputs
// and flags, apart from the trailing "timing" member.

#include "csec/io.hpp"
#include "csec/verify.hpp"

#include <chrono>
#include <cmath>
#include <type_traits>

namespace csec {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kReportSchema = "csec-report/1";

/// Calls fn(std::type_identity<S>{}) for the scalar named by a --field token
/// (q, gf2, gf3, gf5, gf7).
template <class F>
decltype(auto) with_field(std::string_view token, F&& fn) {
  if (token == "q") return fn(std::type_identity<Rational>{});
  if (token == "gf2") return fn(std::type_identity<GF2>{});
  if (token == "gf3") return fn(std::type_identity<GF3>{});
  if (token == "gf5") return fn(std::type_identity<GF5>{});
  if (token == "gf7") return fn(std::type_identity<GF7>{});
  throw DomainError("unknown field '" + std::string(token) + "' (expected q, gf2, gf3, gf5 or gf7)");
}

struct PipelineResult {
  Json report;
  int exit_code = 0;  ///< 0 success, 1 verification failure
};

inline Json strip_timing(Json report) {
  report.erase("timing");
  return report;
}

namespace detail {

inline Json report_header(const char* command, const std::string& digest, Json parameters) {
  Json r;
  r["schema"] = kReportSchema;
  r["tool_version"] = kToolVersion;
  r["command"] = command;
  r["input_digest"] = "fnv1a64:" + digest;
  r["parameters"] = std::move(parameters);
  return r;
}

class Stopwatch {
 public:
  [[nodiscard]] double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

inline Json timing_json(const Stopwatch& w) { return Json{{"seconds", std::round(w.seconds() * 1000) / 1000}}; }

inline Json violations_json(const std::vector<Violation>& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(Json{{"algebra", x.algebra}, {"witness", x.witness}});
  return out;
}

}  // namespace detail

template <class S>
Json maximal_report_json(const MaximalReport<S>& r) {
  Json j;
  j["maximal"] = rows_json(r.maximal);
  j["dim"] = r.maximal.dim();
  j["maximality"] = r.maximality_basis;
  j["core"] = rows_json(r.core);
  j["prim_type"] = r.prim_type;
  j["sec"] = to_json(r.section.algebra);
  j["chief_factor"] = Json{{"upper", rows_json(r.section.factor.upper)}, {"lower", rows_json(r.section.factor.lower)}};
  j["c_index"] = r.c_index;
  j["ideal_index"] = r.ideal_index ? Json(*r.ideal_index) : Json(nullptr);
  j["is_c_ideal"] = r.c_ideal.value;
  j["c_ideal_search"] = r.c_ideal.exhaustive ? "exhaustive" : "partial";
  j["c_ideal_witness"] = r.c_ideal.witness ? rows_json(*r.c_ideal.witness) : Json(nullptr);
  j["sec_flags"] = Json{{"solvable", r.sec_solvable}, {"nilpotent", r.sec_nilpotent}, {"nil", r.sec_nil}};
  j["invariant_violations"] = r.invariant_violations;
  return j;
}

inline Json outcome_json(const VerificationOutcome& o) {
  Json j;
  j["claim_id"] = o.claim_id;
  j["status"] = to_string(o.status);
  j["instances_checked"] = o.instances_checked;
  j["violations"] = detail::violations_json(o.violations);
  if (!o.reason.empty()) j["reason"] = o.reason;
  j["degradations"] = detail::violations_json(o.degradations);
  return j;
}

struct VerifyOptions {
  std::vector<std::string> suite;  ///< claim ids; empty or {"all"}: every claim
  std::string field = "gf2";
  Index max_dim = 5;
  std::uint64_t seed = 42;
  std::size_t target_count = 200;
  std::uint64_t budget = kDefaultSubspaceBudget;
  unsigned jobs = 1;  ///< not part of the report: results do not depend on it
};

namespace detail {

inline Json corpus_parameters(const VerifyOptions& o) {
  return Json{{"field", o.field},   {"max_dim", o.max_dim}, {"seed", o.seed},
              {"target_count", o.target_count}, {"budget", o.budget}};
}

template <class S>
Json corpus_json(const std::vector<VerifyItem<S>>& items, const std::vector<std::string>& warnings, const char* source) {
  Json algebras = Json::array();
  for (const auto& it : items)
    algebras.push_back(Json{{"id", it.id},
                            {"dim", it.algebra.dim()},
                            {"solvable", is_solvable(it.algebra)},
                            {"provenance", it.algebra.provenance()}});
  return Json{{"source", source}, {"size", items.size()}, {"warnings", warnings}, {"algebras", std::move(algebras)}};
}

/// The algebras a verify or search run is about: the standard corpus over
/// GF(p), the Q catalog with declared maximals over Q.
template <class S>
std::pair<std::vector<VerifyItem<S>>, Json> pipeline_items(const VerifyOptions& o) {
  if constexpr (FiniteField<S>) {
    auto corpus = standard_corpus<S>(o.seed, o.max_dim, o.target_count);
    auto items = corpus_items(corpus);
    Json cj = corpus_json(items, corpus.warnings, "standard corpus");
    return {std::move(items), std::move(cj)};
  } else {
    auto items = rational_catalog_items();
    Json cj = corpus_json(items, {"over Q the corpus is the fixed catalog; max_dim, seed and target_count do not apply"},
                          "Q catalog");
    return {std::move(items), std::move(cj)};
  }
}

}  // namespace detail

inline std::vector<std::string> resolve_suite(const std::vector<std::string>& suite) {
  if (suite.empty() || (suite.size() == 1 && suite.front() == "all")) return claim_ids();
  for (const auto& c : suite)
    if (std::find(claim_ids().begin(), claim_ids().end(), c) == claim_ids().end())
      throw DomainError("unknown claim '" + c + "'");
  return suite;
}

/// Runs the claims over the corpus; exit code 1 when any claim fails.
inline PipelineResult run_verify(const VerifyOptions& o) {
  const detail::Stopwatch watch;
  const auto claims = resolve_suite(o.suite);
  Json params = detail::corpus_parameters(o);
  params["suite"] = claims;
  PipelineResult out;
  out.report = detail::report_header("verify", fnv1a_hex(params.dump()), params);
  with_field(o.field, [&]<class S>(std::type_identity<S>) {
    auto [items, corpus] = detail::pipeline_items<S>(o);
    const auto outcomes = verify(claims, items, o.jobs, o.budget);
    out.report["corpus"] = std::move(corpus);
    Json cj = Json::array();
    for (const auto& oc : outcomes) {
      cj.push_back(outcome_json(oc));
      if (oc.status == ClaimStatus::fail) out.exit_code = 1;
    }
    out.report["claims"] = std::move(cj);
  });
  out.report["timing"] = detail::timing_json(watch);
  return out;
}

/// Non-solvable corpus algebras with a maximal subalgebra of c-index 0.
inline PipelineResult run_search(const VerifyOptions& o) {
  const detail::Stopwatch watch;
  const Json params = detail::corpus_parameters(o);
  PipelineResult out;
  out.report = detail::report_header("search", fnv1a_hex(params.dump()), params);
  with_field(o.field, [&]<class S>(std::type_identity<S>) {
    if constexpr (!FiniteField<S>) {
      throw CapabilityError("search needs a finite field: maximal subalgebras over Q cannot be enumerated");
    } else {
      auto [items, corpus] = detail::pipeline_items<S>(o);
      out.report["corpus"] = std::move(corpus);
      Json fj = Json::array();
      for (const auto& f : search_counterexample(items, o.jobs))
        fj.push_back(Json{{"algebra", f.algebra},
                          {"provenance", f.provenance},
                          {"dim", f.dim},
                          {"maximal", f.maximal},
                          {"prim_type", f.prim_type}});
      out.report["findings"] = std::move(fj);
    }
  });
  out.report["timing"] = detail::timing_json(watch);
  return out;
}

struct AnalyzeOptions {
  std::optional<std::string> maximal;  ///< basis rows, "a b c; d e f"
  bool enumerate = false;
  std::uint64_t budget = kDefaultSubspaceBudget;
};

/// Validates the algebra, then analyses the given maximal subalgebra (after
/// re-certifying maximality) or every maximal subalgebra (GF(p) only).
/// Exit code 1 on a Jacobi violation, a non-maximal input subspace or a
/// violated invariant.
inline PipelineResult run_analyze(const std::string& file_text, const AnalyzeOptions& o) {
  const detail::Stopwatch watch;
  if (o.maximal.has_value() == o.enumerate) throw DomainError("analyze needs exactly one of --maximal or --enumerate");
  const AnyAlgebra any = algebra_from_text(file_text);
  Json params{{"maximal", o.maximal ? Json(*o.maximal) : Json(nullptr)}, {"enumerate", o.enumerate}, {"budget", o.budget}};
  PipelineResult out;
  out.report = detail::report_header("analyze", fnv1a_hex(file_text), params);
  std::visit(
      [&]<class S>(const LieAlgebra<S>& L) {
        out.report["algebra"] = Json{{"field", L.field().name()}, {"dim", L.dim()}, {"provenance", L.provenance()}};
        const auto jacobi = validate(L);
        if (!jacobi.empty()) {
          Json v = Json::array();
          for (const auto& x : jacobi)
            v.push_back(Json{{"i", x.i}, {"j", x.j}, {"k", x.k}, {"residual", rows_json(Subspace<S>::span(x.residual.transpose()))}});
          out.report["jacobi_violations"] = std::move(v);
          out.exit_code = 1;
          return;
        }
        std::vector<Subspace<S>> maximals;
        if (o.enumerate) {
          if constexpr (FiniteField<S>)
            maximals = maximal_subalgebras(L, o.budget);
          else
            throw CapabilityError("--enumerate needs a finite field; over Q pass --maximal");
        } else {
          const auto M = parse_rows<S>(*o.maximal, L.dim());
          if (M.is_full() || !is_subalgebra(L, M)) {
            out.report["error"] = "the given subspace is not a proper subalgebra";
            out.exit_code = 1;
            return;
          }
          const auto verdict = is_maximal(L, M);
          if (verdict.decision != Decision::yes) {
            out.report["error"] = "the given subalgebra is not maximal";
            if (verdict.witness) out.report["intermediate_subalgebra"] = rows_json(*verdict.witness);
            out.exit_code = 1;
            return;
          }
          maximals.push_back(M);
        }
        const auto lattice = ideal_lattice(L, o.budget);
        out.report["ideal_lattice"] = lattice ? "exact" : "unavailable";
        Json mj = Json::array();
        for (const auto& M : maximals) {
          const auto r = analyze_maximal(L, M, lattice ? &*lattice : nullptr);
          if (!r.invariant_violations.empty()) out.exit_code = 1;
          mj.push_back(maximal_report_json(r));
        }
        out.report["maximals"] = std::move(mj);
      },
      any);
  out.report["timing"] = detail::timing_json(watch);
  return out;
}

}  // namespace csec
