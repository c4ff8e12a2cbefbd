#include "csec/report.hpp"

#include <doctest.h>

using namespace csec;

namespace {

template <class S>
void check_round_trip(const LieAlgebra<S>& L) {
  const std::string text = to_file_text(L);
  const AnyAlgebra back = algebra_from_text(text);
  REQUIRE(std::holds_alternative<LieAlgebra<S>>(back));
  CHECK(std::get<LieAlgebra<S>>(back) == L);
  CHECK(any_to_file_text(back) == text);
}

Json r2_json() { return to_json(r2<Rational>().algebra); }

template <class S>
std::vector<VerifyItem<S>> items_of(const std::vector<std::string>& specs) {
  std::vector<VerifyItem<S>> out;
  for (const auto& s : specs) out.push_back({s, catalog<S>(s).algebra, std::nullopt, {}});
  return out;
}

const VerificationOutcome& outcome(const std::vector<VerificationOutcome>& v, const std::string& id) {
  const auto it = std::find_if(v.begin(), v.end(), [&](const auto& o) { return o.claim_id == id; });
  REQUIRE(it != v.end());
  return *it;
}

}  // namespace

TEST_CASE("algebra files round-trip bit-exactly") {
  for (const auto& spec : rational_catalog_specs()) check_round_trip(catalog<Rational>(spec).algebra);
  auto gf2 = standard_corpus<GF2>(42, 4, 60);
  for (const auto& L : gf2.algebras) check_round_trip(L);
  auto gf3 = standard_corpus<GF3>(7, 3, 25);
  for (const auto& L : gf3.algebras) check_round_trip(L);
  check_round_trip(abelian<GF7>(0).algebra);
  // scalars that need a denominator and a sign
  const LieAlgebra<Rational> q({"a", "b", "c"}, {{0, 1, detail::vec<Rational>({0, 0, 1})},
                                                 {0, 2, Vector<Rational>::Constant(3, Rational::parse("-3/7"))}});
  check_round_trip(q);
  CHECK(to_json(q)["brackets"][1]["coeffs"]["0"] == "-3/7");
}

TEST_CASE("algebra file errors") {
  SUBCASE("missing and mistyped fields") {
    for (const char* key : {"field", "dim", "basis", "brackets"}) {
      Json j = r2_json();
      j.erase(key);
      CHECK_THROWS_AS(algebra_from_json(j), FormatError);
    }
    Json j = r2_json();
    j["brackets"][0]["coeffs"]["0"] = 1;  // numbers are not allowed
    CHECK_THROWS_AS(algebra_from_json(j), FormatError);
  }
  SUBCASE("non-canonical scalars") {
    for (const char* s : {"2/4", "1/1", "+1", "01", "1/-2", "x"}) {
      Json j = r2_json();
      j["brackets"][0]["coeffs"]["0"] = s;
      CHECK_THROWS_AS(algebra_from_json(j), FormatError);
    }
    Json j = to_json(r2<GF3>().algebra);
    j["brackets"][0]["coeffs"]["0"] = "3";
    CHECK_THROWS_AS(algebra_from_json(j), FormatError);
  }
  SUBCASE("indices") {
    Json j = r2_json();
    j["brackets"][0]["i"] = 1;
    j["brackets"][0]["j"] = 0;
    CHECK_THROWS_AS(algebra_from_json(j), FormatError);
    j = r2_json();
    j["brackets"].push_back(j["brackets"][0]);
    CHECK_THROWS_AS(algebra_from_json(j), FormatError);
    j = r2_json();
    j["brackets"][0]["coeffs"] = Json{{"2", "1"}};
    CHECK_THROWS_AS(algebra_from_json(j), FormatError);
    j = r2_json();
    j["basis"].push_back("z");
    CHECK_THROWS_AS(algebra_from_json(j), FormatError);
  }
  SUBCASE("fields") {
    Json j = r2_json();
    j["field"] = Json{{"GF", 4}};
    CHECK_THROWS_AS(algebra_from_json(j), FormatError);
    j["field"] = Json{{"GF", 11}};
    CHECK_THROWS_AS(algebra_from_json(j), CapabilityError);
    j["field"] = "R";
    CHECK_THROWS_AS(algebra_from_json(j), FormatError);
    CHECK_THROWS_AS(algebra_from_text("{not json"), FormatError);
  }
}

TEST_CASE("basis rows and digests") {
  const auto U = parse_rows<Rational>("1 0 0; 0 1/2 0", 3);
  CHECK(U.dim() == 2);
  CHECK(U.contains(detail::vec<Rational>({0, 1, 0})));
  CHECK(parse_rows<GF2>("", 2).is_zero());
  CHECK_THROWS_AS(parse_rows<Rational>("1 0", 3), DomainError);
  CHECK_THROWS_AS(parse_rows<GF3>("1 5 0", 3), FormatError);
  CHECK(fnv1a_hex("") == "cbf29ce484222325");
  CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
}

TEST_CASE("claims over small corpora") {
  SUBCASE("thm_trivial_i over solvable algebras passes") {
    const auto items = items_of<GF2>({"abelian:2", "r2", "heisenberg", "upper_triangular:2", "direct_sum:r2+r2"});
    const auto out = verify({"thm_trivial_i", "thm_nil"}, items);
    for (const auto& o : out) {
      CHECK(o.status == ClaimStatus::pass);
      CHECK(o.instances_checked == items.size());
    }
  }
  SUBCASE("thm_nil with sl2 over GF(3)") {
    const auto items = items_of<GF3>({"sl2", "r2", "direct_sum:sl2+abelian:1"});
    const auto o = outcome(verify({"thm_nil"}, items), "thm_nil");
    CHECK(o.status == ClaimStatus::pass);
    const auto& L = items.front().algebra;
    const auto maximals = maximal_subalgebras(L);
    CHECK(std::any_of(maximals.begin(), maximals.end(),
                      [&](const auto& M) { return !analyze_maximal(L, M).sec_nil; }));
  }
  SUBCASE("lemma2_ii on the GF(2) dim <= 4 corpus, seed 42 (regression)") {
    VerifyOptions o;
    o.suite = {"lemma2_ii"};
    o.field = "gf2";
    o.max_dim = 4;
    o.seed = 42;
    const auto r = run_verify(o);
    CHECK(r.exit_code == 0);
    CHECK(r.report["claims"][0]["status"] == "pass");
    CHECK(r.report["claims"][0]["instances_checked"].get<int>() > 0);
  }
  SUBCASE("characteristic-0 claims are skipped over GF(p) with a reason") {
    const auto out = verify({"thm_char0_structure", "cor_cindex"}, items_of<GF2>({"r2"}));
    for (const auto& o : out) {
      CHECK(o.status == ClaimStatus::skipped);
      CHECK(!o.reason.empty());
    }
  }
  SUBCASE("Q catalog") {
    const auto out = verify(claim_ids(), rational_catalog_items());
    for (const auto& o : out) CHECK_MESSAGE(o.status == ClaimStatus::pass, o.claim_id);
    CHECK(outcome(out, "cor_cindex").instances_checked == 3);
  }
  SUBCASE("unknown claim") { CHECK_THROWS_AS(verify({"lemma9"}, items_of<GF2>({"r2"})), DomainError); }
}

TEST_CASE("declared maximals are re-certified") {
  VerifyItem<GF2> bad{"bad", r2<GF2>().algebra, std::vector<Subspace<GF2>>{Subspace<GF2>::zero(2)}, {}};
  CHECK_THROWS_AS(verify({"lemma2_ii"}, std::vector<VerifyItem<GF2>>{bad}), DomainError);
}

TEST_CASE("claims report tampered analyses as violations") {
  const VerifyItem<GF2> item{"r2", r2<GF2>().algebra, std::nullopt, {}};
  auto ctx = detail::build_context(item, kDefaultSubspaceBudget);
  for (const char* claim : {"lemma2_i", "lemma2_ii", "lemma_prim", "thm_trivial_i"})
    CHECK(detail::check_claim(claim, ctx).violations.empty());
  ctx.reports.front().c_index += 1;
  for (const char* claim : {"lemma2_i", "lemma2_ii", "lemma_prim", "thm_trivial_i"}) {
    const auto part = detail::check_claim(claim, ctx);
    CHECK_MESSAGE(part.violations.size() == 1, claim);
    if (!part.violations.empty()) CHECK(part.violations.front().algebra == "r2");
  }
}

TEST_CASE("verification is independent of the worker count") {
  const auto corpus = standard_corpus<GF2>(5, 4, 30);
  const auto items = corpus_items(corpus);
  const auto a = verify(claim_ids(), items, 1);
  const auto b = verify(claim_ids(), items, 4);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(outcome_json(a[i]) == outcome_json(b[i]));
}

TEST_CASE("counterexample search") {
  SUBCASE("solvable corpus gives no findings") {
    CHECK(search_counterexample(items_of<GF3>({"r2", "heisenberg", "upper_triangular:2"})).empty());
  }
  SUBCASE("sl2 over GF(3): every maximal has a nonzero section (regression)") {
    CHECK(search_counterexample(items_of<GF3>({"sl2"})).empty());
  }
  SUBCASE("sl2 (+) F over GF(3): sl2 itself is a maximal with zero section") {
    const auto f = search_counterexample(items_of<GF3>({"direct_sum:sl2+abelian:1"}));
    REQUIRE(f.size() == 1);
    CHECK(f[0].maximal == "span{1 0 0 0;0 1 0 0;0 0 1 0}");
  }
  SUBCASE("same seed twice gives identical reports") {
    VerifyOptions o;
    o.field = "gf2";
    o.max_dim = 4;
    o.target_count = 40;
    CHECK(strip_timing(run_search(o).report) == strip_timing(run_search(o).report));
  }
}

TEST_CASE("analyze pipeline") {
  const std::string r2_text = to_file_text(r2<Rational>().algebra);
  AnalyzeOptions o;
  o.maximal = "0 1";
  const auto r = run_analyze(r2_text, o);
  CHECK(r.exit_code == 0);
  const auto& m = r.report["maximals"][0];
  CHECK(m["c_index"] == 0);
  CHECK(m["ideal_index"] == 1);
  CHECK(m["prim_type"] == 1);
  CHECK(m["is_c_ideal"] == true);

  o.maximal = "0 0";  // zero subspace of r2 is not maximal
  CHECK(run_analyze(r2_text, o).exit_code == 1);

  AnalyzeOptions e;
  e.enumerate = true;
  CHECK_THROWS_AS(run_analyze(r2_text, e), CapabilityError);
  const auto h3 = run_analyze(to_file_text(heisenberg<GF2>().algebra), e);
  CHECK(h3.exit_code == 0);
  CHECK(h3.report["maximals"].size() == 3);

  AnalyzeOptions both;
  both.enumerate = true;
  both.maximal = "0 1";
  CHECK_THROWS_AS(run_analyze(r2_text, both), DomainError);
}
