// csec: validate, analyse and verify Lie algebras given by structure constants.
//
// Exit codes: 0 success, 1 verification failure (including Jacobi
// violations), 2 usage, format or capability error.

#include "csec/report.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty())
    std::cout << text;
  else
    csec::write_file(out_path, text);
}

void add_corpus_options(CLI::App& cmd, csec::VerifyOptions& o) {
  cmd.add_option("--field", o.field, "Field: q, gf2, gf3, gf5, gf7")
      ->check(CLI::IsMember({"q", "gf2", "gf3", "gf5", "gf7"}))
      ->capture_default_str();
  cmd.add_option("--max-dim", o.max_dim, "Largest corpus dimension")->check(CLI::Range(1, 8))->capture_default_str();
  cmd.add_option("--seed", o.seed, "Corpus seed")->capture_default_str();
  cmd.add_option("--target-count", o.target_count, "Corpus size target")->capture_default_str();
  cmd.add_option("--budget", o.budget, "Subspace enumeration budget per algebra")->capture_default_str();
  cmd.add_option("--jobs", o.jobs, "Worker threads (does not change the report)")
      ->check(CLI::Range(1u, 256u))
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"csec: c-sections and indices of maximal subalgebras of Lie algebras"};
  app.require_subcommand(1);
  app.set_version_flag("--version", csec::kToolVersion);

  std::string input, out;

  auto* validate = app.add_subcommand("validate", "Check an algebra file (format and Jacobi identity)");
  validate->add_option("input,--input", input, "Algebra file")->required();

  csec::AnalyzeOptions analyze_opts;
  std::string maximal_rows;
  auto* analyze = app.add_subcommand("analyze", "Report cores, sections and indices of maximal subalgebras");
  analyze->add_option("input,--input", input, "Algebra file")->required();
  auto* maximal_opt = analyze->add_option("--maximal", maximal_rows, "Basis rows of M, e.g. \"1 0 0; 0 1 0\"");
  auto* enumerate_opt = analyze->add_flag("--enumerate", analyze_opts.enumerate, "Every maximal subalgebra (GF(p))");
  maximal_opt->excludes(enumerate_opt);
  analyze->add_option("--budget", analyze_opts.budget, "Subspace enumeration budget")->capture_default_str();
  analyze->add_option("--out", out, "Report path (default: stdout)");

  std::string catalog_name, catalog_field = "q";
  bool catalog_list = false;
  auto* catalog = app.add_subcommand("catalog", "Write a catalog algebra as an algebra file");
  catalog->add_option("name", catalog_name, "Entry, e.g. sl2, gejn:1, abelian:3, direct_sum:sl2+r2");
  catalog->add_option("--field", catalog_field, "Field: q, gf2, gf3, gf5, gf7")
      ->check(CLI::IsMember({"q", "gf2", "gf3", "gf5", "gf7"}))
      ->capture_default_str();
  catalog->add_flag("--list", catalog_list, "List the entry names");
  catalog->add_option("--out", out, "Output path (default: stdout)");

  csec::VerifyOptions verify_opts;
  auto* verify = app.add_subcommand("verify", "Check the claim suite over a corpus");
  verify->add_option("--suite", verify_opts.suite, "Claim ids, or all")->delimiter(',');
  add_corpus_options(*verify, verify_opts);
  verify->add_option("--out", out, "Report path (default: stdout)");

  csec::VerifyOptions search_opts;
  auto* search = app.add_subcommand("search", "List non-solvable algebras with a maximal of c-index 0");
  add_corpus_options(*search, search_opts);
  search->add_option("--out", out, "Report path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (validate->parsed()) {
      const auto any = csec::load_algebra(input);
      return std::visit(
          [&](const auto& L) {
            const auto violations = csec::validate(L);
            if (violations.empty()) {
              std::cout << "valid: " << L.dim() << "-dimensional Lie algebra over " << L.field().name() << "\n";
              return 0;
            }
            std::cout << "Jacobi identity fails for " << violations.size() << " basis triple(s):\n";
            for (const auto& v : violations) std::cout << "  (" << v.i << ", " << v.j << ", " << v.k << ")\n";
            return 1;
          },
          any);
    }
    if (analyze->parsed()) {
      if (!maximal_opt->empty()) analyze_opts.maximal = maximal_rows;
      const auto r = csec::run_analyze(csec::read_file(input), analyze_opts);
      emit(r.report.dump(2) + "\n", out);
      return r.exit_code;
    }
    if (catalog->parsed()) {
      if (catalog_list) {
        std::cout << "abelian:<n>\nr2\nheisenberg\nupper_triangular:<n>\nsl2\nso3\ngejn:<k> (q only)\n"
                     "direct_sum:<entry>+<entry>[+...]\n";
        return 0;
      }
      if (catalog_name.empty()) throw csec::DomainError("catalog needs an entry name (see --list)");
      const std::string text = csec::with_field(catalog_field, [&]<class S>(std::type_identity<S>) {
        return csec::to_file_text(csec::catalog<S>(catalog_name).algebra);
      });
      emit(text, out);
      return 0;
    }
    if (verify->parsed()) {
      const auto r = csec::run_verify(verify_opts);
      emit(r.report.dump(2) + "\n", out);
      return r.exit_code;
    }
    if (search->parsed()) {
      const auto r = csec::run_search(search_opts);
      emit(r.report.dump(2) + "\n", out);
      return r.exit_code;
    }
  } catch (const csec::CapabilityError& e) {
    std::cerr << "capability error: " << e.what() << "\n";
    return 2;
  } catch (const csec::FormatError& e) {
    std::cerr << "format error: " << e.what() << "\n";
    return 2;
  } catch (const csec::DomainError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const csec::Anomaly& e) {
    std::cerr << "ANOMALY (contradicts a cited theorem; implementation bug): " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
