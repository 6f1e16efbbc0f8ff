// gwasym: exact curve counts, bound checks, singularity analysis and
// asymptotic verification from the command line.
//
//   gwasym compute p2 --genus 0 --dmax 400
//   gwasym bounds .gwasym/p2-g0-d400.tsv
//   gwasym singularity p2-g0-d400.tsv --coeffs 40
//   gwasym verify --suite asymptotics p2-g0-d400.tsv p2-g1-d400.tsv
//
// Reports are JSON on stdout; progress and diagnostics go to stderr.

#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "gwasym/cli/commands.hpp"

using namespace gwasym;

namespace {

void emit(const cli::CommandResult& r, const std::string& report_path) {
  const std::string text = r.report.dump(2) + "\n";
  std::cout << text;
  if (!report_path.empty()) io::write_atomic(report_path, text);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact Gromov-Witten counts of P2 and P3 and their asymptotics"};
  app.require_subcommand(1);
  std::string report_path;
  app.add_option("--report", report_path, "Also write the JSON report to this file");

  cli::ComputeOptions compute;
  auto* c = app.add_subcommand("compute", "Compute a count table and write it to the cache");
  c->add_option("target", compute.target, "p2 or p3")->required();
  c->add_option("--genus", compute.genus, "0 or 1 (P3: 0 only)")->default_val(0);
  c->add_option("--dmax", compute.d_max, "Largest degree")->required();
  c->add_option("--out", compute.out, "Cache file (default: $GWASYM_CACHE_DIR or ./.gwasym)");
  c->add_option("--format", compute.format, "text, csv or json")->default_val("text");

  cli::BoundsOptions bounds;
  auto* b = app.add_subcommand("bounds", "Check the stated bounds against a cached table");
  b->add_option("cache", bounds.cache, "Cache file")->required();
  b->add_option("--stirling-dmax", bounds.stirling_dmax, "Range of the central binomial check")
      ->default_val(10000)
      ->check(CLI::PositiveNumber);
  b->add_option("--prec", bounds.prec, "Working precision in bits")->default_val(kDefaultPrecision)->check(CLI::Range(64, 4096));

  cli::SingularityOptions sing;
  int m_prime = -2;
  auto* s = app.add_subcommand("singularity", "Locate x0 and build the expansion at the singular point");
  s->add_option("cache", sing.cache, "P2 genus-0 cache file")->required();
  s->add_option("--prec", sing.prec, "Working precision in bits")->default_val(kDefaultPrecision)->check(CLI::Range(64, 4096));
  s->add_option("--coeffs", sing.coeffs, "Number M of expansion coefficients")->default_val(40)->check(CLI::Range(6, 400));
  s->add_option("--terms", sing.terms, "Series terms D for the root solve (default: all)")->check(CLI::NonNegativeNumber);
  s->add_option("--mprime", m_prime, "Last genus-1 coefficient index (default M - 7)")->check(CLI::Range(-1, 400));
  s->add_option("--ode-order", sing.ode_order, "Truncation order of the ODE residual check")->default_val(20)->check(CLI::Range(6, 400));

  cli::VerifyOptions verify;
  std::vector<std::string> models, rays;
  auto* v = app.add_subcommand("verify", "Empirical checks of the asymptotic behaviour");
  v->add_option("--suite", verify.suite, "asymptotics, monotone or rays")
      ->required()
      ->check(CLI::IsMember({"asymptotics", "monotone", "rays"}));
  v->add_option("caches", verify.caches, "Cache files");
  v->add_option("--model", models, "Model spec a,k,n1 (monotone suite; repeatable)");
  v->add_option("--ray", rays, "Ray alpha,beta (rays suite; repeatable)");
  v->add_option("--prec", verify.prec, "Working precision in bits")->default_val(kDefaultPrecision)->check(CLI::Range(64, 4096));
  v->add_option("--coeffs", verify.coeffs, "Expansion coefficients for predictions")->default_val(40)->check(CLI::Range(8, 400));
  v->add_option("--orders", verify.orders, "Truncation orders N for the error table");
  v->add_option("--degrees", verify.degrees, "Degrees for the error table (default: every 50)");
  v->add_option("--window-lo", verify.window_lo, "Exponent fit window start")->default_val(200);
  v->add_option("--window-hi", verify.window_hi, "Exponent fit window end")->default_val(400);
  v->add_option("--ratio-order", verify.ratio_order, "Ratio extrapolation order")->default_val(12)->check(CLI::Range(0, 64));
  v->add_option("--model-dmax", verify.model_dmax, "Degrees computed for model sequences")->default_val(200)->check(CLI::Range(3, 5000));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? cli::exit_ok : cli::exit_usage;
  }

  try {
    cli::CommandResult result;
    if (c->parsed()) {
      result = cli::cmd_compute(compute, std::cerr);
    } else if (b->parsed()) {
      result = cli::cmd_bounds(bounds, std::cerr);
    } else if (s->parsed()) {
      if (m_prime >= -1) sing.m_prime = m_prime;
      result = cli::cmd_singularity(sing, std::cerr);
    } else {
      for (const auto& m : models) verify.models.push_back(cli::parse_model(m));
      for (const auto& r : rays) verify.rays.push_back(cli::parse_ray(r));
      result = cli::cmd_verify(verify, std::cerr);
    }
    emit(result, report_path);
    if (result.exit_code == cli::exit_verification) std::cerr << "verification failed\n";
    return result.exit_code;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::exit_computation;
  }
}
