#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "gswcert/instances.hpp"
#include "gswcert/record.hpp"
#include "gswcert/reduced_solver.hpp"

namespace {

constexpr long kDefaultPrecision = 256;
constexpr long kDefaultToleranceExp = 100;

long default_precision() {
  const char* env = std::getenv("GSWCERT_PRECISION");
  if (env == nullptr || *env == '\0') return kDefaultPrecision;
  char* end = nullptr;
  long bits = std::strtol(env, &end, 10);
  if (end == nullptr || *end != '\0' || bits < 64)
    throw std::invalid_argument("GSWCERT_PRECISION must be an integer >= 64");
  return bits;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + out_path);
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"low-rank certificate builder and verifier for constant-step gradient descent"};
  app.require_subcommand(1);

  long n = 3;
  long precision = 0;
  long tolerance_exp = kDefaultToleranceExp;
  bool as_json = false, as_csv = false, all_identities = false;
  std::string out_path, format = "csv", function_name = "quadratic";
  std::string alpha_text = "0", alpha_min_text = "-1", alpha_max_text = "2";
  long n_min = 3, n_max = 10, points = 1000, samples = 1000;
  std::uint64_t seed = 7;

  CLI::App* cmd_root = app.add_subcommand("root", "print the balanced root and derived constants");
  cmd_root->add_option("--n", n, "horizon")->required();
  cmd_root->add_option("--precision", precision, "significand bits");

  CLI::App* cmd_build = app.add_subcommand("build", "emit the certificate record");
  cmd_build->add_option("--n", n, "horizon")->required();
  cmd_build->add_flag("--json", as_json, "JSON output (default)");
  cmd_build->add_flag("--csv", as_csv, "CSV output");
  cmd_build->add_option("--out", out_path, "output path (default stdout)");

  CLI::App* cmd_verify = app.add_subcommand("verify", "run the certificate check suite");
  cmd_verify->add_option("--n", n, "horizon")->required();
  cmd_verify->add_option("--tolerance-exp", tolerance_exp, "tolerance exponent t");
  cmd_verify->add_flag("--all-identities", all_identities, "include every identity family");

  CLI::App* cmd_table = app.add_subcommand("table", "one record per horizon");
  cmd_table->add_option("--n-min", n_min, "first horizon")->required();
  cmd_table->add_option("--n-max", n_max, "last horizon")->required();
  cmd_table->add_option("--format", format, "csv|json")
      ->check(CLI::IsMember({"csv", "json"}));

  CLI::App* cmd_env = app.add_subcommand("envelope", "lower-envelope values on a step grid");
  cmd_env->add_option("--n", n, "horizon")->required();
  cmd_env->add_option("--alpha-min", alpha_min_text, "grid start")->required();
  cmd_env->add_option("--alpha-max", alpha_max_text, "grid end")->required();
  cmd_env->add_option("--points", points, "grid size")->required();

  CLI::App* cmd_sim = app.add_subcommand("simulate", "run one lower-bound instance");
  cmd_sim->add_option("--n", n, "horizon")->required();
  cmd_sim->add_option("--alpha", alpha_text, "constant step")->required();
  cmd_sim->add_option("--function", function_name, "quadratic|huber")
      ->check(CLI::IsMember({"quadratic", "huber"}));

  CLI::App* cmd_faces = app.add_subcommand("faces", "sample the boundary sign structure");
  cmd_faces->add_option("--n", n, "horizon")->required();
  cmd_faces->add_option("--samples", samples, "samples per face");
  cmd_faces->add_option("--seed", seed, "RNG seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }

  try {
    long bits = precision > 0 ? precision : default_precision();
    gswcert::PrecisionConfig cfg = gswcert::configure(bits, tolerance_exp);

    if (cmd_root->parsed()) {
      gswcert::RootParams params = gswcert::solve_root(n, cfg);
      std::cout << "rho " << params.rho.to_decimal() << "\n";
      std::cout << "alpha_star " << params.alpha.to_decimal() << "\n";
      std::cout << "r_star " << params.rate.to_decimal() << "\n";
      return 0;
    }

    if (cmd_build->parsed()) {
      if (as_json && as_csv) {
        std::cerr << "choose one of --json or --csv\n";
        return 2;
      }
      gswcert::CertificateRecord record = gswcert::build_record(n, cfg);
      emit(as_csv ? gswcert::record_to_csv(record)
                  : gswcert::record_to_json(record).dump(2) + "\n",
           out_path);
      return record.all_pass() ? 0 : 1;
    }

    if (cmd_verify->parsed()) {
      std::vector<gswcert::NamedCheck> checks = gswcert::run_checks(n, cfg, all_identities);
      bool all = true;
      for (const gswcert::NamedCheck& c : checks) {
        std::cout << c.name << ": " << (c.pass ? "PASS" : "FAIL") << "\n";
        all = all && c.pass;
      }
      std::cout << (all ? "all checks passed" : "CHECKS FAILED") << "\n";
      return all ? 0 : 1;
    }

    if (cmd_table->parsed()) {
      if (n_min < 3 || n_max < n_min) {
        std::cerr << "need 3 <= n-min <= n-max\n";
        return 2;
      }
      std::vector<gswcert::TableRow> rows;
      for (long k = n_min; k <= n_max; ++k) rows.push_back(gswcert::build_table_row(k, cfg));
      std::cout << (format == "json" ? gswcert::table_to_json(rows).dump(2) + "\n"
                                     : gswcert::table_to_csv(rows));
      for (const gswcert::TableRow& r : rows)
        if (!r.all_checks_pass) return 1;
      return 0;
    }

    if (cmd_env->parsed()) {
      gswcert::RootParams params = gswcert::solve_root(n, cfg);
      gswcert::Scalar lo = gswcert::Scalar::from_decimal(alpha_min_text, cfg.precision_bits);
      gswcert::Scalar hi = gswcert::Scalar::from_decimal(alpha_max_text, cfg.precision_bits);
      if (points < 2 || !(lo < hi)) {
        std::cerr << "need alpha-min < alpha-max and points >= 2\n";
        return 2;
      }
      std::cout << "alpha,quad,huber,envelope,r_star\n";
      gswcert::Scalar span = hi - lo;
      for (long k = 0; k < points; ++k) {
        gswcert::Scalar alpha = lo + span * k / (points - 1);
        gswcert::LowerEnvelopePoint p = gswcert::envelope_point(n, alpha);
        std::cout << p.alpha.to_decimal() << "," << p.quad_value.to_decimal() << ","
                  << (p.huber_value ? p.huber_value->to_decimal() : std::string()) << ","
                  << p.envelope.to_decimal() << "," << params.rate.to_decimal() << "\n";
      }
      return 0;
    }

    if (cmd_sim->parsed()) {
      gswcert::Scalar alpha = gswcert::Scalar::from_decimal(alpha_text, cfg.precision_bits);
      gswcert::SimRun run = function_name == "huber" ? gswcert::huber_run(n, alpha)
                                                     : gswcert::quad_run(n, alpha);
      std::cout << "k,x_k\n";
      for (std::size_t k = 0; k < run.iterates.size(); ++k)
        std::cout << k << "," << run.iterates[k].to_decimal() << "\n";
      std::cout << "final_gap," << run.final_gap.to_decimal() << "\n";
      return 0;
    }

    if (cmd_faces->parsed()) {
      gswcert::FaceScanReport report = gswcert::face_sign_scan(n, samples, seed, cfg);
      std::cout << "n " << report.n << "\nsamples " << report.samples << "\nseed " << report.seed
                << "\nviolations " << report.violations << "\n";
      for (const gswcert::FaceViolation& v : report.details) {
        std::cout << "violation face=" << v.face << " sample=" << v.sample << " d=[";
        for (std::size_t i = 0; i < v.witness.size(); ++i)
          std::cout << (i ? "," : "") << v.witness[i];
        std::cout << "]\n";
      }
      return report.violations == 0 ? 0 : 1;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
  return 2;
}
