#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "gswcert/scalar.hpp"

namespace {

struct CliResult {
  int exit_code;
  std::string out;
  std::string err;
};

CliResult run_cli(const std::string& args, const std::string& env = "") {
  const std::string out_path = "/tmp/gswcert_test_out.txt";
  const std::string err_path = "/tmp/gswcert_test_err.txt";
  std::string cmd = env + " " + std::string(GSWCERT_CLI_PATH) + " " + args + " > " + out_path +
                    " 2> " + err_path;
  int status = std::system(cmd.c_str());
  auto slurp = [](const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
  };
  int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return CliResult{code, slurp(out_path), slurp(err_path)};
}

}  // namespace

TEST_CASE("root prints the balanced constants") {
  CliResult r = run_cli("root --n 3");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("rho 6.7033204760309682774318642711") != std::string::npos);
  CHECK(r.out.find("alpha_star 1.6703320476") != std::string::npos);
  CHECK(r.out.find("r_star 4.5363849569") != std::string::npos);
}

TEST_CASE("horizon below 3 is a usage error") {
  CliResult r = run_cli("build --n 2");
  CHECK(r.exit_code == 2);
  CHECK(r.err.find("horizon below 3") != std::string::npos);
}

TEST_CASE("unknown arguments exit with the usage code") {
  CHECK(run_cli("frobnicate --n 3").exit_code == 2);
  CHECK(run_cli("root").exit_code == 2);
}

TEST_CASE("verify succeeds on a small horizon") {
  CliResult r = run_cli("verify --n 3");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("root_equation: PASS") != std::string::npos);
  CHECK(r.out.find("solver_crosscheck: PASS") != std::string::npos);
  CHECK(r.out.find("all checks passed") != std::string::npos);
}

TEST_CASE("build emits a JSON record that round-trips decimal strings") {
  CliResult r = run_cli("build --n 4 --json");
  REQUIRE(r.exit_code == 0);
  nlohmann::json record = nlohmann::json::parse(r.out);
  CHECK(record["n"] == 4);
  CHECK(record["precision_bits"] == 256);
  CHECK(record["tolerance_exponent"] == 100);
  CHECK(record["d"].size() == 3);
  CHECK(record["c"].size() == 5);
  CHECK(record["a"].size() == 4);
  CHECK(record["b"].size() == 3);
  CHECK(record["checks"].size() == 11);
  for (const auto& [name, pass] : record["checks"].items()) CHECK(pass.get<bool>());
  // decimal strings survive a parse/serialize cycle bit for bit
  for (const auto& field : {"rho", "alpha", "rate", "residual_max_over_R", "margins_min"}) {
    std::string text = record[field].get<std::string>();
    gswcert::Scalar parsed = gswcert::Scalar::from_decimal(text, 256);
    CHECK(parsed.to_decimal() == text);
  }
  for (const auto& entry : record["d"]) {
    std::string text = entry.get<std::string>();
    CHECK(gswcert::Scalar::from_decimal(text, 256).to_decimal() == text);
  }
}

TEST_CASE("build csv uses the long row format") {
  CliResult r = run_cli("build --n 3 --csv");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.rfind("field,index,value\n", 0) == 0);
  CHECK(r.out.find("\nrho,,") != std::string::npos);
  CHECK(r.out.find("\nd,0,") != std::string::npos);
  CHECK(r.out.find("\nchecks.residuals,,1") != std::string::npos);
}

TEST_CASE("table rows are ordered and deterministic") {
  CliResult first = run_cli("table --n-min 3 --n-max 6 --format csv");
  CliResult second = run_cli("table --n-min 3 --n-max 6 --format csv");
  REQUIRE(first.exit_code == 0);
  CHECK(first.out == second.out);
  CHECK(first.out.rfind("n,rho,alpha_star,r_star,residual_max_over_R,all_checks_pass\n", 0) == 0);
  CHECK(first.out.find("\n3,") != std::string::npos);
  CHECK(first.out.find("\n6,") != std::string::npos);
}

TEST_CASE("envelope, simulate, and faces smoke") {
  CliResult env = run_cli("envelope --n 3 --alpha-min -1 --alpha-max 3.4 --points 7");
  CHECK(env.exit_code == 0);
  CHECK(env.out.rfind("alpha,quad,huber,envelope,r_star\n", 0) == 0);

  CliResult sim = run_cli("simulate --n 3 --alpha 1 --function quadratic");
  CHECK(sim.exit_code == 0);
  CHECK(sim.out.find("final_gap,0") != std::string::npos);

  CliResult faces = run_cli("faces --n 3 --samples 25 --seed 7");
  CHECK(faces.exit_code == 0);
  CHECK(faces.out.find("violations 0") != std::string::npos);
}

TEST_CASE("environment variable overrides the default precision") {
  CliResult narrow = run_cli("root --n 3", "GSWCERT_PRECISION=211");
  CHECK(narrow.exit_code == 0);
  // fewer significand bits, fewer serialized digits
  CliResult wide = run_cli("root --n 3");
  CHECK(narrow.out.size() < wide.out.size());
  CHECK(narrow.out.find("rho 6.70332047603") != std::string::npos);
  CliResult bad = run_cli("root --n 3", "GSWCERT_PRECISION=banana");
  CHECK(bad.exit_code == 2);
}
