#pragma once

#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "gswcert/certificate.hpp"

namespace gswcert {

struct NamedCheck {
  std::string name;
  bool pass;
};

// The certificate check suite.  The core list backs CertificateRecord.checks
// (root_equation, residuals, positivity, bridge, margin_link, tail_square,
// conservation_right, conservation_weighted_left, terminal_quadratic,
// ledger, solver_crosscheck); `extended` appends the remaining identity
// families (tail normal forms, outer-face polynomial, alternating-sum
// suite, spurious factor, dual identity on random trajectories, face signs).
std::vector<NamedCheck> run_checks(long n, const PrecisionConfig& cfg, bool extended);

struct CertificateRecord {
  long n;
  long precision_bits;
  long tolerance_exponent;
  std::string rho;
  std::string alpha;
  std::string rate;
  std::vector<std::string> d;
  std::vector<std::string> c;
  std::vector<std::string> a;
  std::vector<std::string> b;
  std::string residual_max_over_r;
  std::string margins_min;
  std::vector<NamedCheck> checks;

  bool all_pass() const;
};

CertificateRecord build_record(long n, const PrecisionConfig& cfg);

nlohmann::json record_to_json(const CertificateRecord& record);
std::string record_to_csv(const CertificateRecord& record);

struct TableRow {
  long n;
  std::string rho;
  std::string alpha_star;
  std::string r_star;
  std::string residual_max_over_r;
  bool all_checks_pass;
};

TableRow build_table_row(long n, const PrecisionConfig& cfg);

std::string table_to_csv(const std::vector<TableRow>& rows);
nlohmann::json table_to_json(const std::vector<TableRow>& rows);

}  // namespace gswcert
