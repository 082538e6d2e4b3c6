#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "gegenorm/asymptotics.hpp"
#include "gegenorm/norm_table.hpp"
#include "gegenorm/rational.hpp"

namespace gegenorm {

enum class Command { table, verify, asymptote, bench };
enum class Mode { exact, floating };
enum class Format { csv, json };

struct RunConfig {
  Command command = Command::table;
  std::vector<Rational> lambdas;
  unsigned max_n = 30;
  Mode mode = Mode::exact;
  Format format = Format::csv;
  std::optional<std::string> out_path;
  std::uint64_t seed = 2026;
  std::vector<unsigned> n_grid;  // asymptote grid; defaulted when empty
  unsigned degree_budget = kDefaultDegreeBudget;
  bool inject_fault = false;  // diagnostic hook: perturbs one coefficient
};

inline constexpr int kExitSuccess = 0;
inline constexpr int kExitIdentityFailure = 1;
inline constexpr int kExitBadArguments = 2;
inline constexpr int kExitIoOrMismatch = 3;

/// One exact-or-double value. Exact cells serialize as "p/q", double cells
/// with 17 significant digits and a forced decimal point (so a reader can
/// tell the two apart without out-of-band mode information).
class Cell {
 public:
  Cell() = default;
  static Cell exact(Rational r);
  static Cell real(double d);

  bool is_exact() const { return exact_; }
  const Rational& rat() const;
  double dbl() const;
  std::string text() const;

  friend bool operator==(const Cell& a, const Cell& b);

 private:
  Rational r_;
  double d_ = 0;
  bool exact_ = false;
};

std::string format_double(double v);

struct TableRow {
  Rational lambda;
  unsigned n = 0;
  Cell norm;
  Cell weighted;
  Cell endpoint;
  std::string source;  // oracle | recursion | closed_form

  friend bool operator==(const TableRow& a, const TableRow& b);
};

struct AsymptoteRow {
  Rational lambda;
  unsigned n = 0;       // the n the formulas are stated in
  unsigned degree = 0;  // degree of the measured polynomial at index λ+1
  double measured = 0;
  double leading = 0;
  std::optional<double> two_term;
  double ratio = 0;
  std::optional<double> bound;  // strict norm bound at the base index, when 0<λ<1
};

struct AsymptoteSummary {
  Rational lambda;
  std::optional<SlopeFit> fit;
  double claimed_exp = 0;
  std::string note;
};

struct IdentityStat {
  std::string name;
  unsigned long checks = 0;
  unsigned long pass = 0;
  unsigned long fail = 0;
  double seconds = 0;
};

struct Counterexample {
  std::string identity;
  Rational lambda;
  unsigned n = 0;
  std::string detail;
};

struct VerifyReport {
  std::vector<IdentityStat> identities;
  std::optional<Counterexample> first_failure;
  double seconds = 0;

  unsigned long total_checks() const;
  unsigned long total_fail() const;
};

struct BenchRow {
  Rational lambda;
  unsigned n_max = 0;
  Mode mode = Mode::exact;
  std::optional<double> lift_seconds;
  std::optional<double> oracle_seconds;
  bool equal = false;
  std::optional<double> max_rel_dev;  // float mode: deviation against the exact overlap
};

std::string table_to_csv(const std::vector<TableRow>& rows);
std::string table_to_json(const RunConfig& cfg, const std::vector<TableRow>& rows);
/// Both parsers throw std::runtime_error on malformed input.
std::vector<TableRow> table_from_csv(const std::string& text);
std::vector<TableRow> table_from_json(const std::string& text);

std::string verify_to_csv(const VerifyReport& report);
std::string verify_to_json(const RunConfig& cfg, const VerifyReport& report);

std::string asymptote_to_csv(const std::vector<AsymptoteRow>& rows,
                             const std::vector<AsymptoteSummary>& summaries);
std::string asymptote_to_json(const RunConfig& cfg, const std::vector<AsymptoteRow>& rows,
                              const std::vector<AsymptoteSummary>& summaries);

std::string bench_to_csv(const std::vector<BenchRow>& rows);
std::string bench_to_json(const RunConfig& cfg, const std::vector<BenchRow>& rows);

/// Runs cfg.command, writing the report to out (or cfg.out_path when set) and
/// diagnostics to err. Returns the process exit code.
int run_command(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace gegenorm
