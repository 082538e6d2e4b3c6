#include "gegenorm/cli.hpp"

#include <cinttypes>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace gegenorm {
namespace {

using nlohmann::json;

const char* command_name(Command c) {
  switch (c) {
    case Command::table: return "table";
    case Command::verify: return "verify";
    case Command::asymptote: return "asymptote";
    case Command::bench: return "bench";
  }
  return "?";
}

const char* mode_name(Mode m) { return m == Mode::exact ? "exact" : "float"; }

json rational_json(const Rational& r) {
  return json{{"num", r.num().get_str()}, {"den", r.den().get_str()}};
}

Rational rational_from_json(const json& j) {
  if (!j.is_object() || !j.contains("num") || !j.contains("den"))
    throw std::runtime_error("expected an object with num and den");
  auto num = Rational::parse(j.at("num").get<std::string>());
  auto den = Rational::parse(j.at("den").get<std::string>());
  if (!num || !den || !num->is_integer() || !den->is_integer())
    throw std::runtime_error("num and den must be integer strings");
  return *num / *den;
}

json cell_json(const Cell& c) {
  if (c.is_exact()) return rational_json(c.rat());
  return json(c.dbl());
}

Cell cell_from_json(const json& j) {
  if (j.is_object()) return Cell::exact(rational_from_json(j));
  if (j.is_number()) return Cell::real(j.get<double>());
  throw std::runtime_error("value cell must be a number or a num/den object");
}

json config_json(const RunConfig& cfg) {
  json lam = json::array();
  for (const Rational& r : cfg.lambdas) lam.push_back(rational_json(r));
  json j{{"command", command_name(cfg.command)},
         {"mode", mode_name(cfg.mode)},
         {"max_n", cfg.max_n},
         {"lambda", lam},
         {"seed", cfg.seed},
         {"degree_budget", cfg.degree_budget}};
  if (cfg.command == Command::asymptote) j["n_grid"] = cfg.n_grid;
  return j;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  out.push_back(cur);
  return out;
}

Cell cell_from_text(const std::string& s) {
  if (s.find_first_of(".eEni") != std::string::npos) {
    char* end = nullptr;
    double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0')
      throw std::runtime_error("bad numeric cell: " + s);
    return Cell::real(v);
  }
  auto r = Rational::parse(s);
  if (!r) throw std::runtime_error("bad rational cell: " + s);
  return Cell::exact(*r);
}

Rational rational_from_text(const std::string& s) {
  auto r = Rational::parse(s);
  if (!r) throw std::runtime_error("bad rational cell: " + s);
  return *r;
}

unsigned unsigned_from_text(const std::string& s) {
  char* end = nullptr;
  unsigned long v = std::strtoul(s.c_str(), &end, 10);
  if (end == s.c_str() || *end != '\0')
    throw std::runtime_error("bad integer cell: " + s);
  return static_cast<unsigned>(v);
}

std::string opt_text(const std::optional<double>& v) {
  return v ? format_double(*v) : std::string();
}

constexpr const char* kTableHeader = "lambda,n,norm,weighted_norm,endpoint,source";

}  // namespace

Cell Cell::exact(Rational r) {
  Cell c;
  c.r_ = std::move(r);
  c.exact_ = true;
  return c;
}

Cell Cell::real(double d) {
  Cell c;
  c.d_ = d;
  return c;
}

const Rational& Cell::rat() const {
  if (!exact_) throw std::logic_error("cell holds a double, not a rational");
  return r_;
}

double Cell::dbl() const {
  if (exact_) throw std::logic_error("cell holds a rational, not a double");
  return d_;
}

std::string Cell::text() const { return exact_ ? r_.str() : format_double(d_); }

bool operator==(const Cell& a, const Cell& b) {
  if (a.exact_ != b.exact_) return false;
  return a.exact_ ? a.r_ == b.r_ : a.d_ == b.d_;
}

bool operator==(const TableRow& a, const TableRow& b) {
  return a.lambda == b.lambda && a.n == b.n && a.norm == b.norm &&
         a.weighted == b.weighted && a.endpoint == b.endpoint && a.source == b.source;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  std::string s(buf);
  // force a mark so the text stays distinguishable from an exact integer
  if (s.find_first_of(".eEni") == std::string::npos) s += ".0";
  return s;
}

unsigned long VerifyReport::total_checks() const {
  unsigned long t = 0;
  for (const auto& s : identities) t += s.checks;
  return t;
}

unsigned long VerifyReport::total_fail() const {
  unsigned long t = 0;
  for (const auto& s : identities) t += s.fail;
  return t;
}

std::string table_to_csv(const std::vector<TableRow>& rows) {
  std::ostringstream out;
  out << kTableHeader << '\n';
  for (const TableRow& r : rows) {
    out << r.lambda.str() << ',' << r.n << ',' << r.norm.text() << ','
        << r.weighted.text() << ',' << r.endpoint.text() << ',' << r.source << '\n';
  }
  return out.str();
}

std::vector<TableRow> table_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty table");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kTableHeader) throw std::runtime_error("bad table header: " + line);
  std::vector<TableRow> rows;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto f = split(line, ',');
    if (f.size() != 6) throw std::runtime_error("bad table row: " + line);
    TableRow r;
    r.lambda = rational_from_text(f[0]);
    r.n = unsigned_from_text(f[1]);
    r.norm = cell_from_text(f[2]);
    r.weighted = cell_from_text(f[3]);
    r.endpoint = cell_from_text(f[4]);
    r.source = f[5];
    rows.push_back(std::move(r));
  }
  return rows;
}

std::string table_to_json(const RunConfig& cfg, const std::vector<TableRow>& rows) {
  json body = json::array();
  for (const TableRow& r : rows) {
    body.push_back(json{{"lambda", rational_json(r.lambda)},
                        {"n", r.n},
                        {"norm", cell_json(r.norm)},
                        {"weighted_norm", cell_json(r.weighted)},
                        {"endpoint", cell_json(r.endpoint)},
                        {"source", r.source}});
  }
  json doc{{"config", config_json(cfg)},
           {"rows", body},
           {"summary", json{{"rows", rows.size()}}}};
  return doc.dump(2) + "\n";
}

std::vector<TableRow> table_from_json(const std::string& text) {
  json doc = json::parse(text);
  if (!doc.is_object() || !doc.contains("rows"))
    throw std::runtime_error("table document needs a rows array");
  std::vector<TableRow> rows;
  for (const json& j : doc.at("rows")) {
    TableRow r;
    r.lambda = rational_from_json(j.at("lambda"));
    r.n = j.at("n").get<unsigned>();
    r.norm = cell_from_json(j.at("norm"));
    r.weighted = cell_from_json(j.at("weighted_norm"));
    r.endpoint = cell_from_json(j.at("endpoint"));
    r.source = j.at("source").get<std::string>();
    rows.push_back(std::move(r));
  }
  return rows;
}

std::string verify_to_csv(const VerifyReport& report) {
  std::ostringstream out;
  out << "identity,checks,pass,fail,seconds\n";
  char buf[32];
  for (const IdentityStat& s : report.identities) {
    std::snprintf(buf, sizeof buf, "%.6f", s.seconds);
    out << s.name << ',' << s.checks << ',' << s.pass << ',' << s.fail << ',' << buf << '\n';
  }
  return out.str();
}

std::string verify_to_json(const RunConfig& cfg, const VerifyReport& report) {
  json body = json::array();
  for (const IdentityStat& s : report.identities) {
    body.push_back(json{{"identity", s.name},
                        {"checks", s.checks},
                        {"pass", s.pass},
                        {"fail", s.fail},
                        {"seconds", s.seconds}});
  }
  json summary{{"checks", report.total_checks()},
               {"fail", report.total_fail()},
               {"seconds", report.seconds}};
  if (report.first_failure) {
    const Counterexample& c = *report.first_failure;
    summary["counterexample"] = json{{"identity", c.identity},
                                     {"lambda", rational_json(c.lambda)},
                                     {"n", c.n},
                                     {"detail", c.detail}};
  } else {
    summary["counterexample"] = nullptr;
  }
  json doc{{"config", config_json(cfg)}, {"rows", body}, {"summary", summary}};
  return doc.dump(2) + "\n";
}

std::string asymptote_to_csv(const std::vector<AsymptoteRow>& rows,
                             const std::vector<AsymptoteSummary>& summaries) {
  std::ostringstream out;
  out << "lambda,n,degree,measured,leading,two_term,ratio,norm_bound\n";
  for (const AsymptoteRow& r : rows) {
    out << r.lambda.str() << ',' << r.n << ',' << r.degree << ','
        << format_double(r.measured) << ',' << format_double(r.leading) << ','
        << opt_text(r.two_term) << ',' << format_double(r.ratio) << ','
        << opt_text(r.bound) << '\n';
  }
  out << '\n';
  out << "lambda,fitted_exponent,claimed_exponent,fit_residual,note\n";
  for (const AsymptoteSummary& s : summaries) {
    out << s.lambda.str() << ','
        << (s.fit ? format_double(s.fit->exponent) : std::string()) << ','
        << format_double(s.claimed_exp) << ','
        << (s.fit ? format_double(s.fit->residual) : std::string()) << ','
        << s.note << '\n';
  }
  return out.str();
}

std::string asymptote_to_json(const RunConfig& cfg, const std::vector<AsymptoteRow>& rows,
                              const std::vector<AsymptoteSummary>& summaries) {
  json body = json::array();
  for (const AsymptoteRow& r : rows) {
    json j{{"lambda", rational_json(r.lambda)},
           {"n", r.n},
           {"degree", r.degree},
           {"measured", r.measured},
           {"leading", r.leading},
           {"ratio", r.ratio}};
    j["two_term"] = r.two_term ? json(*r.two_term) : json(nullptr);
    j["norm_bound"] = r.bound ? json(*r.bound) : json(nullptr);
    body.push_back(std::move(j));
  }
  json sums = json::array();
  for (const AsymptoteSummary& s : summaries) {
    json j{{"lambda", rational_json(s.lambda)},
           {"claimed_exponent", s.claimed_exp},
           {"note", s.note}};
    if (s.fit) {
      j["fitted_exponent"] = s.fit->exponent;
      j["fit_residual"] = s.fit->residual;
    } else {
      j["fitted_exponent"] = nullptr;
      j["fit_residual"] = nullptr;
    }
    sums.push_back(std::move(j));
  }
  json doc{{"config", config_json(cfg)}, {"rows", body}, {"summary", sums}};
  return doc.dump(2) + "\n";
}

std::string bench_to_csv(const std::vector<BenchRow>& rows) {
  std::ostringstream out;
  out << "lambda,max_n,mode,lift_seconds,oracle_seconds,identical,max_rel_dev\n";
  for (const BenchRow& r : rows) {
    out << r.lambda.str() << ',' << r.n_max << ',' << mode_name(r.mode) << ','
        << opt_text(r.lift_seconds) << ',' << opt_text(r.oracle_seconds) << ','
        << (r.equal ? "true" : "false") << ',' << opt_text(r.max_rel_dev) << '\n';
  }
  return out.str();
}

std::string bench_to_json(const RunConfig& cfg, const std::vector<BenchRow>& rows) {
  json body = json::array();
  for (const BenchRow& r : rows) {
    json j{{"lambda", rational_json(r.lambda)},
           {"max_n", r.n_max},
           {"mode", mode_name(r.mode)},
           {"identical", r.equal}};
    j["lift_seconds"] = r.lift_seconds ? json(*r.lift_seconds) : json(nullptr);
    j["oracle_seconds"] = r.oracle_seconds ? json(*r.oracle_seconds) : json(nullptr);
    j["max_rel_dev"] = r.max_rel_dev ? json(*r.max_rel_dev) : json(nullptr);
    body.push_back(std::move(j));
  }
  json doc{{"config", config_json(cfg)},
           {"rows", body},
           {"summary", json{{"rows", rows.size()}}}};
  return doc.dump(2) + "\n";
}

}  // namespace gegenorm
