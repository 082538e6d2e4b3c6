#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gegenorm/cli.hpp"

namespace {

using gegenorm::Rational;

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : text) {
    if (ch == ',') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  parts.push_back(cur);
  return parts;
}

bool parse_lambdas(const std::string& text, std::vector<Rational>& out, std::string& bad) {
  for (const std::string& piece : split_list(text)) {
    auto r = Rational::parse(piece);
    if (!r) {
      bad = piece;
      return false;
    }
    out.push_back(*r);
  }
  return true;
}

bool parse_grid(const std::string& text, std::vector<unsigned>& out, std::string& bad) {
  for (const std::string& piece : split_list(text)) {
    char* end = nullptr;
    unsigned long v = std::strtoul(piece.c_str(), &end, 10);
    if (piece.empty() || end == piece.c_str() || *end != '\0') {
      bad = piece;
      return false;
    }
    out.push_back(static_cast<unsigned>(v));
  }
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gegenbauer polynomial norm tables, identity verification and asymptote checks"};
  app.name("gegenorm");
  app.require_subcommand(1);

  std::string lambda_text;
  std::string grid_text;
  std::string mode_text = "exact";
  std::string format_text = "csv";
  std::string out_path;
  unsigned max_n = 30;
  std::uint64_t seed = 2026;
  bool inject = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--lambda", lambda_text,
                    "comma-separated indices, each p/q or an exact decimal");
    sub->add_option("--max-n", max_n, "largest degree / n to cover (default 30)");
    sub->add_option("--mode", mode_text, "exact or float (default exact)")
        ->check(CLI::IsMember({"exact", "float"}));
    sub->add_option("--format", format_text, "csv or json (default csv)")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--out", out_path, "write the report to this file instead of stdout");
    sub->add_option("--seed", seed, "seed for the randomized spot checks (default 2026)");
  };

  CLI::App* table = app.add_subcommand("table", "norm tables for the given indices");
  CLI::App* verify = app.add_subcommand("verify", "exact identity sweep over (index, n)");
  CLI::App* asym = app.add_subcommand("asymptote", "large-n validation of the norm asymptotes");
  CLI::App* bench = app.add_subcommand("bench", "recursion vs direct integration timing");
  for (CLI::App* sub : {table, verify, asym, bench}) add_common(sub);
  asym->add_option("--n", grid_text, "comma-separated n grid (default 32,64,128,256,512)");
  verify->add_flag("--inject-fault", inject)->group("");  // diagnostic hook

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? gegenorm::kExitSuccess : gegenorm::kExitBadArguments;
  }

  gegenorm::RunConfig cfg;
  if (table->parsed()) cfg.command = gegenorm::Command::table;
  if (verify->parsed()) cfg.command = gegenorm::Command::verify;
  if (asym->parsed()) cfg.command = gegenorm::Command::asymptote;
  if (bench->parsed()) cfg.command = gegenorm::Command::bench;
  cfg.max_n = max_n;
  cfg.seed = seed;
  cfg.inject_fault = inject;
  cfg.mode = mode_text == "float" ? gegenorm::Mode::floating : gegenorm::Mode::exact;
  cfg.format = format_text == "json" ? gegenorm::Format::json : gegenorm::Format::csv;
  if (!out_path.empty()) cfg.out_path = out_path;

  std::string bad;
  if (!lambda_text.empty() && !parse_lambdas(lambda_text, cfg.lambdas, bad)) {
    std::cerr << "cannot parse index '" << bad << "'; expected p/q or an exact decimal\n";
    return gegenorm::kExitBadArguments;
  }
  if (!grid_text.empty() && !parse_grid(grid_text, cfg.n_grid, bad)) {
    std::cerr << "cannot parse grid entry '" << bad << "'\n";
    return gegenorm::kExitBadArguments;
  }
  if (const char* env = std::getenv("GEGENORM_DEGREE_BUDGET")) {
    char* end = nullptr;
    unsigned long v = std::strtoul(env, &end, 10);
    if (*env == '\0' || end == env || *end != '\0' || v == 0) {
      std::cerr << "GEGENORM_DEGREE_BUDGET must be a positive integer\n";
      return gegenorm::kExitBadArguments;
    }
    cfg.degree_budget = static_cast<unsigned>(v);
  }

  return gegenorm::run_command(cfg, std::cout, std::cerr);
}
