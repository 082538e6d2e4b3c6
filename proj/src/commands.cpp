#include "gegenorm/cli.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <random>
#include <sstream>
#include <stdexcept>

namespace gegenorm {
namespace {

class Stopwatch {
 public:
  Stopwatch() : t0_(std::chrono::steady_clock::now()) {}
  double elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
  }

 private:
  std::chrono::steady_clock::time_point t0_;
};

std::vector<Rational> default_sweep() {
  return {Rational(-1, 4), Rational(1, 4), Rational(1, 2), Rational(1),
          Rational(3, 2),  Rational(2),    Rational(5, 2)};
}

std::string emit_table(const RunConfig& cfg, const std::vector<TableRow>& rows) {
  return cfg.format == Format::csv ? table_to_csv(rows) : table_to_json(cfg, rows);
}

bool over_budget(const RunConfig& cfg, unsigned requested, std::ostream& err) {
  if (requested <= cfg.degree_budget) return false;
  err << "degree " << requested << " exceeds the exact-mode budget of " << cfg.degree_budget
      << " (raise GEGENORM_DEGREE_BUDGET to allow it)\n";
  return true;
}

// ---- table ----

void append_exact_rows(const Lambda& idx, unsigned max_n, std::vector<TableRow>& rows) {
  auto fam = family_cache().at_least(idx, max_n);
  NormTable t = norm_table_oracle(*fam, max_n);
  for (unsigned n = 0; n <= max_n; ++n) {
    rows.push_back({idx.value(), n, Cell::exact(t.norms[n]),
                    Cell::exact(exact_weighted_l2_norm(fam->poly(n))),
                    Cell::exact(endpoint_value(idx, n)), "oracle"});
  }
}

void append_float_rows(const Lambda& idx, unsigned max_n, std::vector<TableRow>& rows) {
  const Rational& lv = idx.value();
  const unsigned M = max_n;
  std::vector<double> norms;
  std::vector<double> weighted(M + 1);
  const char* src = "oracle";

  if (lv == Rational(1)) {
    norms = float_base_table(idx, M).norms;
    src = "closed_form";
    // no closed form for the weighted column at index 1; integrate and round
    auto fam = family_cache().at_least(idx, M);
    for (unsigned k = 0; k <= M; ++k)
      weighted[k] = exact_weighted_l2_norm(fam->poly(k)).to_double();
  } else if (lv == Rational(2)) {
    norms = float_base_table(idx, M).norms;
    src = "closed_form";
    for (unsigned k = 0; k <= M; ++k)
      weighted[k] = closed_form_lambda2(k + 2).weighted.to_double();
  } else if (Lambda::valid(lv - 1)) {
    Lambda below(lv - 1);
    NormTableF base = float_base_table(below, M + 2);
    EndpointFnF ep = endpoint_provider_f(below);
    norms = lift_norms(base, ep, M + 2).norms;
    src = "recursion";
    for (unsigned k = 0; k <= M; ++k) weighted[k] = weighted_norm_closed_f(base, ep, k + 1);
  } else {
    auto fam = family_cache().at_least(idx, M);
    NormTable t = norm_table_oracle(*fam, M);
    norms.resize(M + 1);
    for (unsigned k = 0; k <= M; ++k) {
      norms[k] = t.norms[k].to_double();
      weighted[k] = exact_weighted_l2_norm(fam->poly(k)).to_double();
    }
  }

  for (unsigned n = 0; n <= M; ++n) {
    rows.push_back({lv, n, Cell::real(norms[n]), Cell::real(weighted[n]),
                    Cell::real(endpoint_value_f(idx, n)), src});
  }
}

int cmd_table(const RunConfig& cfg, std::ostream& body, std::ostream& err) {
  if (cfg.lambdas.empty()) {
    err << "table needs at least one --lambda value\n";
    return kExitBadArguments;
  }
  if (over_budget(cfg, cfg.max_n, err)) return kExitBadArguments;
  std::vector<TableRow> rows;
  for (const Rational& lv : cfg.lambdas) {
    Lambda idx(lv);
    if (cfg.mode == Mode::exact)
      append_exact_rows(idx, cfg.max_n, rows);
    else
      append_float_rows(idx, cfg.max_n, rows);
  }
  body << emit_table(cfg, rows);
  return kExitSuccess;
}

// ---- verify ----

class StatBook {
 public:
  explicit StatBook(VerifyReport& rep) : rep_(rep) {}

  IdentityStat& stat(const std::string& name) {
    auto it = index_.find(name);
    if (it == index_.end()) {
      it = index_.emplace(name, rep_.identities.size()).first;
      rep_.identities.push_back(IdentityStat{name, 0, 0, 0, 0});
    }
    return rep_.identities[it->second];
  }

  void record(const std::string& name, const Rational& lv, unsigned n, bool ok,
              const std::string& detail) {
    IdentityStat& s = stat(name);
    ++s.checks;
    if (ok) {
      ++s.pass;
    } else {
      ++s.fail;
      if (!rep_.first_failure) rep_.first_failure = Counterexample{name, lv, n, detail};
    }
  }

 private:
  VerifyReport& rep_;
  std::map<std::string, std::size_t> index_;
};

void sweep_index(const RunConfig& cfg, std::size_t pos, const Rational& lv, StatBook& book) {
  const unsigned M = cfg.max_n;  // ≥ 2, checked by the caller
  Lambda idx(lv);
  Lambda up = idx.raised();

  std::shared_ptr<const GegenbauerFamily> base;
  if (cfg.inject_fault && pos == 0) {
    // perturb one even-parity coefficient; must surface as a counterexample
    GegenbauerFamily clean = build_family(idx, M);
    std::vector<DensePoly> polys;
    for (unsigned n = 0; n <= M; ++n) polys.push_back(clean.poly(n));
    polys[2] = polys[2] + DensePoly::constant(Rational(1, 1000000));
    base = std::make_shared<GegenbauerFamily>(
        GegenbauerFamily::from_parts(idx, std::move(polys)));
  } else {
    base = family_cache().at_least(idx, M);
  }
  auto lifted = family_cache().at_least(up, M - 1);
  NormTable baseT = norm_table_oracle(*base);
  EndpointFn ep = endpoint_provider(idx);

  auto timed = [&book](const char* name, const std::function<void()>& fn) {
    Stopwatch w;
    fn();
    // fn records at least once, so the stat row exists
    book.stat(name).seconds += w.elapsed();
  };

  timed("parity", [&] {
    for (unsigned n = 0; n <= M; ++n) {
      const DensePoly& p = base->poly(n);
      bool ok = true;
      for (long k = 0; k <= p.degree(); ++k)
        if (((static_cast<long>(n) - k) & 1) != 0 && !p.coeff(static_cast<std::size_t>(k)).is_zero())
          ok = false;
      book.record("parity", lv, n, ok, "a coefficient of opposite parity is nonzero");
    }
  });

  timed("endpoint_product", [&] {
    for (unsigned n = 0; n <= M; ++n) {
      bool ok = evaluate(base->poly(n), Rational(1)) == endpoint_value(idx, n);
      book.record("endpoint_product", lv, n, ok,
                  "direct evaluation at 1 disagrees with the rising product");
    }
  });

  timed("endpoint_index_raise", [&] {
    const Rational two_lam = 2 * lv;
    for (unsigned n = 0; n <= M; ++n) {
      const Rational nn(static_cast<long>(n));
      bool ok = endpoint_value(up, n) * two_lam * (two_lam + 1) ==
                (two_lam + nn + 1) * (two_lam + nn) * endpoint_value(idx, n);
      book.record("endpoint_index_raise", lv, n, ok,
                  "raised-index endpoint breaks the rising-product ratio");
    }
  });

  if (lv.sign() > 0) {
    timed("endpoint_dominance", [&] {
      std::mt19937_64 rng(cfg.seed * 1000003ULL + pos);
      for (int i = 0; i < 1000; ++i) {
        long q = 1 + static_cast<long>(rng() % 64);
        long p = static_cast<long>(rng() % static_cast<unsigned long>(2 * q + 1)) - q;
        unsigned n = static_cast<unsigned>(rng() % (M + 1));
        Rational x(p, q);
        bool ok = abs(evaluate(base->poly(n), x)) <= endpoint_value(idx, n);
        book.record("endpoint_dominance", lv, n, ok,
                    "|value| at x = " + x.str() + " exceeds the endpoint value");
      }
    });
  }

  timed("three_term", [&] {
    for (unsigned n = 1; n + 1 <= M; ++n)
      book.record("three_term", lv, n, check_three_term(*base, n),
                  "stored coefficients break the three-term recurrence");
  });

  timed("derivative_lift", [&] {
    for (unsigned n = 0; n + 1 <= M; ++n)
      book.record("derivative_lift", lv, n, check_derivative_identity(*base, *lifted, n),
                  "derivative does not match the raised-index polynomial");
  });

  timed("index_raise", [&] {
    for (unsigned n = 0; n + 2 <= M; ++n)
      book.record("index_raise", lv, n, check_index_raise(*base, *lifted, n),
                  "index-raising recursion mismatch");
  });

  timed("index_difference", [&] {
    for (unsigned n = 2; n + 1 <= M; ++n)
      book.record("index_difference", lv, n, check_index_difference(*base, *lifted, n),
                  "index-difference identity mismatch");
  });

  timed("shifted_sum", [&] {
    for (unsigned n = 2; n + 1 <= M; ++n)
      book.record("shifted_sum", lv, n, check_shift_sum(*base, *lifted, n),
                  "shifted-sum identity mismatch");
  });

  timed("dette", [&] {
    for (unsigned n = 1; n <= M; ++n)
      book.record("dette", lv, n, dette_check(*base, *lifted, n),
                  "sum-of-squares identity mismatch");
  });

  timed("lift_vs_oracle", [&] {
    try {
      NormTable lift = lift_norms(baseT, ep, M);
      NormTable oracle = norm_table_oracle(*lifted, M - 2);
      for (unsigned k = 0; k + 2 <= M; ++k)
        book.record("lift_vs_oracle", lv, k, lift.norms[k] == oracle.norms[k],
                    "recursion and direct integration disagree at the raised index");
    } catch (const std::logic_error& e) {
      book.record("lift_vs_oracle", lv, 0, false, e.what());
    }
  });

  timed("weighted_closed", [&] {
    for (unsigned n = 1; n + 1 <= M; ++n) {
      Rational closed = weighted_norm_closed(baseT, ep, n).value;
      bool ok = closed == exact_weighted_l2_norm(lifted->poly(n - 1));
      book.record("weighted_closed", lv, n, ok,
                  "closed-form weighted norm disagrees with direct integration");
    }
  });

  timed("combined_recursion", [&] {
    for (unsigned n = 2; n + 1 <= M; ++n)
      book.record("combined_recursion", lv, n, combined_identity_check(baseT, n),
                  "prefix-sum and four-term routes disagree");
  });

  timed("norm_difference", [&] {
    for (unsigned n = 2; n + 1 <= M; ++n)
      book.record("norm_difference", lv, n, norm_difference_identity_check(*base, *lifted, n),
                  "raised-index norm difference mismatch");
  });

  timed("squares_sum", [&] {
    for (unsigned n = 0; n + 2 <= M; ++n)
      book.record("squares_sum", lv, n, squares_sum_identity_check(*base, *lifted, n),
                  "weighted squares-sum identity mismatch");
  });

  timed("moment_difference", [&] {
    for (unsigned n = 0; n + 2 <= M; ++n)
      book.record("moment_difference", lv, n, moment_difference_identity_check(*base, *lifted, n),
                  "second-moment difference identity mismatch");
  });

  if (lv == Rational(1)) {
    timed("closed_form_index1", [&] {
      for (unsigned n = 0; n <= M; ++n)
        book.record("closed_form_index1", lv, n, closed_form_lambda1(n) == baseT.norms[n],
                    "odd-harmonic closed form disagrees with the oracle");
    });
  }

  if (lv == Rational(2)) {
    timed("closed_form_index2", [&] {
      for (unsigned n = 2; n <= M + 2; ++n) {
        ClosedFormLambda2 cf = closed_form_lambda2(n);
        bool ok = cf.plain == baseT.norms[n - 2] &&
                  cf.weighted == exact_weighted_l2_norm(base->poly(n - 2));
        book.record("closed_form_index2", lv, n, ok,
                    "index-2 closed forms disagree with the oracle");
      }
    });
  }
}

int cmd_verify(const RunConfig& cfg_in, std::ostream& body, std::ostream& err) {
  RunConfig cfg = cfg_in;
  if (cfg.mode != Mode::exact) {
    err << "verify runs in exact mode only\n";
    return kExitBadArguments;
  }
  if (cfg.max_n < 2) {
    err << "verify needs --max-n of at least 2; the norm recursion starts there\n";
    return kExitBadArguments;
  }
  if (over_budget(cfg, cfg.max_n, err)) return kExitBadArguments;
  if (cfg.lambdas.empty()) cfg.lambdas = default_sweep();

  VerifyReport rep;
  StatBook book(rep);
  Stopwatch total;
  for (std::size_t i = 0; i < cfg.lambdas.size(); ++i) sweep_index(cfg, i, cfg.lambdas[i], book);
  rep.seconds = total.elapsed();

  body << (cfg.format == Format::csv ? verify_to_csv(rep) : verify_to_json(cfg, rep));
  if (rep.first_failure) {
    const Counterexample& c = *rep.first_failure;
    err << "counterexample: " << c.identity << " at lambda = " << c.lambda.str()
        << ", n = " << c.n;
    if (!c.detail.empty()) err << " (" << c.detail << ")";
    err << "\n";
    return kExitIdentityFailure;
  }
  return kExitSuccess;
}

// ---- asymptote ----

int cmd_asymptote(const RunConfig& cfg_in, std::ostream& body, std::ostream& err) {
  RunConfig cfg = cfg_in;
  if (cfg.lambdas.empty())
    cfg.lambdas = {Rational(1, 4), Rational(1, 2), Rational(3, 4),
                   Rational(3, 2), Rational(2),    Rational(5, 2)};
  if (cfg.n_grid.empty()) cfg.n_grid = {32, 64, 128, 256, 512};
  for (std::size_t i = 0; i < cfg.n_grid.size(); ++i) {
    if (cfg.n_grid[i] < 3) {
      err << "asymptote grid entries must be at least 3\n";
      return kExitBadArguments;
    }
    if (i > 0 && cfg.n_grid[i] <= cfg.n_grid[i - 1]) {
      err << "asymptote grid must be strictly increasing\n";
      return kExitBadArguments;
    }
  }

  std::vector<AsymptoteRow> rows;
  std::vector<AsymptoteSummary> summaries;
  for (const Rational& lv : cfg.lambdas) {
    if (lv.sign() <= 0) {
      err << "asymptote covers positive indices only; got " << lv.str() << "\n";
      return kExitBadArguments;
    }
    const double lam = lv.to_double();
    const bool is_one = lv == Rational(1);
    if (is_one)
      err << "note: index 1 is measured through the neighbouring closed form; its error "
             "carries a logarithmic factor, so no power-law exponent is asserted\n";

    std::vector<AsymptoticEstimate> ests;
    unsigned need = 0;
    for (unsigned n : cfg.n_grid) {
      ests.push_back(norm_asymptote(lam, n, NormKind::plain));
      need = std::max(need, ests.back().degree);
    }
    NormTableF table = float_norm_table(Lambda(lv).raised(), need);

    std::vector<double> residuals;
    for (std::size_t i = 0; i < cfg.n_grid.size(); ++i) {
      const AsymptoticEstimate& est = ests[i];
      const unsigned n = cfg.n_grid[i];
      AsymptoteRow row;
      row.lambda = lv;
      row.n = n;
      row.degree = est.degree;
      row.measured = table.norms[est.degree];
      row.leading = est.model.leading_coeff * std::pow(n, est.model.leading_exp);
      if (est.model.correction_coeff) row.two_term = est.value;
      row.ratio = row.measured / est.value;
      if (lv < Rational(1)) row.bound = szego_bound(lam, n);
      residuals.push_back(std::fabs(row.measured - est.value));
      rows.push_back(row);
    }

    AsymptoteSummary s;
    s.lambda = lv;
    s.claimed_exp = ests.front().model.error_exp;
    bool fittable = cfg.n_grid.size() >= 4;
    for (double r : residuals)
      if (!(r > 0)) fittable = false;
    if (fittable) s.fit = fit_error_exponent(cfg.n_grid, residuals);
    if (is_one)
      s.note = "closed form used; logarithmic error model, no exponent asserted";
    else if (!s.fit)
      s.note = "fit skipped; needs four points with nonzero residuals";
    summaries.push_back(std::move(s));
  }

  body << (cfg.format == Format::csv ? asymptote_to_csv(rows, summaries)
                                     : asymptote_to_json(cfg, rows, summaries));
  return kExitSuccess;
}

// ---- bench ----

int cmd_bench(const RunConfig& cfg_in, std::ostream& body, std::ostream& err) {
  RunConfig cfg = cfg_in;
  if (cfg.lambdas.empty()) cfg.lambdas = {Rational(1)};
  if (cfg.max_n < 2) {
    err << "bench needs --max-n of at least 2; the norm recursion starts there\n";
    return kExitBadArguments;
  }
  const unsigned N = cfg.max_n;
  if (cfg.mode == Mode::exact && over_budget(cfg, N, err)) return kExitBadArguments;

  std::vector<BenchRow> rows;
  bool mismatch = false;
  for (const Rational& lv : cfg.lambdas) {
    Lambda idx(lv);
    Lambda up = idx.raised();
    BenchRow row;
    row.lambda = lv;
    row.n_max = N;
    row.mode = cfg.mode;

    if (cfg.mode == Mode::exact) {
      auto base = family_cache().at_least(idx, N);
      NormTable baseT = norm_table_oracle(*base, N);
      EndpointFn ep = endpoint_provider(idx);

      Stopwatch wl;
      NormTable lifted = lift_norms(baseT, ep, N);
      row.lift_seconds = wl.elapsed();

      Stopwatch wo;
      GegenbauerFamily fam_up = build_family(up, N - 2);
      NormTable oracle = norm_table_oracle(fam_up);
      row.oracle_seconds = wo.elapsed();

      row.equal = lifted.norms == oracle.norms;
      if (!row.equal) {
        err << "bench: recursion and oracle tables differ at lambda = " << lv.str() << "\n";
        mismatch = true;
      }
    } else {
      const unsigned cap = std::min(N, cfg.degree_budget);
      Stopwatch wl;
      NormTableF lifted = float_norm_table(up, N - 2);
      row.lift_seconds = wl.elapsed();

      auto base = family_cache().at_least(idx, cap);
      NormTable baseT = norm_table_oracle(*base, cap);
      NormTable exact = lift_norms(baseT, endpoint_provider(idx), cap);

      double dev = 0;
      for (unsigned k = 0; k + 2 <= cap; ++k) {
        double reference = exact.norms[k].to_double();
        dev = std::max(dev, std::fabs(lifted.norms[k] - reference) / std::fabs(reference));
      }
      row.max_rel_dev = dev;
      row.equal = dev <= 1e-9;
      if (!row.equal) {
        err << "bench: float pipeline deviates from the exact overlap by " << dev
            << " at lambda = " << lv.str() << "\n";
        mismatch = true;
      }
    }
    rows.push_back(row);
  }

  body << (cfg.format == Format::csv ? bench_to_csv(rows) : bench_to_json(cfg, rows));
  return mismatch ? kExitIoOrMismatch : kExitSuccess;
}

int dispatch(const RunConfig& cfg, std::ostream& body, std::ostream& err) {
  switch (cfg.command) {
    case Command::table: return cmd_table(cfg, body, err);
    case Command::verify: return cmd_verify(cfg, body, err);
    case Command::asymptote: return cmd_asymptote(cfg, body, err);
    case Command::bench: return cmd_bench(cfg, body, err);
  }
  err << "unknown command\n";
  return kExitBadArguments;
}

}  // namespace

int run_command(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    std::ostringstream body;
    int code = dispatch(cfg, body, err);
    if (cfg.out_path) {
      std::ofstream file(*cfg.out_path);
      if (!file) {
        err << "cannot open " << *cfg.out_path << " for writing\n";
        return kExitIoOrMismatch;
      }
      file << body.str();
      file.flush();
      if (!file) {
        err << "write to " << *cfg.out_path << " failed\n";
        return kExitIoOrMismatch;
      }
    } else {
      out << body.str();
    }
    return code;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitBadArguments;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitBadArguments;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
    return kExitBadArguments;
  } catch (const std::logic_error& e) {
    err << "internal inconsistency: " << e.what() << "\n";
    return kExitIoOrMismatch;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitIoOrMismatch;
  }
}

}  // namespace gegenorm
