/*
 * Copyright (c) 2026 vgmom developers
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "vgmom/normprod.hpp"
#include "vgmom/oracle.hpp"
#include "vgmom/signed_log.hpp"
#include "vgmom/vg.hpp"

namespace {

using nlohmann::ordered_json;
using namespace vgmom;

enum ExitCode { kOk = 0, kNumericalFailure = 1, kUsage = 2 };

// All numeric flags arrive as strings: they are echoed verbatim in output
// records and parsed locale-independently here. from_chars rejects an
// explicit leading '+', so strip one.
const char* number_start(const std::string& text) {
  return text.data() + (text.size() > 1 && text[0] == '+' ? 1 : 0);
}

double parse_number(const std::string& text, const std::string& flag) {
  double v = 0.0;
  const char* begin = number_start(text);
  auto [p, ec] = std::from_chars(begin, text.data() + text.size(), v);
  if (ec != std::errc() || p != text.data() + text.size())
    throw ValidationError(flag, "could not parse --" + flag + " value '" +
                                    text + "'");
  return v;
}

long parse_integer(const std::string& text, const std::string& flag) {
  long v = 0;
  const char* begin = number_start(text);
  auto [p, ec] = std::from_chars(begin, text.data() + text.size(), v);
  if (ec != std::errc() || p != text.data() + text.size())
    throw ValidationError(flag, "could not parse --" + flag + " value '" +
                                    text + "' as an integer");
  return v;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    if (comma == std::string::npos) {
      out.push_back(text.substr(start));
      break;
    }
    out.push_back(text.substr(start, comma - start));
    start = comma + 1;
  }
  return out;
}

struct CsvWriter {
  std::vector<std::string> columns;
  bool header_written = false;

  static std::string escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
      if (c == '"') out += '"';
      out += c;
    }
    out += '"';
    return out;
  }

  void write(const ordered_json& record) {
    if (!header_written) {
      for (std::size_t i = 0; i < columns.size(); ++i)
        std::cout << (i ? "," : "") << columns[i];
      std::cout << "\n";
      header_written = true;
    }
    for (std::size_t i = 0; i < columns.size(); ++i) {
      if (i) std::cout << ",";
      auto it = record.find(columns[i]);
      if (it == record.end() || it->is_null()) continue;
      if (it->is_string())
        std::cout << escape(it->get<std::string>());
      else
        std::cout << it->dump();
    }
    std::cout << "\n";
  }
};

struct Emitter {
  std::string format = "json";
  CsvWriter csv;

  void emit(const ordered_json& record) {
    if (format == "json") {
      std::cout << record.dump() << "\n";
    } else {
      csv.write(record);
    }
    std::cout.flush();
  }
};

void put_value(ordered_json& rec, const SignedLog& v) {
  rec["value"] = to_decimal_string(v);
  rec["sign"] = v.sign;
  rec["log_abs"] = v.log_abs;
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - start)
      .count();
}

// ---------------------------------------------------------------------
// moment and table
// ---------------------------------------------------------------------

struct MomentFlags {
  std::string nu, alpha, beta, mu = "0", k;
  std::string kind = "abs";
  std::string method = "closed";
  int order = 4;
  std::string format = "json";
  std::uint64_t seed = oracle::kDefaultSeed;
  long long samples = 10'000'000;
  int batches = 100;
  double rel_tol = 1e-10;
  int max_subdiv = 2000;
};

void add_moment_options(CLI::App* cmd, MomentFlags& f, bool lists) {
  const char* list_note = lists ? " (comma-separated list)" : "";
  cmd->add_option("--nu", f.nu, std::string("shape parameter") + list_note)
      ->required();
  cmd->add_option("--alpha", f.alpha, std::string("scale parameter") + list_note)
      ->required();
  cmd->add_option("--beta", f.beta, std::string("skew parameter") + list_note)
      ->required();
  cmd->add_option("--mu", f.mu, "location parameter (default 0)");
  cmd->add_option("--k", f.k, std::string("moment order") + list_note)
      ->required();
  cmd->add_option("--kind", f.kind, "raw or abs")->check(
      CLI::IsMember({"raw", "abs"}));
  cmd->add_option("--method", f.method,
                  "closed | series | quad | direct | mc")
      ->check(CLI::IsMember({"closed", "series", "quad", "direct", "mc"}));
  cmd->add_option("--order", f.order, "expansion order for --method series")
      ->check(CLI::IsMember({0, 2, 4}));
  cmd->add_option("--format", f.format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--seed", f.seed, "Monte Carlo seed");
  cmd->add_option("--samples", f.samples, "Monte Carlo sample count");
  cmd->add_option("--batches", f.batches, "Monte Carlo batch count");
  cmd->add_option("--rel-tol", f.rel_tol, "quadrature relative tolerance");
  cmd->add_option("--max-subdiv", f.max_subdiv,
                  "quadrature subdivision budget");
}

// Evaluates one point; fills value/uncertainty/error. Returns the exit
// code contribution of the point. Validation errors propagate for single
// points (exit 2) and are recorded inline when `inline_errors` is set
// (table sweeps never abort).
int eval_moment_point(ordered_json& rec, const MomentFlags& f,
                      const std::string& nu_s, const std::string& alpha_s,
                      const std::string& beta_s, const std::string& k_s,
                      bool inline_errors = false) {
  auto start = std::chrono::steady_clock::now();
  try {
    vg::VGParams params(parse_number(nu_s, "nu"), parse_number(alpha_s, "alpha"),
                        parse_number(beta_s, "beta"), parse_number(f.mu, "mu"));
    double k = parse_number(k_s, "k");
    vg::MomentKind kind =
        f.kind == "raw" ? vg::MomentKind::raw : vg::MomentKind::absolute;
    vg::MomentQuery query{k, kind, vg::Method::closed_form};
    query.validate_against(params);

    if (f.method == "closed") {
      SignedLog v = kind == vg::MomentKind::raw
                        ? vg::raw_moment(params, std::lround(k))
                        : vg::abs_moment(params, k);
      put_value(rec, v);
    } else if (f.method == "series") {
      SignedLog v = kind == vg::MomentKind::raw
                        ? vg::raw_moment_expansion(params, std::lround(k),
                                                   f.order)
                        : vg::abs_moment_expansion(params, k, f.order);
      put_value(rec, v);
    } else if (f.method == "quad") {
      oracle::QuadratureSettings qs;
      qs.rel_tol = f.rel_tol;
      qs.max_subdivisions = f.max_subdiv;
      auto res = oracle::moment_by_quadrature(params, k, kind, qs);
      put_value(rec, res.value);
      rec["rel_error"] = res.rel_error;
    } else if (f.method == "direct") {
      put_value(rec, oracle::moment_by_direct_series(params, k, kind));
    } else {  // mc
      oracle::MonteCarloSettings ms;
      ms.seed = f.seed;
      ms.sample_count = f.samples;
      ms.batch_count = f.batches;
      auto res = oracle::moment_by_monte_carlo(params, k, kind, ms);
      put_value(rec, res.value);
      rec["standard_error"] = res.standard_error;
    }
    rec["elapsed_ms"] = elapsed_ms(start);
    return kOk;
  } catch (const ToleranceError& e) {
    SignedLog best = SignedLog::with_sign(
        static_cast<int>(e.value_sign()), e.value_log_abs());
    put_value(rec, best);
    rec["rel_error"] = e.achieved_rel_error();
    rec["error"] = e.what();
    rec["elapsed_ms"] = elapsed_ms(start);
    return kNumericalFailure;
  } catch (const NumericalError& e) {
    rec["error"] = e.what();
    rec["elapsed_ms"] = elapsed_ms(start);
    return kNumericalFailure;
  } catch (const ValidationError& e) {
    if (!inline_errors) throw;
    rec["error"] = e.what();
    rec["elapsed_ms"] = elapsed_ms(start);
    return kUsage;
  }
}

ordered_json moment_record(const char* cmd, const MomentFlags& f,
                           const std::string& nu_s, const std::string& alpha_s,
                           const std::string& beta_s, const std::string& k_s) {
  ordered_json rec;
  rec["cmd"] = cmd;
  rec["nu"] = nu_s;
  rec["alpha"] = alpha_s;
  rec["beta"] = beta_s;
  rec["mu"] = f.mu;
  rec["k"] = k_s;
  rec["kind"] = f.kind;
  rec["method"] = f.method;
  if (f.method == "series") rec["order"] = f.order;
  return rec;
}

const std::vector<std::string> kMomentColumns = {
    "cmd",  "nu",   "alpha", "beta",      "mu",
    "k",    "kind", "method", "order",    "value",
    "sign", "log_abs", "rel_error", "standard_error", "elapsed_ms", "error"};

int run_moment(const MomentFlags& f) {
  Emitter out{f.format, CsvWriter{kMomentColumns}};
  ordered_json rec = moment_record("moment", f, f.nu, f.alpha, f.beta, f.k);
  int rc = eval_moment_point(rec, f, f.nu, f.alpha, f.beta, f.k);
  out.emit(rec);
  if (rc != kOk) std::cerr << rec["error"].get<std::string>() << "\n";
  return rc;
}

int run_table(const MomentFlags& f) {
  Emitter out{f.format, CsvWriter{kMomentColumns}};
  auto nus = split_list(f.nu);
  auto alphas = split_list(f.alpha);
  auto betas = split_list(f.beta);
  auto ks = split_list(f.k);
  for (const auto* list : {&nus, &alphas, &betas, &ks})
    if (list->empty() ||
        std::any_of(list->begin(), list->end(),
                    [](const std::string& s) { return s.empty(); }))
      throw ValidationError("sweep", "table: empty sweep list");
  // Lexicographic over (nu, alpha, beta, k); per-point errors are recorded
  // inline and never abort the sweep.
  for (const auto& nu_s : nus)
    for (const auto& alpha_s : alphas)
      for (const auto& beta_s : betas)
        for (const auto& k_s : ks) {
          ordered_json rec =
              moment_record("table", f, nu_s, alpha_s, beta_s, k_s);
          eval_moment_point(rec, f, nu_s, alpha_s, beta_s, k_s,
                            /*inline_errors=*/true);
          out.emit(rec);
        }
  return kOk;
}

// ---------------------------------------------------------------------
// product
// ---------------------------------------------------------------------

struct ProductFlags {
  std::string sigma_u = "1", sigma_v = "1", rho, n = "1", k;
  std::string kind = "raw";
  std::string format = "json";
};

int run_product(const ProductFlags& f) {
  Emitter out{f.format,
              CsvWriter{{"cmd", "sigma_u", "sigma_v", "rho", "n", "k", "kind",
                         "vg_nu", "vg_alpha", "vg_beta", "value", "sign",
                         "log_abs", "value_vgrep", "sign_vgrep",
                         "log_abs_vgrep", "rel_deviation", "elapsed_ms"}}};
  auto start = std::chrono::steady_clock::now();
  normprod::ProductNormalParams p(
      parse_number(f.sigma_u, "sigma-u"), parse_number(f.sigma_v, "sigma-v"),
      parse_number(f.rho, "rho"), parse_integer(f.n, "n"));
  double k = parse_number(f.k, "k");
  bool raw = f.kind == "raw";
  SignedLog direct = raw ? normprod::product_raw_moment(p, std::lround(k))
                         : normprod::product_abs_moment(p, k);
  SignedLog mapped = raw
                         ? normprod::product_raw_moment_via_vg(p, std::lround(k))
                         : normprod::product_abs_moment_via_vg(p, k);
  ordered_json rec;
  rec["cmd"] = "product";
  rec["sigma_u"] = f.sigma_u;
  rec["sigma_v"] = f.sigma_v;
  rec["rho"] = f.rho;
  rec["n"] = f.n;
  rec["k"] = f.k;
  rec["kind"] = f.kind;
  vg::VGParams mapped_params = normprod::vg_params_of_product_mean(p);
  rec["vg_nu"] = mapped_params.nu();
  rec["vg_alpha"] = mapped_params.alpha();
  rec["vg_beta"] = mapped_params.beta();
  put_value(rec, direct);
  rec["value_vgrep"] = to_decimal_string(mapped);
  rec["sign_vgrep"] = mapped.sign;
  rec["log_abs_vgrep"] = mapped.log_abs;
  rec["rel_deviation"] = relative_deviation(direct, mapped);
  rec["elapsed_ms"] = elapsed_ms(start);
  out.emit(rec);
  return kOk;
}

// ---------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------

int run_verify(const std::string& suite, const std::string& format) {
  Emitter out{format,
              CsvWriter{{"cmd", "suite", "label", "k", "kind", "max_rel_dev",
                         "max_mc_sigma", "tolerance", "passed", "note"}}};
  auto reports = oracle::run_suite(suite);
  int passed = 0;
  for (const auto& r : reports) {
    ordered_json rec;
    rec["cmd"] = "verify";
    rec["suite"] = suite;
    rec["label"] = r.label;
    rec["k"] = r.k;
    rec["kind"] = vg::to_string(r.kind);
    rec["max_rel_dev"] = r.max_pairwise_rel_dev;
    rec["max_mc_sigma"] = r.max_mc_sigma;
    rec["tolerance"] = r.tolerance;
    rec["passed"] = r.passed;
    if (!r.note.empty()) rec["note"] = r.note;
    if (format == "json") {
      ordered_json methods = ordered_json::array();
      for (const auto& m : r.results) {
        ordered_json mr;
        mr["method"] = vg::to_string(m.method);
        if (!m.detail.empty()) mr["detail"] = m.detail;
        if (m.ok) {
          mr["value"] = to_decimal_string(m.value);
          mr["sign"] = m.value.sign;
          mr["log_abs"] = m.value.log_abs;
          if (m.rel_uncertainty > 0) mr["rel_error"] = m.rel_uncertainty;
          if (m.is_monte_carlo) mr["standard_error"] = m.standard_error;
        } else {
          mr["error"] = m.error;
        }
        methods.push_back(std::move(mr));
      }
      rec["methods"] = std::move(methods);
    }
    out.emit(rec);
    if (r.passed) ++passed;
  }
  std::cerr << "suite " << suite << ": " << passed << "/" << reports.size()
            << " passed\n";
  return passed == static_cast<int>(reports.size()) ? kOk
                                                    : kNumericalFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"variance-gamma moments: closed forms and numerical oracles"};
  app.require_subcommand(1);

  MomentFlags moment_flags;
  CLI::App* moment = app.add_subcommand("moment", "compute a single moment");
  add_moment_options(moment, moment_flags, false);

  MomentFlags table_flags;
  CLI::App* table =
      app.add_subcommand("table", "sweep parameter lists, one record per point");
  add_moment_options(table, table_flags, true);

  ProductFlags product_flags;
  CLI::App* product = app.add_subcommand(
      "product", "moments of the mean of products of correlated normals");
  product->add_option("--sigma-u", product_flags.sigma_u, "std dev of U");
  product->add_option("--sigma-v", product_flags.sigma_v, "std dev of V");
  product->add_option("--rho", product_flags.rho, "correlation")->required();
  product->add_option("--n", product_flags.n, "number of averaged products");
  product->add_option("--k", product_flags.k, "moment order")->required();
  product->add_option("--kind", product_flags.kind, "raw or abs")
      ->check(CLI::IsMember({"raw", "abs"}));
  product->add_option("--format", product_flags.format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));

  std::string suite;
  std::string verify_format = "json";
  CLI::App* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("--suite", suite, "grid | corollary | expansion | specfun")
      ->required();
  verify->add_option("--format", verify_format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return kUsage;
  }

  try {
    if (moment->parsed()) return run_moment(moment_flags);
    if (table->parsed()) return run_table(table_flags);
    if (product->parsed()) return run_product(product_flags);
    return run_verify(suite, verify_format);
  } catch (const ValidationError& e) {
    std::cerr << "invalid " << e.constraint() << ": " << e.what() << "\n";
    return kUsage;
  } catch (const NumericalError& e) {
    std::cerr << e.what() << "\n";
    return kNumericalFailure;
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return kNumericalFailure;
  }
}
