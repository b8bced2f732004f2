// lfc: compute local fundamental classes and check them.
//
//   lfc lfc      --field f.json --k 6 [--out dump.json]
//   lfc verify   --field f.json|dump.json [--k 6] [--checks all] [--force] [--seed 1]
//   lfc catalog  [--field catalog.json] [--k 6] [--checks cocycle,residuals] [--p 2,3] [--max-degree 4]
//   lfc selftest
//
// Exit codes: 0 ok, 2 NotGalois, 3 NotEisenstein, 4 precision, 5 oracle guard, 1 anything else
// (including a failed check).

#include "lfc/checks.hpp"
#include "lfc/error.hpp"

#include <CLI11.hpp>
#include <omp.h>

#include <chrono>
#include <cstdio>
#include <ctime>
#include <sstream>

#ifndef LFC_DATA_DIR
#define LFC_DATA_DIR "data"
#endif

using namespace lfc;

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string timestamp() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json stamped(json body) {
  json out{{"generated_at", timestamp()}};
  for (auto it = body.begin(); it != body.end(); ++it)
    out[it.key()] = it.value();
  return out;
}

json error_json(const Error &e) {
  return json{{"kind", error_kind_name(e.kind())}, {"exit_code", exit_code_for(e.kind())}, {"message", e.what()}};
}

struct Options {
  std::string field;
  int k = 6;
  bool k_given = false;
  std::string checks;
  bool force = false;
  std::uint64_t seed = 1;
  int jobs = 0;
  std::string out = "-";
  std::string primes;
  int max_degree = 0;
};

// Runs the selected checks; skipped ones are listed with their reason.
json run_checks(const std::vector<std::string> &names, const GaloisGroup &G, const LfcResult &r, const Options &o,
                bool &all_ok) {
  CheckOptions copt;
  copt.force = o.force;
  copt.seed = o.seed;
  json out = json::array();
  for (const auto &name : names) {
    const std::string why = check_skip_reason(name, r);
    if (!why.empty()) {
      out.push_back(json{{"name", name}, {"skipped", why}});
      continue;
    }
    auto c = run_check(name, G, r, copt);
    all_ok &= c.ok;
    out.push_back(to_json(c));
  }
  return out;
}

int cmd_lfc(const Options &o) {
  const FieldSpec spec = read_field_spec(o.field);
  auto G = compute_automorphisms(make_field(spec));
  auto r = lfc_main(*G, o.k);
  write_json(o.out, stamped(cocycle_dump(r, spec)));
  return 0;
}

int cmd_verify(const Options &o) {
  const json in = read_json(o.field);
  FieldSpec spec;
  int k = o.k;
  const bool from_dump = is_cocycle_dump(in);
  if (from_dump) {
    auto d = cocycle_dump_from_json(in);
    if (o.k_given && o.k != d.k)
      raise(ErrorKind::InvalidInput, "--k " + std::to_string(o.k) + " disagrees with the dump (k = " +
                                         std::to_string(d.k) + ")");
    spec = d.field;
    k = d.k;
  } else {
    spec = field_spec_from_json(in);
  }
  const auto names = parse_checks(o.checks.empty() ? "all" : o.checks);
  auto G = compute_automorphisms(make_field(spec));
  auto r = lfc_main(*G, k);
  if (from_dump)
    r.cocycle.values = load_cocycle_table(in, *G);
  bool ok = true;
  json checks = run_checks(names, *G, r, o, ok);
  json report{{"field", to_json(spec)},
              {"k", k},
              {"input", from_dump ? "cocycle" : "field"},
              {"seed", o.seed},
              {"checks", checks},
              {"pass", ok}};
  write_json(o.out, stamped(report));
  return ok ? 0 : 1;
}

std::vector<std::int64_t> parse_primes(const std::string &csv) {
  std::vector<std::int64_t> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) {
      try {
        out.push_back(std::stoll(item));
      } catch (const std::exception &) {
        raise(ErrorKind::InvalidInput, "bad prime '" + item + "'");
      }
    }
  return out;
}

int cmd_catalog(const Options &o) {
  auto all = read_catalog(o.field.empty() ? std::string(LFC_DATA_DIR) + "/catalog.json" : o.field);
  const auto primes = parse_primes(o.primes);
  std::vector<CatalogEntry> entries;
  for (const auto &e : all) {
    bool keep = primes.empty();
    for (auto p : primes)
      keep |= p == e.field.p;
    if (keep && (o.max_degree <= 0 || e.field.degree() <= o.max_degree))
      entries.push_back(e);
  }
  const auto names = parse_checks(o.checks.empty() ? "cocycle,residuals" : o.checks);
  const int m = static_cast<int>(entries.size());
  std::vector<json> rows(m);
  std::vector<int> ok(m, 1);

#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < m; ++i) {
    const auto &e = entries[i];
    json row{{"name", e.name}, {"group", e.group}, {"p", e.field.p}, {"degree", e.field.degree()}};
    try {
      auto G = compute_automorphisms(make_field(e.field));
      const auto t0 = Clock::now();
      auto r = lfc_main(*G, o.k);
      row["lfc_seconds"] = since(t0);
      bool pass = true;
      row["checks"] = run_checks(names, *G, r, o, pass);
      try {
        OracleLimits lim;
        auto path = oracle_class_path(*G, r, lim);
        row["oracle"] = json{{"seconds", path.seconds},
                             {"invariants", path.invariants},
                             {"class_order", path.class_order},
                             {"identified", path.identified}};
      } catch (const Error &err) {
        if (err.kind() != ErrorKind::OracleTooLarge)
          throw;
        row["oracle"] = json{{"skipped", err.what()}};
      }
      row["pass"] = pass;
      ok[i] = pass;
    } catch (const Error &err) {
      row["pass"] = false;
      row["error"] = error_json(err);
      ok[i] = 0;
    }
    rows[i] = std::move(row);
  }

  json arr = json::array();
  int passed = 0;
  for (int i = 0; i < m; ++i) {
    arr.push_back(std::move(rows[i]));
    passed += ok[i];
  }
  json summary{{"k", o.k},
               {"checks", names},
               {"entries", arr},
               {"passed", passed},
               {"total", m}};
  write_json(o.out, stamped(summary));
  return passed == m ? 0 : 1;
}

// Small fixed suite: prints one line per case.
int cmd_selftest(const Options &o) {
  struct Case {
    std::string name;
    FieldSpec spec;
    int k;
    std::string checks;
    ErrorKind expect_error = ErrorKind::Other;
    bool expect_fail = false;
  };
  const std::vector<Case> cases{
      {"Q2(sqrt 2) all checks", {2, 1, {{-2}, {0}}, 20}, 6, "all"},
      {"unramified quadratic over Q3", {3, 2, {{-3, 0}}, 16}, 4, "all"},
      {"unramified cubic over Q2", {2, 3, {{-2, 0, 0}}, 20}, 6, "unramified-exact,order,h2"},
      {"Q3(sqrt 3) all checks", {3, 1, {{-3}, {0}}, 20}, 6, "all"},
      {"x^3 - 3 over Q3 is not Galois", {3, 1, {{-3}, {0}, {0}}, 20}, 6, "cocycle", ErrorKind::NotGalois, true},
  };
  CheckOptions copt;
  copt.force = o.force;
  copt.seed = o.seed;
  int failures = 0;
  for (const auto &c : cases) {
    bool ok = true;
    std::string detail;
    try {
      auto G = compute_automorphisms(make_field(c.spec));
      auto r = lfc_main(*G, c.k);
      for (const auto &name : parse_checks(c.checks)) {
        if (!check_skip_reason(name, r).empty())
          continue;
        auto res = run_check(name, *G, r, copt);
        if (!res.ok) {
          ok = false;
          detail += " " + name;
        }
      }
      if (c.expect_fail) {
        ok = false;
        detail = " expected an error";
      }
    } catch (const Error &e) {
      ok = c.expect_fail && e.kind() == c.expect_error;
      if (!ok)
        detail = std::string(" ") + e.what();
    }
    failures += !ok;
    std::printf("%s %s%s\n", ok ? "ok  " : "FAIL", c.name.c_str(), detail.c_str());
  }
  return failures == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Local fundamental classes of Galois extensions of Q_p"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App *sub) {
    sub->add_option("--jobs", o.jobs, "worker threads (default: all cores)");
    sub->add_option("--seed", o.seed, "seed for sampled checks");
    sub->add_flag("--force", o.force, "run oracles past their size guards");
  };

  auto *lfc = app.add_subcommand("lfc", "compute the fundamental class and write the cocycle table");
  lfc->add_option("--field", o.field, "field descriptor JSON")->required();
  lfc->add_option("--k", o.k, "precision level k")->check(CLI::PositiveNumber);
  lfc->add_option("--out", o.out, "output path, - for stdout");
  add_common(lfc);

  auto *verify = app.add_subcommand("verify", "run checks on a field or on a cocycle table written by lfc");
  verify->add_option("--field", o.field, "field descriptor or cocycle dump JSON")->required();
  auto *kopt = verify->add_option("--k", o.k, "precision level k")->check(CLI::PositiveNumber);
  verify->add_option("--checks", o.checks, "comma separated check names, or all");
  verify->add_option("--out", o.out, "report path, - for stdout");
  add_common(verify);

  auto *catalog = app.add_subcommand("catalog", "run lfc and checks over a catalog of fields");
  catalog->add_option("--field", o.field, "catalog JSON (default: shipped catalog)");
  catalog->add_option("--k", o.k, "precision level k")->check(CLI::PositiveNumber);
  catalog->add_option("--checks", o.checks, "comma separated check names, or all");
  catalog->add_option("--p", o.primes, "comma separated primes to keep");
  catalog->add_option("--max-degree", o.max_degree, "largest degree to keep");
  catalog->add_option("--out", o.out, "summary path, - for stdout");
  add_common(catalog);

  auto *selftest = app.add_subcommand("selftest", "run a small built-in suite");
  add_common(selftest);

  CLI11_PARSE(app, argc, argv);
  o.k_given = kopt->count() > 0;
  if (o.jobs > 0)
    omp_set_num_threads(o.jobs);

  try {
    if (lfc->parsed())
      return cmd_lfc(o);
    if (verify->parsed())
      return cmd_verify(o);
    if (catalog->parsed())
      return cmd_catalog(o);
    return cmd_selftest(o);
  } catch (const Error &e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return exit_code_for(e.kind());
  } catch (const std::exception &e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
