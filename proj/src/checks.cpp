#include "lfc/checks.hpp"

#include "lfc/error.hpp"

#include <chrono>
#include <limits>
#include <random>
#include <sstream>

namespace lfc {

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

OracleLimits effective(const CheckOptions &opt) {
  if (!opt.force)
    return opt.limits;
  OracleLimits big;
  big.max_group = std::numeric_limits<int>::max();
  big.max_dim = std::numeric_limits<int>::max();
  return big;
}

void guard_gamma(int gamma, const OracleLimits &lim) {
  if (gamma > lim.max_group)
    raise(ErrorKind::OracleTooLarge,
          "|Gal(F/K)| = " + std::to_string(gamma) + " exceeds " + std::to_string(lim.max_group));
}

struct Setup {
  UnitsQuotientPtr M;
  ActionMatrices A;
  Cochain2 g;
};

Setup setup(const GaloisGroup &G, const LfcResult &r) {
  Setup s;
  s.M = uq_build(G.field(), r.cocycle.k);
  s.A = action_matrices(*s.M, *r.ctx.group);
  s.g = cocycle_coords(r.cocycle, *s.M);
  return s;
}

void check_cocycle(CheckResult &c, const GaloisGroup &G, const LfcResult &r) {
  auto s = setup(G, r);
  auto chk = is_cocycle(*r.ctx.group, s.g, *s.M, s.A);
  c.ok = chk.ok;
  const int n = r.ctx.group->size();
  c.witness = chk.ok ? json{{"triples", n * n * n}} : json{{"first_failure", {chk.s, chk.t, chk.u}}};
}

void check_order(CheckResult &c, const GaloisGroup &G, const LfcResult &r) {
  auto s = setup(G, r);
  const int n = r.ctx.group->size();
  const int ord = class_order(*r.ctx.group, s.g, *s.M, s.A);
  c.ok = ord == n;
  c.witness = json{{"class_order", ord}, {"degree", n}};
}

void check_h2(CheckResult &c, const GaloisGroup &G, const LfcResult &r, const OracleLimits &lim) {
  auto s = setup(G, r);
  auto H = h2_invariants(*r.ctx.group, *s.M, s.A, lim);
  const auto ord = H.class_order(s.g);
  c.ok = ord == r.ctx.group->size();
  c.witness = json{{"invariants", H.invariants()}, {"class_order", ord}, {"class", H.classify(s.g)}};
}

void check_compositum(CheckResult &c, const GaloisGroup &G, const LfcResult &r, const OracleLimits &lim) {
  guard_gamma(r.ctx.group->size() * r.ctx.base.e_rel, lim);
  auto chk = verify_via_compositum(G, base_field_Qp(G), r.cocycle.k, &r.cocycle);
  c.ok = chk.ok;
  c.witness = json{{"gamma_order", chk.gamma_order}};
}

void check_restriction(CheckResult &c, const GaloisGroup &G, const LfcResult &r) {
  const int n = G.size();
  json subs = json::array();
  c.ok = true;
  for (int l = 2; l < n; ++l) {
    if (n % l != 0)
      continue;
    bool prime = true;
    for (int d = 2; d * d <= l; ++d)
      prime &= l % d != 0;
    if (!prime)
      continue;
    for (const auto &H : subgroups_of_order(G, l)) {
      bool ok = verify_restriction(G, H, r.cocycle.k).ok;
      c.ok &= ok;
      subs.push_back(json{{"subgroup", H}, {"ok", ok}});
    }
  }
  c.witness = json{{"subgroups", subs}};
}

void check_residuals(CheckResult &c, const LfcResult &r) {
  const auto &ctx = r.ctx;
  const int k = ctx.k;
  auto cg = compositum_group(ctx);
  FieldElement nrm = ctx.comp.field->one();
  for (int g = 0; g < cg.gamma->size(); ++g)
    if (cg.to_G[g] == ctx.group->identity())
      nrm = nrm * cg.gamma->apply(g, r.pi);
  const bool norm_ok = equal_mod_units(nrm, ctx.comp.embedding.apply(ctx.base.pi_K), k + 2);
  json bad = json::array();
  for (int s = 0; s < ctx.group->size(); ++s) {
    Automorphism sh = lift_sigma_hat((*ctx.group)[s], ctx.comp, ctx.d, ctx.f_K);
    const FieldElement &u = r.u_sigma[s];
    if (!equal_mod_units(ctx.Phi.apply(u) * u.inverse(), sh.apply(r.pi) * r.pi.inverse(), k + 2))
      bad.push_back(s);
  }
  c.ok = norm_ok && bad.empty();
  c.witness = json{{"level", k + 2}, {"norm", norm_ok}, {"twist_failures", bad}};
}

void check_truncation(CheckResult &c, const GaloisGroup &G, const LfcResult &r) {
  const int k = r.cocycle.k;
  const int lo_k = std::max(1, k / 2);
  auto lo = lfc_main(G, lo_k);
  auto M = uq_build(G.field(), lo_k);
  int mismatches = 0;
  const int n = G.size();
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t)
      mismatches += M->dlog(lo.cocycle(s, t)) != M->dlog(r.cocycle(s, t));
  c.ok = mismatches == 0;
  c.witness = json{{"levels", {lo_k, k}}, {"mismatches", mismatches}};
}

void check_serial(CheckResult &c, const GaloisGroup &G, const LfcResult &r) {
  auto a = lfc_main(G, r.cocycle.k, Exec::Serial);
  auto b = lfc_main(G, r.cocycle.k, Exec::Parallel);
  int diff = 0;
  const int n = G.size();
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t)
      diff += !(a.cocycle(s, t) == b.cocycle(s, t)) || !(a.cocycle(s, t) == r.cocycle(s, t));
  c.ok = diff == 0;
  c.witness = json{{"differing_entries", diff}};
}

void check_symmetry(CheckResult &c, const GaloisGroup &G, const LfcResult &r, std::uint64_t seed) {
  auto s = setup(G, r);
  const auto &H = *r.ctx.group;
  const int n = H.size();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> mult(0, 2 * n);
  auto scaled = [&](int m) {
    Cochain2 out(n, std::vector<Coord>(n));
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        out[a][b] = s.M->scale(s.g[a][b], m);
    return out;
  };
  c.ok = true;
  json pairs = json::array();
  for (int i = 0; i < 4; ++i) {
    const int m1 = mult(rng), m2 = mult(rng);
    auto g1 = scaled(m1), g2 = scaled(m2);
    const bool ab = cohomologous(H, g1, g2, *s.M, s.A).has_value();
    const bool ba = cohomologous(H, g2, g1, *s.M, s.A).has_value();
    c.ok &= ab == ba;
    pairs.push_back(json{{"multiples", {m1, m2}}, {"forward", ab}, {"backward", ba}});
  }
  c.witness = json{{"pairs", pairs}};
}

// gamma(phi^i, phi^j) = 1 for i + j < n and pi_K otherwise
void check_unramified(CheckResult &c, const LfcResult &r) {
  const auto &H = *r.ctx.group;
  const int n = H.size();
  const int f_K = r.ctx.base.f_K;
  const int f_L = H.field()->f();
  std::vector<int> expo(n, -1);
  for (int s = 0; s < n; ++s)
    for (int i = 0; i < n; ++i)
      if (((i * f_K) % f_L) == (((H[s].frob_power % f_L) + f_L) % f_L))
        expo[s] = i;
  json bad = json::array();
  const auto one = H.field()->one();
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t) {
      const auto &want = expo[s] + expo[t] < n ? one : r.ctx.base.pi_K;
      if (expo[s] < 0 || expo[t] < 0 || !equal_mod_units(r.cocycle(s, t), want, r.cocycle.k))
        bad.push_back(json{{"s", s}, {"t", t}});
    }
  c.ok = bad.empty();
  c.witness = json{{"frobenius_exponents", expo}, {"mismatches", bad}};
}

} // namespace

std::string check_skip_reason(const std::string &name, const LfcResult &r) {
  if (name == "unramified-exact" && r.ctx.base.e_rel != 1)
    return "L/K is ramified";
  if (name == "restriction" && r.ctx.group->size() < 4)
    return "group of prime order has no proper nontrivial subgroup";
  return {};
}

const std::vector<std::string> &check_names() {
  static const std::vector<std::string> names{"cocycle",   "order",     "h2",     "compositum", "restriction",
                                              "residuals", "truncation", "serial", "symmetry", "unramified-exact"};
  return names;
}

std::vector<std::string> parse_checks(const std::string &csv) {
  std::vector<std::string> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty())
      continue;
    if (item == "all") {
      out = check_names();
      continue;
    }
    bool known = false;
    for (const auto &n : check_names())
      known |= n == item;
    if (!known)
      raise(ErrorKind::InvalidInput, "unknown check '" + item + "'");
    out.push_back(item);
  }
  if (out.empty())
    raise(ErrorKind::InvalidInput, "no checks selected");
  return out;
}

CheckResult run_check(const std::string &name, const GaloisGroup &G, const LfcResult &r, const CheckOptions &opt) {
  CheckResult c;
  c.name = name;
  const auto t0 = Clock::now();
  const OracleLimits lim = effective(opt);
  if (name == "cocycle")
    check_cocycle(c, G, r);
  else if (name == "order")
    check_order(c, G, r);
  else if (name == "h2")
    check_h2(c, G, r, lim);
  else if (name == "compositum")
    check_compositum(c, G, r, lim);
  else if (name == "restriction")
    check_restriction(c, G, r);
  else if (name == "residuals")
    check_residuals(c, r);
  else if (name == "truncation")
    check_truncation(c, G, r);
  else if (name == "serial")
    check_serial(c, G, r);
  else if (name == "symmetry")
    check_symmetry(c, G, r, opt.seed);
  else if (name == "unramified-exact")
    check_unramified(c, r);
  else
    raise(ErrorKind::InvalidInput, "unknown check '" + name + "'");
  c.seconds = since(t0);
  return c;
}

json to_json(const CheckResult &c) {
  return json{{"name", c.name}, {"pass", c.ok}, {"witness", c.witness}, {"seconds", c.seconds}};
}

OraclePathResult oracle_class_path(const GaloisGroup &G, const LfcResult &r, OracleLimits lim) {
  const auto t0 = Clock::now();
  guard_gamma(r.ctx.group->size() * r.ctx.base.e_rel, lim);
  OraclePathResult out;
  auto s = setup(G, r);
  auto H = h2_invariants(*r.ctx.group, *s.M, s.A, lim);
  out.invariants = H.invariants();
  out.class_order = H.class_order(s.g);
  out.identified = verify_via_compositum(G, base_field_Qp(G), r.cocycle.k, &r.cocycle).ok;
  out.seconds = since(t0);
  return out;
}

} // namespace lfc
