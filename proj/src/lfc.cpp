#include "lfc/lfc.hpp"

#include "lfc/error.hpp"
#include "lfc/parallel.hpp"

namespace lfc {

namespace {

void require_unit_level(const FieldElement &diff, int m, ErrorKind kind, const char *what) {
  if (!diff.is_zero() && diff.valuation() < m)
    raise(kind, std::string(what) + ": defect not in U^(" + std::to_string(m) + ")");
}

// residue of (a - 1) / pi^m, zero when a is in U^(m+1)
FFElem level_residue(const FieldElement &a, int m) {
  const auto &F = a.parent();
  FieldElement diff = a - F->one();
  if (diff.is_zero() || diff.valuation() > m)
    return F->residue_field()->zero();
  return (diff * F->pi().pow(-m)).residue();
}

} // namespace

LfcContext lfc_setup(const GaloisGroup &G, const SubfieldData &base, int k) {
  const LocalFieldPtr &L = G.field();
  if (k < 1)
    raise(ErrorKind::InvalidInput, "k must be positive");
  if (L->precision() < 2 * k + 2 * L->e())
    raise(ErrorKind::PrecisionTooSmall, "working precision " + std::to_string(L->precision()) +
                                            " below 2k + 2e = " + std::to_string(2 * k + 2 * L->e()));
  LfcContext ctx;
  std::vector<Automorphism> elems;
  for (int h : base.subgroup)
    elems.push_back(G[h]);
  ctx.group = std::make_shared<GaloisGroup>(L, std::move(elems));
  ctx.base = base;
  ctx.k = k;
  ctx.d = base.d;
  ctx.f_K = base.f_K;
  ctx.comp = lf_compositum_F(L, base.e_rel);
  const auto &F = ctx.comp.field;
  ctx.Phi = {L->f() % F->f(), F->pi()};
  return ctx;
}

FieldElement norm_F_L(const LfcContext &ctx, const FieldElement &x) {
  FieldElement acc = x, y = x;
  for (int i = 1; i < ctx.base.e_rel; ++i) {
    y = ctx.Phi.apply(y);
    acc = acc * y;
  }
  return acc;
}

FieldElement solve_norm_unit(const LfcContext &ctx, const FieldElement &u) {
  const auto &F = ctx.comp.field;
  const auto &L = ctx.comp.embedding.source();
  FieldElement uF = ctx.comp.embedding.apply(u);
  if (uF.is_zero() || uF.valuation() != 0)
    raise(ErrorKind::NormSolveFailed, "norm target is not a unit");
  const int r = ctx.base.e_rel;
  if (r == 1)
    return uF;
  const auto &kF = F->residue_field();
  const int fF = kF->degree();
  const std::int64_t ex = (kF->order() - 1) / (L->q() - 1);
  const std::int64_t a = ff_dlog(uF.residue(), kF->gen());
  if (a % ex != 0)
    raise(ErrorKind::NormSolveFailed, "residue of the target is not in the base residue field");
  FieldElement v = lf_teichmueller(ff_pow(kF->gen(), a / ex), *F);

  // trace from the residue field of F to that of L, as an F_p-matrix
  std::vector<std::int64_t> A(fF * fF, 0);
  for (int t = 0; t < fF; ++t) {
    std::vector<std::int64_t> et(fF, 0);
    et[t] = 1;
    FFElem y = kF->from_coords(et), acc = kF->zero();
    for (int i = 0; i < r; ++i)
      acc = acc + ff_frobenius(y, L->f() * i);
    for (int row = 0; row < fF; ++row)
      A[row * fF + t] = acc.coords[row];
  }
  for (int m = 1; m <= ctx.k + 1; ++m) {
    FieldElement defect = uF / norm_F_L(ctx, v);
    require_unit_level(defect - F->one(), m, ErrorKind::NormSolveFailed, "norm equation");
    FFElem b = level_residue(defect, m);
    if (b.is_zero())
      continue;
    std::vector<std::int64_t> x;
    if (!fp_solve(F->p(), A, fF, fF, b.coords, x))
      raise(ErrorKind::NormSolveFailed, "trace equation has no solution at level " + std::to_string(m));
    v = v * (F->one() + F->lift_residue(kF->from_coords(x)) * F->pi().pow(m));
  }
  if (!equal_mod_units(norm_F_L(ctx, v), uF, ctx.k + 2))
    raise(ErrorKind::NormSolveFailed, "norm residual check failed");
  return v;
}

FieldElement lfc_step1_pi(const LfcContext &ctx) {
  const auto &L = ctx.comp.embedding.source();
  const auto &F = ctx.comp.field;
  const FieldElement &pi_K = ctx.base.pi_K;
  if (pi_K.valuation() != ctx.base.e_rel)
    raise(ErrorKind::Other, "prime element of the base has the wrong valuation");
  FieldElement pi;
  if (ctx.base.e_rel == 1) {
    pi = ctx.comp.embedding.apply(pi_K);
  } else {
    FieldElement u = pi_K * L->pi().pow(-ctx.base.e_rel);
    pi = solve_norm_unit(ctx, u) * F->pi();
  }
  if (!equal_mod_units(norm_F_L(ctx, pi), ctx.comp.embedding.apply(pi_K), ctx.k + 2))
    raise(ErrorKind::NormSolveFailed, "N(pi) differs from the base prime element");
  return pi;
}

FieldElement solve_phi_twist(const LfcContext &ctx, const FieldElement &c) {
  const auto &F = ctx.comp.field;
  if (c.is_zero() || c.valuation() != 0)
    raise(ErrorKind::NormConditionViolated, "twist target is not a unit");
  if (ctx.base.e_rel == 1) {
    if (!equal_mod_units(c, F->one(), ctx.k + 2))
      raise(ErrorKind::NormConditionViolated, "Gal(F/L) is trivial but the target is not 1");
    return F->one();
  }
  const int fL = ctx.comp.embedding.source()->f();
  FieldElement u = lf_teichmueller(ff_solve_hilbert90(c.residue(), fL), *F);
  for (int m = 1; m <= ctx.k + 1; ++m) {
    FieldElement defect = c * u / ctx.Phi.apply(u);
    require_unit_level(defect - F->one(), m, ErrorKind::NormConditionViolated, "twist equation");
    FFElem b = level_residue(defect, m);
    if (b.is_zero())
      continue;
    FFElem y;
    try {
      y = ff_solve_artin_schreier(b, fL);
    } catch (const Error &e) {
      if (e.kind() == ErrorKind::TraceConditionViolated)
        raise(ErrorKind::NormConditionViolated, "twist equation unsolvable at level " + std::to_string(m));
      throw;
    }
    u = u * (F->one() + F->lift_residue(y) * F->pi().pow(m));
  }
  if (!equal_mod_units(ctx.Phi.apply(u), c * u, ctx.k + 2))
    raise(ErrorKind::NormConditionViolated, "twist residual check failed");
  return u;
}

FieldElement lfc_step2_usigma(const LfcContext &ctx, int s, const FieldElement &pi) {
  const auto &F = ctx.comp.field;
  if (s == ctx.group->identity())
    return F->one();
  if (ctx.base.e_rel == 1)
    return pi.inverse();
  Automorphism sh = lift_sigma_hat((*ctx.group)[s], ctx.comp, ctx.d, ctx.f_K);
  return solve_phi_twist(ctx, sh.apply(pi) / pi);
}

CompositumVector lfc_beta(const LfcContext &ctx, int s, const FieldElement &u_sigma, const FieldElement &pi) {
  const Automorphism &sigma = (*ctx.group)[s];
  const int j = restrict_unram(sigma, ctx.d, ctx.f_K);
  CompositumVector b(ctx.d, u_sigma);
  if (j > 0) {
    Automorphism sh = lift_sigma_hat(sigma, ctx.comp, ctx.d, ctx.f_K);
    FieldElement tail = u_sigma * sh.apply(pi);
    for (int i = ctx.d - j; i < ctx.d; ++i)
      b[i] = tail;
  }
  return b;
}

CompositumVector act(const LfcContext &ctx, int s, const CompositumVector &y) {
  const Automorphism &sigma = (*ctx.group)[s];
  const int j = restrict_unram(sigma, ctx.d, ctx.f_K);
  Automorphism sh = lift_sigma_hat(sigma, ctx.comp, ctx.d, ctx.f_K);
  CompositumVector z(y.size());
  for (std::size_t i = 0; i < y.size(); ++i)
    z[i] = sh.apply(y[i]);
  // (phi, 1)(y) = (y_1, ..., y_{d-1}, Phi(y_0)), applied j times
  for (int step = 0; step < j; ++step) {
    FieldElement first = ctx.Phi.apply(z[0]);
    for (int i = 0; i + 1 < ctx.d; ++i)
      z[i] = z[i + 1];
    z[ctx.d - 1] = first;
  }
  return z;
}

TwoCocycle lfc_gamma(const LfcContext &ctx, const OneCochain &beta, Exec exec) {
  const auto &G = *ctx.group;
  const int n = G.size();
  const int k = ctx.k;
  TwoCocycle out;
  out.group = ctx.group;
  out.k = k;
  out.values.assign(n, std::vector<FieldElement>(n));
  parallel_for(n * n, exec == Exec::Parallel, [&](int idx) {
    const int s = idx / n, t = idx % n;
    CompositumVector sb = act(ctx, s, beta[t]);
    const CompositumVector &bs = beta[s];
    const CompositumVector &bst = beta[G.mul(s, t)];
    CompositumVector g(ctx.d);
    for (int i = 0; i < ctx.d; ++i)
      g[i] = sb[i] * bs[i] / bst[i];
    for (int i = 1; i < ctx.d; ++i)
      if (!equal_mod_units(g[i], g[0], k))
        raise(ErrorKind::DiagonalityViolated, "components of gamma differ");
    if (!equal_mod_units(ctx.Phi.apply(g[0]), g[0], k))
      raise(ErrorKind::NotInL, "gamma is not fixed by Gal(F/L)");
    auto back = ctx.comp.embedding.pullback(g[0].with_prec_rel(k));
    if (!back)
      raise(ErrorKind::NotInL, "gamma does not lie in L");
    FieldElement val = back->inverse().with_prec_rel(k);
    if (val.prec_rel() < k)
      raise(ErrorKind::PrecisionExhausted, "cocycle value lost precision below k");
    out.values[s][t] = val;
  });
  return out;
}

LfcResult lfc_main(const GaloisGroup &G, const SubfieldData &base, int k, Exec exec) {
  LfcResult r;
  r.ctx = lfc_setup(G, base, k);
  r.pi = lfc_step1_pi(r.ctx);
  const int n = r.ctx.group->size();
  r.u_sigma.resize(n);
  r.beta.resize(n);
  parallel_for(n, exec == Exec::Parallel, [&](int s) {
    r.u_sigma[s] = lfc_step2_usigma(r.ctx, s, r.pi);
    r.beta[s] = lfc_beta(r.ctx, s, r.u_sigma[s], r.pi);
  });
  r.cocycle = lfc_gamma(r.ctx, r.beta, exec);
  return r;
}

LfcResult lfc_main(const GaloisGroup &G, int k, Exec exec) { return lfc_main(G, base_field_Qp(G), k, exec); }

} // namespace lfc
