#include "lfc/cohomology.hpp"

#include "lfc/error.hpp"

namespace lfc {

Cochain2 inflate(const TwoCocycle &g, const std::vector<int> &proj, const Embedding &embed,
                 const UnitsQuotient &M_big) {
  const int n = static_cast<int>(proj.size());
  Cochain2 out(n, std::vector<Coord>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      out[a][b] = M_big.dlog(embed.apply(g.values[proj[a]][proj[b]]));
  return out;
}

Cochain2 unramified_cocycle(const std::vector<int> &exponents, int n, const FieldElement &pi_K,
                            const UnitsQuotient &M) {
  const int m = static_cast<int>(exponents.size());
  const Coord zero(M.dim(), 0);
  const Coord pk = M.dlog(pi_K);
  Cochain2 out(m, std::vector<Coord>(m));
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      out[a][b] = exponents[a] + exponents[b] < n ? zero : pk;
  return out;
}

CompositumGroup compositum_group(const LfcContext &ctx) {
  const auto &F = ctx.comp.field;
  const auto &G = *ctx.group;
  const int fL = G.field()->f();
  const int fF = F->f();
  const int n = G.size();
  CompositumGroup out;
  std::vector<Automorphism> elems;
  for (int s = 0; s < n; ++s) {
    FieldElement img = ctx.comp.embedding.apply(G[s].pi_image);
    for (int j = G[s].frob_power % fL; j < fF; j += fL) {
      elems.push_back({j, img});
      out.to_G.push_back(s);
      out.to_cyclic.push_back((j / ctx.f_K) % n);
    }
  }
  out.gamma = std::make_shared<GaloisGroup>(F, std::move(elems));
  return out;
}

CompositumCheck verify_via_compositum(const GaloisGroup &G, const SubfieldData &base, int k,
                                      const TwoCocycle *override_class) {
  LfcResult r = lfc_main(G, base, k);
  const TwoCocycle &u = override_class ? *override_class : r.cocycle;
  CompositumGroup cg = compositum_group(r.ctx);
  const GaloisGroup &Gamma = *cg.gamma;
  auto M = uq_build(r.ctx.comp.field, k);
  auto A = action_matrices(*M, Gamma);
  Cochain2 g1 = inflate(u, cg.to_G, r.ctx.comp.embedding, *M);
  Cochain2 g2 = unramified_cocycle(cg.to_cyclic, r.ctx.group->size(), r.ctx.comp.embedding.apply(base.pi_K), *M);
  CompositumCheck out;
  out.gamma_order = Gamma.size();
  out.witness = cohomologous(Gamma, g1, g2, *M, A);
  out.ok = out.witness.has_value();
  return out;
}

RestrictionCheck verify_restriction(const GaloisGroup &G, const std::vector<int> &H, int k) {
  if (!is_subgroup(G, H))
    raise(ErrorKind::InvalidInput, "not a subgroup");
  LfcResult full = lfc_main(G, k);
  SubfieldData base = lf_fixed_field(G, H);
  LfcResult sub = lfc_main(G, base, k);
  std::vector<int> pos(G.size(), -1);
  for (std::size_t i = 0; i < full.ctx.base.subgroup.size(); ++i)
    pos[full.ctx.base.subgroup[i]] = static_cast<int>(i);
  const auto &Hs = sub.ctx.base.subgroup;
  const int m = static_cast<int>(Hs.size());
  auto M = uq_build(G.field(), k);
  auto A = action_matrices(*M, *sub.ctx.group);
  Cochain2 res(m, std::vector<Coord>(m));
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      res[a][b] = M->dlog(full.cocycle.values[pos[Hs[a]]][pos[Hs[b]]]);
  Cochain2 own = cocycle_coords(sub.cocycle, *M);
  RestrictionCheck out;
  out.witness = cohomologous(*sub.ctx.group, res, own, *M, A);
  out.ok = out.witness.has_value();
  return out;
}

} // namespace lfc
