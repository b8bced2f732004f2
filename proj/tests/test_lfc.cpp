#include "doctest.h"

#include "lfc/cohomology.hpp"
#include "lfc/error.hpp"

using namespace lfc;

namespace {

LocalFieldPtr q2_sqrt2() { return LocalField::make(2, 1, {{-2}, {0}}, 30); }
LocalFieldPtr q2_zeta8() { return LocalField::make(2, 1, {{2}, {4}, {6}, {4}}, 40); }
LocalFieldPtr q3_s3() { return LocalField::make(3, 1, {{3}, {0}, {0}, {0}, {0}, {0}}, 40); }
LocalFieldPtr q3_biquad() { return LocalField::make(3, 2, {{3, 0}, {0, 0}}, 30); }

LocalFieldPtr unramified(std::int64_t p, int n) {
  std::vector<std::int64_t> c(n, 0);
  c[0] = -p;
  return LocalField::make(p, n, {c}, 16);
}

bool same(const FieldElement &a, const FieldElement &b) {
  return a == b;
}

} // namespace

TEST_CASE("unramified extensions give the explicit cocycle") {
  for (std::int64_t p : {2, 3, 5})
    for (int n = 2; n <= 6; ++n) {
      auto L = unramified(p, n);
      auto G = compute_automorphisms(L);
      auto r = lfc_main(*G, 6);
      for (int s = 0; s < n; ++s)
        for (int t = 0; t < n; ++t) {
          const int i = (*G)[s].frob_power, j = (*G)[t].frob_power;
          FieldElement want = i + j < n ? L->one() : L->from_int(p);
          CHECK(equal_mod_units(r.cocycle(s, t), want, 6));
        }
    }
}

TEST_CASE("norm and twist residuals") {
  for (auto L : {q2_sqrt2(), q2_zeta8(), q3_s3(), q3_biquad()}) {
    auto G = compute_automorphisms(L);
    auto r = lfc_main(*G, 6);
    const auto &ctx = r.ctx;
    const int k = ctx.k;
    // N_{F/L} as the product over the elements of Gal(F/K) restricting to the identity
    auto cg = compositum_group(ctx);
    FieldElement nrm = ctx.comp.field->one();
    int count = 0;
    for (int g = 0; g < cg.gamma->size(); ++g)
      if (cg.to_G[g] == ctx.group->identity()) {
        nrm = nrm * cg.gamma->apply(g, r.pi);
        ++count;
      }
    CHECK(count == ctx.base.e_rel);
    CHECK(equal_mod_units(nrm, ctx.comp.embedding.apply(ctx.base.pi_K), k + 2));
    for (int s = 0; s < ctx.group->size(); ++s) {
      Automorphism sh = lift_sigma_hat((*ctx.group)[s], ctx.comp, ctx.d, ctx.f_K);
      const FieldElement &u = r.u_sigma[s];
      CHECK(equal_mod_units(ctx.Phi.apply(u) * u.inverse(), sh.apply(r.pi) * r.pi.inverse(), k + 2));
    }
  }
}

TEST_CASE("serial and parallel runs agree exactly") {
  for (auto L : {q2_zeta8(), q3_s3()}) {
    auto G = compute_automorphisms(L);
    auto a = lfc_main(*G, 6, Exec::Serial);
    auto b = lfc_main(*G, 6, Exec::Parallel);
    for (int s = 0; s < G->size(); ++s)
      for (int t = 0; t < G->size(); ++t)
        CHECK(same(a.cocycle(s, t), b.cocycle(s, t)));
  }
}

TEST_CASE("lower level output is the truncation of the higher one") {
  for (auto L : {q2_sqrt2(), q2_zeta8(), q3_s3()}) {
    auto G = compute_automorphisms(L);
    auto lo = lfc_main(*G, 4);
    auto hi = lfc_main(*G, 8);
    auto M = uq_build(L, 4);
    for (int s = 0; s < G->size(); ++s)
      for (int t = 0; t < G->size(); ++t)
        CHECK(M->dlog(lo.cocycle(s, t)) == M->dlog(hi.cocycle(s, t)));
  }
}

TEST_CASE("values carry the promised precision") {
  auto L = q3_s3();
  auto G = compute_automorphisms(L);
  auto r = lfc_main(*G, 6);
  for (const auto &row : r.cocycle.values)
    for (const auto &x : row) {
      REQUIRE_FALSE(x.is_zero());
      CHECK(x.prec_abs() >= x.valuation() + 6);
    }
}

TEST_CASE("trivial group") {
  auto L = q2_sqrt2();
  auto G = compute_automorphisms(L);
  auto base = lf_fixed_field(*G, {G->identity()});
  auto r = lfc_main(*G, base, 6);
  REQUIRE(r.cocycle.values.size() == 1);
  CHECK(equal_mod_units(r.cocycle(0, 0), L->one(), 6));
}

TEST_CASE("subextension bases") {
  auto L = q3_biquad();
  auto G = compute_automorphisms(L);
  for (const auto &H : subgroups_of_order(*G, 2)) {
    auto base = lf_fixed_field(*G, H);
    auto r = lfc_main(*G, base, 6);
    CHECK(r.ctx.group->size() == 2);
    auto M = uq_build(L, 6);
    auto A = action_matrices(*M, *r.ctx.group);
    auto g = cocycle_coords(r.cocycle, *M);
    CHECK(is_cocycle(*r.ctx.group, g, *M, A).ok);
    CHECK(class_order(*r.ctx.group, g, *M, A) == 2);
  }
}

TEST_CASE("precision guard") {
  auto L = LocalField::make(2, 1, {{-2}, {0}}, 12);
  auto G = compute_automorphisms(L);
  CHECK_THROWS_AS(lfc_main(*G, 6), Error);
  try {
    lfc_main(*G, 6);
  } catch (const Error &e) {
    CHECK(e.kind() == ErrorKind::PrecisionTooSmall);
  }
}
