#include "doctest.h"

#include "lfc/cohomology.hpp"
#include "lfc/error.hpp"

#include <random>
#include <set>

using namespace lfc;

namespace {

LocalFieldPtr q2_sqrt2(int prec = 30) { return LocalField::make(2, 1, {{-2}, {0}}, prec); }
LocalFieldPtr q2_unr3(int prec = 30) { return LocalField::make(2, 3, {{-2, 0, 0}}, prec); }
LocalFieldPtr q3_unr2(int prec = 30) { return LocalField::make(3, 2, {{-3, 0}}, prec); }
LocalFieldPtr q3_sqrt3(int prec = 30) { return LocalField::make(3, 1, {{3}, {0}}, prec); }
LocalFieldPtr q2_zeta8(int prec = 40) { return LocalField::make(2, 1, {{2}, {4}, {6}, {4}}, prec); }
LocalFieldPtr q3_s3(int prec = 40) { return LocalField::make(3, 1, {{3}, {0}, {0}, {0}, {0}, {0}}, prec); }

// sum a_ij w^j pi^i over i < levels, digits in [0, p)
FieldElement digit_element(const LocalFieldPtr &L, const std::vector<int> &digits) {
  FieldElement x = L->zero();
  FieldElement pii = L->one();
  const int f = L->f();
  for (std::size_t i = 0; i * f < digits.size(); ++i) {
    FieldElement w = L->one();
    for (int j = 0; j < f; ++j, w = w * L->omega())
      if (digits[i * f + j] != 0)
        x = x + L->from_int(digits[i * f + j]) * w * pii;
    pii = pii * L->pi();
  }
  return x;
}

FieldElement random_nonzero(const LocalFieldPtr &L, std::mt19937_64 &rng) {
  std::uniform_int_distribution<int> dig(0, static_cast<int>(L->p()) - 1);
  std::uniform_int_distribution<int> val(-3, 3);
  for (;;) {
    std::vector<int> d(L->f() * 12);
    for (auto &x : d)
      x = dig(rng);
    FieldElement x = digit_element(L, d);
    if (x.is_zero() || x.valuation() > 0)
      continue;
    return x * L->pi().pow(val(rng));
  }
}

} // namespace

TEST_CASE("dlog is a homomorphism and exp inverts it") {
  std::mt19937_64 rng(7);
  for (auto L : {q2_sqrt2(), q2_unr3(), q3_unr2(), q2_zeta8()}) {
    for (int k : {1, 3, 6}) {
      auto M = uq_build(L, k);
      for (int it = 0; it < 50; ++it) {
        FieldElement a = random_nonzero(L, rng), b = random_nonzero(L, rng);
        Coord ca = M->dlog(a), cb = M->dlog(b);
        CHECK(M->dlog(a * b) == M->add(ca, cb));
        CHECK(equal_mod_units(M->exp(ca), a, k));
      }
    }
  }
}

TEST_CASE("dlog is a bijection on (O/P^k)^x") {
  struct Case {
    LocalFieldPtr L;
    int k;
  };
  for (const auto &c : {Case{q2_sqrt2(), 4}, Case{q2_unr3(), 2}, Case{q3_sqrt3(), 3}, Case{q3_unr2(), 2},
                        Case{q2_zeta8(), 5}}) {
    auto M = uq_build(c.L, c.k);
    const int nd = c.L->f() * c.k;
    std::int64_t total = 1;
    for (int i = 0; i < nd; ++i)
      total *= c.L->p();
    std::set<Coord> seen;
    std::int64_t units = 0;
    std::vector<int> d(nd, 0);
    for (std::int64_t idx = 0; idx < total; ++idx) {
      std::int64_t r = idx;
      for (int i = 0; i < nd; ++i) {
        d[i] = static_cast<int>(r % c.L->p());
        r /= c.L->p();
      }
      FieldElement x = digit_element(c.L, d);
      if (x.is_zero() || x.valuation() > 0)
        continue;
      ++units;
      seen.insert(M->dlog(x));
    }
    CHECK(static_cast<std::int64_t>(seen.size()) == units);
    CHECK(M->torsion_order() == units);
  }
}

TEST_CASE("dlog rejects elements known too coarsely") {
  auto L = q2_sqrt2();
  auto M = uq_build(L, 6);
  FieldElement x = L->from_coords({1, 0}, 3);
  CHECK_THROWS_AS(M->dlog(x), Error);
}

TEST_CASE("action matrices follow the group law") {
  for (auto L : {q2_zeta8(), q3_s3()}) {
    auto G = compute_automorphisms(L);
    auto M = uq_build(L, 5);
    auto A = action_matrices(*M, *G);
    const int r = M->dim();
    for (int s = 0; s < G->size(); ++s) {
      for (int g = 0; g < r; ++g) {
        Coord e(r, 0);
        e[g] = 1;
        if (s == G->identity())
          CHECK(A.apply(*M, s, e) == M->reduce(e));
        for (int t = 0; t < G->size(); ++t)
          CHECK(A.apply(*M, s, A.apply(*M, t, e)) == A.apply(*M, G->mul(s, t), e));
      }
    }
  }
}

TEST_CASE("lfc output is a cocycle of order [L:K]") {
  struct Case {
    LocalFieldPtr L;
    int k;
  };
  // below these levels the class dies in H^2(G, L^x/U^(k))
  for (const auto &c : {Case{q2_sqrt2(), 6}, Case{q2_unr3(), 1}, Case{q2_zeta8(), 10}, Case{q3_s3(), 10}}) {
    const auto &L = c.L;
    const int k = c.k;
    auto G = compute_automorphisms(L);
    auto res = lfc_main(*G, k);
    auto M = uq_build(L, k);
    auto A = action_matrices(*M, *res.ctx.group);
    Cochain2 g = cocycle_coords(res.cocycle, *M);
    CHECK(is_cocycle(*res.ctx.group, g, *M, A).ok);
    CHECK(class_order(*res.ctx.group, g, *M, A) == G->size());
  }
}

TEST_CASE("a corrupted entry breaks the cocycle identity") {
  auto L = q2_zeta8();
  auto G = compute_automorphisms(L);
  auto res = lfc_main(*G, 6);
  auto M = uq_build(L, 6);
  auto A = action_matrices(*M, *res.ctx.group);
  Cochain2 g = cocycle_coords(res.cocycle, *M);
  g[1][2] = M->add(g[1][2], M->dlog(L->one() + L->pi()));
  auto chk = is_cocycle(*res.ctx.group, g, *M, A);
  CHECK_FALSE(chk.ok);
  CHECK(chk.s >= 0);
}

TEST_CASE("planted coboundaries are recognised") {
  std::mt19937_64 rng(11);
  for (auto L : {q2_sqrt2(), q2_zeta8(), q3_s3()}) {
    auto G = compute_automorphisms(L);
    auto M = uq_build(L, 5);
    auto A = action_matrices(*M, *G);
    Cochain1 c(G->size());
    for (auto &x : c)
      x = M->dlog(random_nonzero(L, rng));
    Cochain2 d = coboundary(*G, *M, A, c);
    CHECK(is_cocycle(*G, d, *M, A).ok);
    auto w = solve_coboundary(*G, d, *M, A);
    REQUIRE(w.has_value());
    CHECK(coboundary(*G, *M, A, *w) == d);
  }
}

TEST_CASE("cohomologous is symmetric") {
  auto L = q2_zeta8();
  auto G = compute_automorphisms(L);
  auto res = lfc_main(*G, 6);
  auto M = uq_build(L, 6);
  auto A = action_matrices(*M, *res.ctx.group);
  Cochain2 g = cocycle_coords(res.cocycle, *M);
  Cochain2 g2(g.size(), std::vector<Coord>(g.size()));
  Cochain2 g3 = g2;
  for (std::size_t s = 0; s < g.size(); ++s)
    for (std::size_t t = 0; t < g.size(); ++t) {
      g2[s][t] = M->scale(g[s][t], 2);
      g3[s][t] = M->scale(g[s][t], 9);
    }
  const auto &H = *res.ctx.group;
  CHECK(cohomologous(H, g, g3, *M, A).has_value() == cohomologous(H, g3, g, *M, A).has_value());
  CHECK(cohomologous(H, g, g3, *M, A).has_value());
  CHECK_FALSE(cohomologous(H, g, g2, *M, A).has_value());
  CHECK_FALSE(cohomologous(H, g2, g, *M, A).has_value());
}

TEST_CASE("H2 invariants of small extensions") {
  {
    auto L = q2_sqrt2();
    auto G = compute_automorphisms(L);
    auto M4 = uq_build(L, 4);
    auto A4 = action_matrices(*M4, *G);
    CHECK(h2_invariants(*G, *M4, A4).invariants() == std::vector<std::int64_t>{2});
    // U^(k) is not cohomologically trivial here: an extra Z/2 appears from k = 5 on
    auto M = uq_build(L, 6);
    auto A = action_matrices(*M, *G);
    auto H = h2_invariants(*G, *M, A);
    CHECK(H.invariants() == std::vector<std::int64_t>{2, 2});
    auto res = lfc_main(*G, 6);
    CHECK(H.class_order(cocycle_coords(res.cocycle, *M)) == 2);
  }
  {
    auto L = q2_unr3();
    auto G = compute_automorphisms(L);
    auto M = uq_build(L, 2);
    auto A = action_matrices(*M, *G);
    auto H = h2_invariants(*G, *M, A);
    CHECK(H.invariants() == std::vector<std::int64_t>{3});
    // phi^i, phi^j -> 1 or p
    std::vector<int> ex(3);
    for (int s = 0; s < 3; ++s)
      ex[s] = (*G)[s].frob_power;
    Cochain2 u = unramified_cocycle(ex, 3, L->from_int(2), *M);
    CHECK(H.class_order(u) == 3);
  }
  {
    auto L = q2_sqrt2();
    GaloisGroup T(L, {Automorphism{0, L->pi()}});
    auto M = uq_build(L, 4);
    auto A = action_matrices(*M, T);
    CHECK(h2_invariants(T, *M, A).order() == 1);
  }
}

namespace {

// |M^G / N(M)| by enumerating the torsion part, G cyclic with generator gen.
std::int64_t tate_h0_order(const GaloisGroup &G, int gen, const UnitsQuotient &M, const ActionMatrices &A) {
  const int n = G.size(), r = M.dim();
  std::vector<Coord> T{Coord(r, 0)};
  for (int i = 1; i < r; ++i) {
    std::vector<Coord> next;
    for (const auto &c : T)
      for (std::int64_t v = 0; v < M.moduli()[i]; ++v) {
        Coord d = c;
        d[i] = v;
        next.push_back(d);
      }
    T = std::move(next);
  }
  auto fixed = [&](const Coord &x) { return A.apply(M, gen, x) == M.reduce(x); };
  std::int64_t f0 = 0;
  for (const auto &t : T)
    f0 += fixed(t);
  int a = n;
  for (int z = 1; z < n && a == n; ++z)
    for (Coord t : T) {
      t[0] = z;
      if (fixed(t)) {
        a = z;
        break;
      }
    }
  std::set<Coord> norms;
  for (const auto &t : T) {
    Coord s(r, 0);
    for (int g = 0; g < n; ++g)
      s = M.add(s, A.apply(M, g, t));
    norms.insert(s);
  }
  return (n / a) * f0 / static_cast<std::int64_t>(norms.size());
}

} // namespace

TEST_CASE("H2 agrees with M^G / N(M) for cyclic groups") {
  for (auto L : {q2_sqrt2(), q3_sqrt3(), q2_unr3(), q3_unr2()}) {
    auto G = compute_automorphisms(L);
    int gen = -1;
    for (int s = 0; s < G->size() && gen < 0; ++s) {
      int o = 1;
      for (int x = s; x != G->identity(); x = G->mul(x, s))
        ++o;
      if (o == G->size())
        gen = s;
    }
    REQUIRE(gen >= 0);
    for (int k = 1; k <= 8; ++k) {
      auto M = uq_build(L, k);
      if (M->torsion_order() > 20000)
        break;
      auto A = action_matrices(*M, *G);
      CHECK(h2_invariants(*G, *M, A).order() == tate_h0_order(*G, gen, *M, A));
    }
  }
}

TEST_CASE("H2 of a Klein four extension and of S3") {
  {
    auto L = LocalField::make(3, 2, {{3, 0}, {0, 0}}, 30);  // Q_9(sqrt 3)... biquadratic over Q_3
    auto G = compute_automorphisms(L);
    REQUIRE(G->size() == 4);
    auto M = uq_build(L, 4);
    auto A = action_matrices(*M, *G);
    auto H = h2_invariants(*G, *M, A);
    CHECK(H.order() == 4);
    auto res = lfc_main(*G, 4);
    CHECK(H.class_order(cocycle_coords(res.cocycle, *M)) == 4);
  }
  {
    auto L = q3_s3();
    auto G = compute_automorphisms(L);
    auto M = uq_build(L, 10);
    auto A = action_matrices(*M, *G);
    auto H = h2_invariants(*G, *M, A);
    CHECK(H.order() % 6 == 0);
    auto res = lfc_main(*G, 10);
    CHECK(H.class_order(cocycle_coords(res.cocycle, *M)) == 6);
  }
}

TEST_CASE("H2 oracle size guard") {
  auto L = q2_zeta8();
  auto G = compute_automorphisms(L);
  auto M = uq_build(L, 8);
  auto A = action_matrices(*M, *G);
  OracleLimits lim;
  lim.max_dim = 16;
  CHECK_THROWS_AS(h2_invariants(*G, *M, A, lim), Error);
}

TEST_CASE("compositum check") {
  for (auto L : {q2_sqrt2(), q3_sqrt3(), q2_unr3()}) {
    auto G = compute_automorphisms(L);
    auto chk = verify_via_compositum(*G, base_field_Qp(*G), 6);
    CHECK(chk.ok);
    CHECK(chk.gamma_order == G->size() * L->e());
  }
}

TEST_CASE("compositum check rejects a wrong class") {
  auto L = q3_sqrt3();
  auto G = compute_automorphisms(L);
  TwoCocycle triv;
  auto res = lfc_main(*G, 6);
  triv = res.cocycle;
  for (auto &row : triv.values)
    for (auto &x : row)
      x = L->one();
  CHECK_FALSE(verify_via_compositum(*G, base_field_Qp(*G), 6, &triv).ok);
}

TEST_CASE("restriction check") {
  auto L = q2_zeta8();
  auto G = compute_automorphisms(L);
  for (const auto &H : subgroups_of_order(*G, 2))
    CHECK(verify_restriction(*G, H, 6).ok);
}
