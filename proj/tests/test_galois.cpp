#include "doctest.h"

#include "lfc/error.hpp"
#include "lfc/galois.hpp"

#include <set>

using namespace lfc;

namespace {

LocalFieldPtr q2_sqrt2() { return LocalField::make(2, 1, {{-2}, {0}}, 30); }
LocalFieldPtr q2_zeta8() { return LocalField::make(2, 1, {{2}, {4}, {6}, {4}}, 40); }  // (x+1)^4 + 1
LocalFieldPtr q3_s3() { return LocalField::make(3, 1, {{3}, {0}, {0}, {0}, {0}, {0}}, 40); }  // x^6 + 3

void check_group_axioms(const GaloisGroup &G) {
  const int n = G.size();
  for (int a = 0; a < n; ++a) {
    CHECK(G.mul(a, G.identity()) == a);
    CHECK(G.mul(G.identity(), a) == a);
    CHECK(G.mul(a, G.inverse(a)) == G.identity());
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        CHECK(G.mul(G.mul(a, b), c) == G.mul(a, G.mul(b, c)));
  }
  // each row is a permutation
  for (int a = 0; a < n; ++a) {
    std::set<int> row;
    for (int b = 0; b < n; ++b)
      row.insert(G.mul(a, b));
    CHECK(static_cast<int>(row.size()) == n);
  }
}

// sigma respects both defining polynomials.
void check_generators(const GaloisGroup &G) {
  const auto &L = G.field();
  for (const auto &s : G.elements()) {
    CHECK(poly_eval(L->eisenstein_polynomial(s.frob_power), s.pi_image).is_zero());
    FFElem wbar = L->omega().residue();
    CHECK(s.apply(L->omega()).residue() == ff_frobenius(wbar, s.frob_power));
  }
}

} // namespace

TEST_CASE("Q_2(sqrt 2) has two automorphisms") {
  auto L = q2_sqrt2();
  auto G = compute_automorphisms(L);
  REQUIRE(G->size() == 2);
  std::set<bool> signs;
  for (const auto &s : G->elements()) {
    CHECK(s.frob_power == 0);
    bool plus = equal_mod_abs(s.pi_image, L->pi(), L->precision());
    bool minus = equal_mod_abs(s.pi_image, -L->pi(), L->precision());
    CHECK(plus != minus);
    signs.insert(plus);
  }
  CHECK(signs.size() == 2);
  check_group_axioms(*G);
  check_generators(*G);
}

TEST_CASE("unramified cubic over Q_2 is cyclic") {
  auto L = LocalField::make(2, 3, {{-2, 0, 0}}, 30);
  auto G = compute_automorphisms(L);
  REQUIRE(G->size() == 3);
  for (int i = 0; i < 3; ++i)
    CHECK(G->elements()[i].frob_power == i);
  CHECK(G->identity() == 0);
  CHECK(G->mul(1, 1) == 2);
  CHECK(G->mul(1, 2) == 0);
  check_group_axioms(*G);
}

TEST_CASE("non-Galois input") {
  auto L = LocalField::make(3, 1, {{-3}, {0}, {0}}, 30);
  try {
    compute_automorphisms(L);
    FAIL("expected NotGalois");
  } catch (const Error &e) {
    CHECK(e.kind() == ErrorKind::NotGalois);
  }
}

TEST_CASE("group structure on larger examples") {
  for (auto L : {q2_zeta8(), q3_s3(), LocalField::make(2, 2, {{2, 0}, {2, 0}}, 40),
                 LocalField::make(3, 2, {{3, 0}, {0, 0}}, 30)}) {
    auto G = compute_automorphisms(L);
    CHECK(G->size() == L->degree());
    CHECK(static_cast<int>(inertia_subgroup(*G).size()) == L->e());
    check_group_axioms(*G);
    check_generators(*G);
    if (G->precise())
      check_group_axioms(*G->precise());
  }
  auto S3 = compute_automorphisms(q3_s3());
  bool abelian = true;
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b)
      abelian &= S3->mul(a, b) == S3->mul(b, a);
  CHECK_FALSE(abelian);
  CHECK(subgroups_of_order(*S3, 2).size() == 3);
  CHECK(subgroups_of_order(*S3, 3).size() == 1);
  auto Z8 = compute_automorphisms(q2_zeta8());
  CHECK(subgroups_of_order(*Z8, 2).size() == 3);
}

TEST_CASE("restrict_unram") {
  auto L = LocalField::make(2, 4, {{-2, 0, 0, 0}}, 30);
  auto G = compute_automorphisms(L);
  for (int i = 0; i < 4; ++i)
    CHECK(restrict_unram((*G)[i], 4) == (4 - i) % 4);
  CHECK(restrict_unram((*G)[G->identity()], 4) == 0);
  auto R = compute_automorphisms(q2_sqrt2());
  for (const auto &s : R->elements())
    CHECK(restrict_unram(s, 1) == 0);
  // relative to the fixed field of phi^2: f_K = 2, d = 2
  CHECK(restrict_unram((*G)[2], 2, 2) == 1);
  CHECK_THROWS_AS(restrict_unram((*G)[1], 2, 2), Error);
}

TEST_CASE("lift_sigma_hat restricts to sigma") {
  for (auto L : {q2_sqrt2(), q2_zeta8(), LocalField::make(2, 2, {{2, 0}, {2, 0}}, 40), q3_s3()}) {
    auto G = compute_automorphisms(L);
    auto C = lf_compositum_F(L);
    const int d = L->f();
    for (const auto &s : G->elements()) {
      Automorphism h = lift_sigma_hat(s, C, d);
      for (const auto &x : {L->pi(), L->omega(), L->one() + L->omega() * L->pi()}) {
        FieldElement lhs = h.apply(C.embedding.apply(x));
        FieldElement rhs = C.embedding.apply(s.apply(x));
        CHECK(equal_mod_abs(lhs, rhs, L->precision()));
      }
      // unramified part: phi^(-j) on the residue field of F
      const int j = restrict_unram(s, d);
      FFElem wb = C.field->omega().residue();
      CHECK(h.apply(C.field->omega()).residue() == ff_frobenius(wb, ((C.field->f() - j) % C.field->f())));
    }
  }
  auto L = q2_sqrt2();
  auto G = compute_automorphisms(L);
  auto C = lf_compositum_F(L);
  for (const auto &s : G->elements()) {
    Automorphism h = lift_sigma_hat(s, C, 1);
    CHECK(h.frob_power == 0);
    CHECK(h.pi_image == C.embedding.apply(s.pi_image));
  }
  auto U = LocalField::make(3, 2, {{-3, 0}}, 30);
  auto GU = compute_automorphisms(U);
  auto CU = lf_compositum_F(U);
  for (const auto &s : GU->elements()) {
    Automorphism h = lift_sigma_hat(s, CU, 2);
    CHECK(h.frob_power == s.frob_power);
    CHECK(h.pi_image == s.pi_image);
  }
}

TEST_CASE("fixed fields") {
  auto L = q2_zeta8();
  auto G = compute_automorphisms(L);
  auto full = base_field_Qp(*G);
  CHECK(full.pi_K == L->from_int(2));
  CHECK(full.e_rel == 4);
  CHECK(full.basis.size() == 1);
  auto triv = lf_fixed_field(*G, {G->identity()});
  CHECK(triv.pi_K == L->pi());
  CHECK(triv.basis.size() == 4);

  for (auto L2 : {q2_zeta8(), q3_s3(), LocalField::make(2, 2, {{2, 0}, {2, 0}}, 40),
                  LocalField::make(3, 2, {{3, 0}, {0, 0}}, 30), LocalField::make(2, 4, {{-2, 0, 0, 0}}, 30)}) {
    auto G2 = compute_automorphisms(L2);
    for (int order = 2; order < G2->size(); ++order)
      for (const auto &H : subgroups_of_order(*G2, order)) {
        auto K = lf_fixed_field(*G2, H);
        CHECK(K.e_rel * K.d == order);
        CHECK(K.e_K * K.f_K * order == L2->degree());
        CHECK(K.pi_K.valuation() == K.e_rel);
        CHECK(static_cast<int>(K.basis.size()) * order == L2->degree());
        for (int h : H) {
          CHECK(equal_mod_abs(G2->apply(h, K.pi_K), K.pi_K, L2->precision()));
          for (const auto &b : K.basis)
            CHECK(equal_mod_abs(G2->apply(h, b), b, L2->precision()));
        }
        // a complement element moves pi_L or w unless H is everything
        CHECK(K.pi_K.prec_abs() >= L2->precision());
      }
  }
  CHECK_THROWS_AS(lf_fixed_field(*G, {1}), Error);
}
