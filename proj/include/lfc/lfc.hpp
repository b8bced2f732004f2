#pragma once

#include "lfc/galois.hpp"

#include <string>
#include <vector>

namespace lfc {

inline constexpr const char *kAlgorithmVersion = "lfc-1.0.0";

/// Values in L^x meaningful modulo U^(k), indexed by positions in `group`.
struct TwoCocycle {
  GaloisGroupPtr group;
  int k = 0;
  std::vector<std::vector<FieldElement>> values;

  const FieldElement &operator()(int s, int t) const { return values[s][t]; }
};

/// Element of L_nr modelled as a vector of d components in F.
using CompositumVector = std::vector<FieldElement>;
using OneCochain = std::vector<CompositumVector>;

enum class Exec { Serial, Parallel };

/// Everything the algorithm computed on the way to the cocycle.
struct LfcContext {
  GaloisGroupPtr group;       // Gal(L/K)
  SubfieldData base;          // K inside L
  Compositum comp;            // F = LN
  Automorphism Phi;           // generator of Gal(F/L)
  int k = 0;
  int d = 1;
  int f_K = 1;
};

/// Algorithm setup for L/K with K = L^H given by `base`.
LfcContext lfc_setup(const GaloisGroup &G, const SubfieldData &base, int k);

/// N_{F/L}(x) as the product of the Gal(F/L)-conjugates, in F.
FieldElement norm_F_L(const LfcContext &ctx, const FieldElement &x);

/// v in U_F with N_{F/L}(v) = u mod U^(k+2).
FieldElement solve_norm_unit(const LfcContext &ctx, const FieldElement &u);

/// pi in F with N_{F/L}(pi) = pi_K mod U^(k+2).
FieldElement lfc_step1_pi(const LfcContext &ctx);

/// u with Phi(u)/u = c mod U_F^(k+2), c a unit of norm 1.
FieldElement solve_phi_twist(const LfcContext &ctx, const FieldElement &c);

/// u_sigma for the element at position s of ctx.group.
FieldElement lfc_step2_usigma(const LfcContext &ctx, int s, const FieldElement &pi);

CompositumVector lfc_beta(const LfcContext &ctx, int s, const FieldElement &u_sigma, const FieldElement &pi);

/// sigma acting on L_nr = prod_d F.
CompositumVector act(const LfcContext &ctx, int s, const CompositumVector &y);

/// Coboundary of beta, checked diagonal and in L; returns the L-valued table.
TwoCocycle lfc_gamma(const LfcContext &ctx, const OneCochain &beta, Exec exec = Exec::Serial);

struct LfcResult {
  TwoCocycle cocycle;  // u_{L/K}
  LfcContext ctx;
  FieldElement pi;     // in F
  std::vector<FieldElement> u_sigma;
  OneCochain beta;
};

/// The local fundamental class u_{L/K} modulo U^(k).
LfcResult lfc_main(const GaloisGroup &G, const SubfieldData &base, int k, Exec exec = Exec::Parallel);
LfcResult lfc_main(const GaloisGroup &G, int k, Exec exec = Exec::Parallel);

} // namespace lfc
