#pragma once

#include "lfc/lfc.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace lfc {

using Coord = std::vector<std::int64_t>;

/// L^x / U^(k) as Z x Z/(q-1) x (prime-power one-unit part), with a discrete log.
class UnitsQuotient {
public:
  static std::shared_ptr<const UnitsQuotient> build(const LocalFieldPtr &L, int k);

  const LocalFieldPtr &field() const { return field_; }
  int k() const { return k_; }
  int dim() const { return static_cast<int>(moduli_.size()); }
  /// Modulus per coordinate; 0 marks the valuation coordinate.
  const std::vector<std::int64_t> &moduli() const { return moduli_; }
  const std::vector<FieldElement> &generators() const { return gens_; }
  bool has_teichmueller() const { return has_teich_; }
  /// Exponent of the torsion part.
  std::int64_t torsion_exponent() const;
  /// Order of the torsion part (= |(O/P^k)^x|).
  std::int64_t torsion_order() const;

  Coord dlog(const FieldElement &x) const;
  FieldElement exp(const Coord &c) const;
  Coord reduce(Coord c) const;
  Coord add(const Coord &a, const Coord &b) const;
  Coord sub(const Coord &a, const Coord &b) const;
  Coord scale(const Coord &a, std::int64_t m) const;

private:
  // digits of a one-unit along the generators 1 + w^j pi^i
  std::vector<std::int64_t> one_unit_digits(FieldElement y) const;

  LocalFieldPtr field_;
  int k_ = 0;
  bool has_teich_ = false;
  std::vector<std::int64_t> moduli_;
  std::vector<FieldElement> gens_;
  FieldElement teich_gen_;
  std::vector<std::vector<std::vector<FieldElement>>> level_inv_pows_;  // [i-1][j][b] = g_ij^-b
  std::vector<std::vector<std::int64_t>> Q_;  // digit vector -> Smith coordinates
  std::vector<int> kept_;                     // Smith columns with nontrivial modulus
  std::int64_t qmod_ = 0;                     // p^(k+1)
};
using UnitsQuotientPtr = std::shared_ptr<const UnitsQuotient>;
inline UnitsQuotientPtr uq_build(const LocalFieldPtr &L, int k) { return UnitsQuotient::build(L, k); }

/// rows[s][g] = dlog(sigma_s(generator g)); coords(sigma x) = coords(x) * A_s.
struct ActionMatrices {
  std::vector<std::vector<Coord>> rows;
  Coord apply(const UnitsQuotient &M, int s, const Coord &x) const;
};
ActionMatrices action_matrices(const UnitsQuotient &M, const GaloisGroup &G);

/// Cochains in coordinates: [s][t] for 2-cochains, [s] for 1-cochains.
using Cochain2 = std::vector<std::vector<Coord>>;
using Cochain1 = std::vector<Coord>;

Cochain2 cocycle_coords(const TwoCocycle &c, const UnitsQuotient &M);
Cochain2 coboundary(const GaloisGroup &G, const UnitsQuotient &M, const ActionMatrices &A, const Cochain1 &c);

struct CocycleCheck {
  bool ok = true;
  int s = -1, t = -1, u = -1;  // first failing triple
};
CocycleCheck is_cocycle(const GaloisGroup &G, const Cochain2 &g, const UnitsQuotient &M, const ActionMatrices &A);

/// c with dc = delta, or nullopt.
std::optional<Cochain1> solve_coboundary(const GaloisGroup &G, const Cochain2 &delta, const UnitsQuotient &M,
                                         const ActionMatrices &A);
/// Witness c with dc = g1 - g2.
std::optional<Cochain1> cohomologous(const GaloisGroup &G, const Cochain2 &g1, const Cochain2 &g2,
                                     const UnitsQuotient &M, const ActionMatrices &A);
/// Smallest m dividing |G| with m g a coboundary.
int class_order(const GaloisGroup &G, const Cochain2 &g, const UnitsQuotient &M, const ActionMatrices &A);

struct OracleLimits {
  int max_group = 16;
  int max_dim = 512;  // |G|^2 * dim(M)
};

/// H^2(G, L^x/U^(k)) by kernel and image of the coboundary maps.
class H2Group {
public:
  /// Invariant factors, ascending, trivial factors dropped.
  const std::vector<std::int64_t> &invariants() const { return inv_; }
  std::int64_t order() const;
  /// Coordinates of the class of a cocycle along the invariant factors.
  Coord classify(const Cochain2 &g) const;
  /// Order of the class of a cocycle.
  std::int64_t class_order(const Cochain2 &g) const;

private:
  friend H2Group h2_invariants(const GaloisGroup &, const UnitsQuotient &, const ActionMatrices &, OracleLimits);
  struct Part;
  std::vector<std::int64_t> inv_;
  std::vector<std::shared_ptr<const Part>> parts_;
};
H2Group h2_invariants(const GaloisGroup &G, const UnitsQuotient &M, const ActionMatrices &A,
                      OracleLimits lim = {});

/// g o (proj x proj), values pushed through `embed` and taken in M_big.
Cochain2 inflate(const TwoCocycle &g, const std::vector<int> &proj, const Embedding &embed,
                 const UnitsQuotient &M_big);

/// Explicit class of the unramified extension of degree n: 1 or pi_K.
Cochain2 unramified_cocycle(const std::vector<int> &exponents, int n, const FieldElement &pi_K,
                            const UnitsQuotient &M);

struct CompositumCheck {
  bool ok = false;
  int gamma_order = 0;
  std::optional<Cochain1> witness;
};
/// u_{L/K} and u_{N/K} inflated to Gal(F/K) agree in H^2.
CompositumCheck verify_via_compositum(const GaloisGroup &G, const SubfieldData &base, int k,
                                      const TwoCocycle *override_class = nullptr);
/// Gal(F/K) as automorphisms of F, with the projections to Gal(L/K) and to
/// exponents of phi_K on N.
struct CompositumGroup {
  GaloisGroupPtr gamma;
  std::vector<int> to_G;      // positions in the Gal(L/K) group of the lfc run
  std::vector<int> to_cyclic; // exponent of phi_K in [0, n)
};
CompositumGroup compositum_group(const LfcContext &ctx);

struct RestrictionCheck {
  bool ok = false;
  std::optional<Cochain1> witness;
};
/// res_H u_{L/Q_p} ~ u_{L/L^H}.
RestrictionCheck verify_restriction(const GaloisGroup &G, const std::vector<int> &H, int k);

} // namespace lfc
