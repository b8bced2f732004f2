#pragma once

#include "lfc/finite_field.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace lfc {

class LocalField;
using LocalFieldPtr = std::shared_ptr<const LocalField>;

/// Integral coordinates in the basis w^j pi^i (index i*f + j) over Z/p^M.
using Coords = std::vector<std::int64_t>;

/// Element of a local field in floating form x = pi^valuation * unit, where the
/// unit is known modulo P^(prec_abs - valuation). Digits beyond the known
/// precision are stored as zero. A zero element only records that x lies in
/// P^prec_abs.
class FieldElement {
public:
  FieldElement() = default;

  const LocalFieldPtr &parent() const { return parent_; }
  bool is_zero() const { return zero_; }
  /// Throws IndistinguishableFromZero for zero elements.
  int valuation() const;
  int prec_abs() const { return prec_abs_; }
  int prec_rel() const { return zero_ ? 0 : prec_abs_ - val_; }
  /// Integral unit coordinates (empty for zero).
  const Coords &unit() const { return unit_; }
  /// Coordinates of the element itself; requires valuation >= 0 or zero.
  Coords coords() const;
  /// Residue class in the residue field; requires valuation >= 0.
  FFElem residue() const;
  /// Unit residue of x / pi^v(x).
  FFElem unit_residue() const;

  /// Same element with precision lowered to min(prec_abs, new_abs).
  FieldElement with_prec_abs(int new_abs) const;
  FieldElement with_prec_rel(int new_rel) const;

  friend FieldElement operator+(const FieldElement &a, const FieldElement &b);
  friend FieldElement operator-(const FieldElement &a, const FieldElement &b);
  friend FieldElement operator*(const FieldElement &a, const FieldElement &b);
  friend FieldElement operator/(const FieldElement &a, const FieldElement &b);
  FieldElement operator-() const;
  FieldElement inverse() const;
  FieldElement pow(std::int64_t e) const;

  /// Digit-exact comparison of valuation, precision, and stored digits.
  friend bool operator==(const FieldElement &a, const FieldElement &b);
  /// a == b modulo P^n (absolute), judged on digits both operands know.
  friend bool equal_mod_abs(const FieldElement &a, const FieldElement &b, int n);

private:
  friend class LocalField;
  LocalFieldPtr parent_;
  bool zero_ = true;
  int val_ = 0;
  int prec_abs_ = 0;
  Coords unit_;
};

using Polynomial = std::vector<FieldElement>;  // low to high

/// a/b lies in U^(k) (both nonzero).
bool equal_mod_units(const FieldElement &a, const FieldElement &b, int k);

/// Two-level tower over Q_p: an unramified layer Z_p[w]/(g) of degree f, g the
/// canonical lift of the residue modulus, followed by an Eisenstein layer of
/// degree e over it. Immutable once built.
class LocalField : public std::enable_shared_from_this<LocalField> {
public:
  /// eis_coeffs: the e non-leading coefficients a_0..a_{e-1} of the monic
  /// Eisenstein polynomial, each an f-vector of unramified-layer coordinates.
  /// The e = 1 case `x - p` (or any x - p*unit) gives an unramified field.
  static LocalFieldPtr make(std::int64_t p, int f, std::vector<std::vector<std::int64_t>> eis_coeffs,
                            int precision);

  std::int64_t p() const { return p_; }
  int f() const { return f_; }
  int e() const { return e_; }
  int degree() const { return e_ * f_; }
  /// Working absolute precision in powers of the prime element.
  int precision() const { return prec_; }
  /// Coordinate ring is Z/p^M with M = modulus_exponent().
  int modulus_exponent() const { return m_; }
  std::int64_t modulus() const { return pm_; }
  /// Absolute precision the coordinate ring can represent.
  int capacity() const { return e_ * m_; }
  const FiniteFieldPtr &residue_field() const { return residue_; }
  /// Residue field size q = p^f.
  std::int64_t q() const { return residue_->order(); }
  /// Eisenstein coefficients (unramified-layer coordinates), low to high.
  const std::vector<Coords> &eis_coeffs() const { return eis_; }

  /// Same tower at a different working precision.
  LocalFieldPtr with_precision(int precision) const;

  FieldElement zero(int prec_abs) const;
  FieldElement zero() const { return zero(prec_); }
  FieldElement one() const;
  FieldElement from_int(std::int64_t v) const;
  FieldElement pi() const;
  FieldElement omega() const;
  /// Element from unramified-layer coordinates (length f).
  FieldElement from_unram(std::span<const std::int64_t> c) const;
  /// Element from integral coordinates known modulo P^prec_abs.
  FieldElement from_coords(const Coords &c, int prec_abs) const;
  FieldElement from_coords(const Coords &c) const { return from_coords(c, prec_); }
  /// Rebuild an element from its serialized parts.
  FieldElement from_parts(int valuation, const Coords &unit, int prec_abs) const;
  /// Coordinate lift of a residue class (digits in [0, p)).
  FieldElement lift_residue(const FFElem &r) const;

  // Unramified-layer arithmetic, exposed for the automorphism code.
  Coords unram_mul(const Coords &a, const Coords &b) const;
  Coords unram_inv(const Coords &a) const;
  /// phi^j applied to an unramified-layer element (phi = arithmetic Frobenius).
  Coords unram_frobenius(const Coords &a, int j) const;

  // Integral ring arithmetic on full coordinate vectors.
  Coords int_mul(const Coords &a, const Coords &b) const;
  Coords int_add(const Coords &a, const Coords &b) const;
  Coords int_shift(const Coords &a, int t) const;  // multiply by pi^t
  int int_valuation(const Coords &a, int cap) const;
  Coords truncate(Coords a, int abs) const;

  /// Automorphism action: w -> phi^frob_power(w), pi -> pi_image.
  FieldElement apply_automorphism(int frob_power, const FieldElement &pi_image,
                                  const FieldElement &x) const;

  /// Eisenstein polynomial with coefficients twisted by phi^j, as a monic
  /// polynomial over this field.
  Polynomial eisenstein_polynomial(int twist = 0) const;

private:
  friend class FieldElement;
  friend FieldElement operator+(const FieldElement &a, const FieldElement &b);
  friend FieldElement operator*(const FieldElement &a, const FieldElement &b);
  LocalField() = default;
  void init();
  FieldElement normalize(Coords c, int base_val, int abs) const;
  Coords divide_by_pi_power(Coords c, int t) const;
  Coords unit_inverse(const Coords &u, int rel) const;

  std::int64_t p_ = 0;
  int f_ = 0;
  int e_ = 0;
  int prec_ = 0;
  int m_ = 0;
  std::int64_t pm_ = 0;
  FiniteFieldPtr residue_;
  Coords unram_mod_;           // g non-leading coefficients mod p^M
  std::vector<Coords> eis_;    // Eisenstein coefficients
  Coords eps_inv_;             // (pi^e / p)^(-1), integral unit
  std::vector<std::vector<Coords>> frob_powers_;  // [j][t] = phi^j(w^t)
};

int lf_valuation(const FieldElement &a);

/// Teichmueller lift of a nonzero residue: t^(p^f) = t, t = r mod P.
FieldElement lf_teichmueller(const FFElem &r, const LocalField &field);

Polynomial poly_derivative(const Polynomial &g);
FieldElement poly_eval(const Polynomial &g, const FieldElement &x);

/// Newton iteration from x0 under the Hensel hypothesis v(g(x0)) > 2 v(g'(x0)).
FieldElement lf_hensel_root(const Polynomial &g, const FieldElement &x0);

/// All roots of g in the valuation ring, by residue-disk refinement followed by
/// Newton lifting. Roots are ordered by their digit expansions.
std::vector<FieldElement> integral_roots(const Polynomial &g);

/// Unramified extension F of L of degree `degree` with the embedding of L.
class Embedding {
public:
  Embedding() = default;
  Embedding(LocalFieldPtr source, LocalFieldPtr target, Coords theta);

  const LocalFieldPtr &source() const { return source_; }
  const LocalFieldPtr &target() const { return target_; }
  /// Image of the unramified generator of the source.
  const Coords &theta() const { return theta_; }
  /// Map on unramified-layer coordinates.
  Coords map_unram(const Coords &c) const;
  FieldElement apply(const FieldElement &x) const;
  /// Preimage, or nullopt if the element is not in the image at its precision.
  std::optional<FieldElement> pullback(const FieldElement &y) const;
  /// Unramified-layer preimage (coords in source), or nullopt.
  std::optional<Coords> pullback_unram(const Coords &c, int digits) const;

private:
  LocalFieldPtr source_;
  LocalFieldPtr target_;
  Coords theta_;
  std::vector<Coords> theta_pows_;  // [t] = theta^t
  // Rows of [theta^t] forming a block invertible mod p.
  std::vector<int> pivot_rows_;
};

struct Compositum {
  LocalFieldPtr field;
  Embedding embedding;
};

/// F = L N for an unramified degree `unram_degree` (the ramification index of
/// L over the base); F has unramified degree f*unram_degree and the embedded
/// Eisenstein polynomial.
Compositum lf_compositum_F(const LocalFieldPtr &L, int unram_degree);
inline Compositum lf_compositum_F(const LocalFieldPtr &L) { return lf_compositum_F(L, L->e()); }

} // namespace lfc
