#pragma once

#include "lfc/local_field.hpp"

#include <memory>
#include <string>
#include <vector>

namespace lfc {

/// w -> phi^frob_power(w), pi -> pi_image.
struct Automorphism {
  int frob_power = 0;
  FieldElement pi_image;

  FieldElement apply(const FieldElement &x) const {
    return x.parent()->apply_automorphism(frob_power, pi_image, x);
  }
};

/// a o b (b applied first).
Automorphism compose(const Automorphism &a, const Automorphism &b);

class GaloisGroup;
using GaloisGroupPtr = std::shared_ptr<const GaloisGroup>;

class GaloisGroup {
public:
  /// Builds the multiplication table; elements must be closed under composition.
  GaloisGroup(LocalFieldPtr field, std::vector<Automorphism> elements);

  const LocalFieldPtr &field() const { return field_; }
  int size() const { return static_cast<int>(elements_.size()); }
  const std::vector<Automorphism> &elements() const { return elements_; }
  const Automorphism &operator[](int i) const { return elements_[i]; }
  int identity() const { return identity_; }
  /// Index of elements[a] o elements[b].
  int mul(int a, int b) const { return mul_[a][b]; }
  int inverse(int a) const { return inv_[a]; }
  /// Index of the element agreeing best with `s`; throws if ambiguous.
  int index_of(const Automorphism &s) const;
  FieldElement apply(int i, const FieldElement &x) const { return elements_[i].apply(x); }

  /// The same group with images kept at the highest precision the
  /// coordinate ring allows; null if this group already is that.
  const GaloisGroupPtr &precise() const { return precise_; }

private:
  friend GaloisGroupPtr compute_automorphisms(const LocalFieldPtr &L);
  LocalFieldPtr field_;
  std::vector<Automorphism> elements_;
  std::vector<std::vector<int>> mul_;
  std::vector<int> inv_;
  int identity_ = 0;
  GaloisGroupPtr precise_;
};

/// Gal(L/Q_p): for each Frobenius power j, the roots of the j-twisted
/// Eisenstein polynomial. Ordered by j, then by root digits.
GaloisGroupPtr compute_automorphisms(const LocalFieldPtr &L);

/// Re-express an element in another precision of the same tower.
FieldElement transfer(const FieldElement &x, const LocalFieldPtr &target);

bool is_subgroup(const GaloisGroup &G, const std::vector<int> &H);
std::vector<std::vector<int>> subgroups_of_order(const GaloisGroup &G, int order);
/// Elements acting trivially on the residue field.
std::vector<int> inertia_subgroup(const GaloisGroup &G);

/// Fixed field K = L^H, described inside L.
struct SubfieldData {
  std::vector<int> subgroup;  // sorted indices into G
  int e_rel = 1;              // e(L/K)
  int d = 1;                  // f(L/K)
  int e_K = 1;
  int f_K = 1;
  FieldElement pi_K;
  /// Z_p-basis t^a pi_K^b of the integers of K, t the Teichmueller generator.
  std::vector<FieldElement> basis;
};

SubfieldData lf_fixed_field(const GaloisGroup &G, const std::vector<int> &H);
/// K = Q_p.
SubfieldData base_field_Qp(const GaloisGroup &G);

/// j in [0, d) with sigma|E = phi_K^(-j) on the degree-d unramified part of L/K.
int restrict_unram(const Automorphism &s, int d, int f_K = 1);

/// sigma-hat on F: restriction sigma to L, phi_K^(-j) on the unramified part.
Automorphism lift_sigma_hat(const Automorphism &s, const Compositum &F, int d, int f_K = 1);

/// Isomorphism type for small groups: C<n>, V4, S3, D4, Q8, or G<n>.
std::string group_label(const GaloisGroup &G);

/// a and b are isomorphic over Q_p (some Frobenius twist of the Eisenstein
/// polynomial of a has a root in b).
bool lf_isomorphic(const LocalFieldPtr &a, const LocalFieldPtr &b);

} // namespace lfc
