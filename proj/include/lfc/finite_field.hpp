#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <span>
#include <vector>

namespace lfc {

class FiniteField;
using FiniteFieldPtr = std::shared_ptr<const FiniteField>;

/// Element of F_{p^n}, stored as coordinates in the power basis 1, w, ..., w^{n-1}
/// of the defining modulus.
struct FFElem {
  FiniteFieldPtr parent;
  std::vector<std::int64_t> coords;

  bool is_zero() const;
  bool is_one() const;
  friend bool operator==(const FFElem &a, const FFElem &b);
};

/// F_{p^n} = F_p[w]/(modulus). p^n is capped below 2^20 so discrete logarithms
/// can be tabulated by enumeration.
class FiniteField : public std::enable_shared_from_this<FiniteField> {
public:
  static constexpr std::int64_t kMaxOrder = std::int64_t{1} << 20;

  /// Canonical field: the modulus is the smallest monic primitive polynomial of
  /// degree n, ordering coefficient vectors (a_0, ..., a_{n-1}) as base-p
  /// numbers with a_0 least significant.
  static FiniteFieldPtr make(std::int64_t p, int n);
  /// Field with a caller-supplied monic modulus given low-to-high without the
  /// leading 1. The modulus must be irreducible.
  static FiniteFieldPtr make(std::int64_t p, std::vector<std::int64_t> modulus);

  std::int64_t p() const { return p_; }
  int degree() const { return n_; }
  std::int64_t order() const { return order_; }
  /// Non-leading coefficients of the monic modulus, low to high.
  const std::vector<std::int64_t> &modulus() const { return modulus_; }
  /// True when the class of w generates the multiplicative group.
  bool generator_is_primitive() const { return primitive_; }

  FFElem zero() const;
  FFElem one() const;
  FFElem from_int(std::int64_t v) const;
  FFElem gen() const;
  FFElem from_coords(std::span<const std::int64_t> c) const;
  /// i-th element in the fixed enumeration order (coordinates are the base-p
  /// digits of i, coordinate 0 least significant).
  FFElem element(std::int64_t index) const;
  std::int64_t index_of(const FFElem &a) const;

  /// log table w.r.t. a fixed primitive element; built once on first use.
  const std::vector<std::int32_t> &log_table() const;
  const std::vector<std::int64_t> &exp_table() const;
  /// Primitive element underlying the log tables.
  FFElem log_base() const;

private:
  FiniteField(std::int64_t p, std::vector<std::int64_t> modulus);
  void build_tables() const;

  std::int64_t p_;
  int n_;
  std::int64_t order_;
  std::vector<std::int64_t> modulus_;
  bool primitive_ = false;

  mutable std::once_flag tables_once_;
  mutable std::vector<std::int32_t> log_;  // indexed by element index
  mutable std::vector<std::int64_t> exp_;  // exp_[k] = index of base^k
  mutable std::int64_t log_base_index_ = 0;
};

enum class FFOp { Add, Sub, Mul, Inv, Pow };

FFElem ff_add(const FFElem &a, const FFElem &b);
FFElem ff_sub(const FFElem &a, const FFElem &b);
FFElem ff_neg(const FFElem &a);
FFElem ff_mul(const FFElem &a, const FFElem &b);
FFElem ff_inv(const FFElem &a);
FFElem ff_pow(const FFElem &a, std::int64_t e);
/// Dispatching form; `exponent` is only read for Pow and `b` is ignored for Inv/Pow.
FFElem ff_arith(const FFElem &a, const FFElem &b, FFOp op, std::int64_t exponent = 0);

inline FFElem operator+(const FFElem &a, const FFElem &b) { return ff_add(a, b); }
inline FFElem operator-(const FFElem &a, const FFElem &b) { return ff_sub(a, b); }
inline FFElem operator*(const FFElem &a, const FFElem &b) { return ff_mul(a, b); }

/// a^(p^d).
FFElem ff_frobenius(const FFElem &a, int d);

struct NormTrace {
  FFElem norm;
  FFElem trace;
};
/// Norm and trace from F_{p^n} down to F_{p^d}; d must divide n.
NormTrace ff_norm_trace(const FFElem &a, int d);

/// x != 0 with x^(p^d - 1) = c. Among all solutions the one with the smallest
/// enumeration index is returned.
FFElem ff_solve_hilbert90(const FFElem &c, int d);

/// y with y^(p^d) - y = b, from the F_p-linear system (Frob^d - 1) y = b.
/// Free variables are set to zero.
FFElem ff_solve_artin_schreier(const FFElem &b, int d);

/// k in [0, p^n - 1) with g^k = x.
std::int64_t ff_dlog(const FFElem &x, const FFElem &g);

/// Solves A x = b over F_p by Gaussian elimination (first nonzero pivot,
/// free variables zero). A is row-major rows x cols. Returns false when
/// inconsistent.
bool fp_solve(std::int64_t p, std::vector<std::int64_t> a, int rows, int cols,
              std::vector<std::int64_t> b, std::vector<std::int64_t> &x);

} // namespace lfc
