#include "lfc/finite_field.hpp"

#include "lfc/error.hpp"
#include "lfc/zmod.hpp"

#include <algorithm>
#include <numeric>

namespace lfc {

namespace {

std::int64_t pmod(std::int64_t v, std::int64_t p) {
  v %= p;
  return v < 0 ? v + p : v;
}

std::int64_t inv_mod_small(std::int64_t a, std::int64_t p) {
  return zmod::inv(pmod(a, p), p);
}

// Dense polynomials over F_p, low to high, trimmed.
using Poly = std::vector<std::int64_t>;

void trim(Poly &a) {
  while (!a.empty() && a.back() == 0)
    a.pop_back();
}

Poly poly_mulmod(const Poly &a, const Poly &b, const Poly &m, std::int64_t p) {
  Poly r(a.size() + b.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  // m monic
  const std::size_t dm = m.size() - 1;
  for (std::size_t i = r.size(); i-- > dm;) {
    std::int64_t c = r[i];
    if (c == 0)
      continue;
    for (std::size_t j = 0; j <= dm; ++j)
      r[i - dm + j] = pmod(r[i - dm + j] - c * m[j], p);
  }
  r.resize(std::min(r.size(), dm));
  trim(r);
  return r;
}

Poly poly_mod(Poly a, const Poly &m, std::int64_t p) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  std::int64_t lead_inv = inv_mod_small(m.back(), p);
  while (a.size() > dm) {
    std::int64_t c = a.back() * lead_inv % p;
    std::size_t shift = a.size() - 1 - dm;
    for (std::size_t j = 0; j <= dm; ++j)
      a[shift + j] = pmod(a[shift + j] - c * m[j], p);
    trim(a);
  }
  return a;
}

Poly poly_gcd(Poly a, Poly b, std::int64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

Poly poly_powmod(Poly base, std::int64_t e, const Poly &m, std::int64_t p) {
  Poly r{1};
  base = poly_mod(base, m, p);
  while (e > 0) {
    if (e & 1)
      r = poly_mulmod(r, base, m, p);
    base = poly_mulmod(base, base, m, p);
    e >>= 1;
  }
  return r;
}

std::vector<std::int64_t> prime_factors(std::int64_t n) {
  std::vector<std::int64_t> out;
  for (std::int64_t q = 2; q * q <= n; ++q) {
    if (n % q == 0) {
      out.push_back(q);
      while (n % q == 0)
        n /= q;
    }
  }
  if (n > 1)
    out.push_back(n);
  return out;
}

bool is_prime(std::int64_t n) {
  if (n < 2)
    return false;
  for (std::int64_t q = 2; q * q <= n; ++q)
    if (n % q == 0)
      return false;
  return true;
}

// Rabin irreducibility test for a monic polynomial of degree n.
bool is_irreducible(const Poly &m, std::int64_t p) {
  const int n = static_cast<int>(m.size()) - 1;
  if (n == 1)
    return true;
  auto x_pow_p_pow = [&](int k) {
    Poly r{0, 1};
    for (int i = 0; i < k; ++i)
      r = poly_powmod(r, p, m, p);
    return r;
  };
  Poly x{0, 1};
  Poly full = x_pow_p_pow(n);
  Poly diff = full;
  diff.resize(std::max<std::size_t>(diff.size(), 2), 0);
  diff[1] = pmod(diff[1] - 1, p);
  trim(diff);
  if (!diff.empty())
    return false;
  for (std::int64_t r : prime_factors(n)) {
    Poly t = x_pow_p_pow(n / static_cast<int>(r));
    t.resize(std::max<std::size_t>(t.size(), 2), 0);
    t[1] = pmod(t[1] - 1, p);
    trim(t);
    Poly g = poly_gcd(m, t, p);
    if (g.size() != 1)
      return false;
  }
  return true;
}

// w is primitive iff its order is exactly p^n - 1.
bool is_primitive_modulus(const Poly &m, std::int64_t p, std::int64_t order) {
  const std::int64_t units = order - 1;
  Poly x{0, 1};
  if (m.size() == 2) {
    // linear modulus x + a: w = -a
    std::int64_t w = pmod(-m[0], p);
    if (w == 0)
      return false;
    std::int64_t acc = 1;
    for (std::int64_t k = 1; k < units; ++k) {
      acc = acc * w % p;
      if (acc == 1)
        return false;
    }
    return true;
  }
  if (poly_powmod(x, units, m, p) != Poly{1})
    return false;
  for (std::int64_t r : prime_factors(units))
    if (poly_powmod(x, units / r, m, p) == Poly{1})
      return false;
  return true;
}

FFElem make_elem(const FiniteField &k, std::vector<std::int64_t> c) {
  FFElem e;
  e.parent = k.shared_from_this();
  e.coords = std::move(c);
  return e;
}

void check_same(const FFElem &a, const FFElem &b) {
  if (a.parent != b.parent &&
      (a.parent->p() != b.parent->p() || a.parent->modulus() != b.parent->modulus()))
    raise(ErrorKind::ParentMismatch, "finite field elements from different fields");
}

} // namespace

bool FFElem::is_zero() const {
  return std::all_of(coords.begin(), coords.end(), [](auto c) { return c == 0; });
}

bool FFElem::is_one() const {
  if (coords.empty() || coords[0] != 1)
    return false;
  return std::all_of(coords.begin() + 1, coords.end(), [](auto c) { return c == 0; });
}

bool operator==(const FFElem &a, const FFElem &b) {
  return a.parent->p() == b.parent->p() && a.parent->modulus() == b.parent->modulus() &&
         a.coords == b.coords;
}

FiniteField::FiniteField(std::int64_t p, std::vector<std::int64_t> modulus)
    : p_(p), n_(static_cast<int>(modulus.size())), modulus_(std::move(modulus)) {
  order_ = 1;
  for (int i = 0; i < n_; ++i)
    order_ *= p_;
}

FiniteFieldPtr FiniteField::make(std::int64_t p, int n) {
  if (!is_prime(p) || n < 1)
    raise(ErrorKind::InvalidInput, "finite field needs a prime p and degree n >= 1");
  std::int64_t order = 1;
  for (int i = 0; i < n; ++i) {
    order *= p;
    if (order >= kMaxOrder)
      raise(ErrorKind::InvalidInput, "finite field order must stay below 2^20");
  }
  for (std::int64_t idx = 0; idx < order; ++idx) {
    Poly m(n + 1, 0);
    std::int64_t t = idx;
    for (int i = 0; i < n; ++i) {
      m[i] = t % p;
      t /= p;
    }
    m[n] = 1;
    if (m[0] == 0 && n > 1)
      continue;
    if (!is_primitive_modulus(m, p, order))
      continue;
    m.pop_back();
    auto field = std::shared_ptr<FiniteField>(new FiniteField(p, m));
    field->primitive_ = true;
    return field;
  }
  raise(ErrorKind::Other, "no primitive polynomial found");
}

FiniteFieldPtr FiniteField::make(std::int64_t p, std::vector<std::int64_t> modulus) {
  if (!is_prime(p) || modulus.empty())
    raise(ErrorKind::InvalidInput, "finite field needs a prime p and a nonconstant modulus");
  for (auto &c : modulus)
    c = pmod(c, p);
  auto field = std::shared_ptr<FiniteField>(new FiniteField(p, modulus));
  if (field->order_ >= kMaxOrder)
    raise(ErrorKind::InvalidInput, "finite field order must stay below 2^20");
  Poly m = modulus;
  m.push_back(1);
  if (!is_irreducible(m, p))
    raise(ErrorKind::InvalidInput, "modulus is not irreducible");
  field->primitive_ = is_primitive_modulus(m, p, field->order_);
  return field;
}

FFElem FiniteField::zero() const { return make_elem(*this, std::vector<std::int64_t>(n_, 0)); }

FFElem FiniteField::one() const { return from_int(1); }

FFElem FiniteField::from_int(std::int64_t v) const {
  std::vector<std::int64_t> c(n_, 0);
  c[0] = pmod(v, p_);
  return make_elem(*this, std::move(c));
}

FFElem FiniteField::gen() const {
  std::vector<std::int64_t> c(n_, 0);
  if (n_ == 1)
    c[0] = pmod(-modulus_[0], p_);
  else
    c[1] = 1;
  return make_elem(*this, std::move(c));
}

FFElem FiniteField::from_coords(std::span<const std::int64_t> src) const {
  std::vector<std::int64_t> c(n_, 0);
  for (std::size_t i = 0; i < src.size() && i < c.size(); ++i)
    c[i] = pmod(src[i], p_);
  return make_elem(*this, std::move(c));
}

FFElem FiniteField::element(std::int64_t index) const {
  std::vector<std::int64_t> c(n_, 0);
  for (int i = 0; i < n_; ++i) {
    c[i] = index % p_;
    index /= p_;
  }
  return make_elem(*this, std::move(c));
}

std::int64_t FiniteField::index_of(const FFElem &a) const {
  std::int64_t idx = 0;
  for (int i = n_ - 1; i >= 0; --i)
    idx = idx * p_ + a.coords[i];
  return idx;
}

void FiniteField::build_tables() const {
  std::call_once(tables_once_, [this] {
    const std::int64_t units = order_ - 1;
    FFElem base = primitive_ ? gen() : one();
    if (!primitive_) {
      auto factors = prime_factors(units);
      for (std::int64_t idx = 2; idx < order_; ++idx) {
        FFElem cand = element(idx);
        bool ok = ff_pow(cand, units).is_one();
        for (auto r : factors)
          ok = ok && !ff_pow(cand, units / r).is_one();
        if (ok) {
          base = cand;
          break;
        }
      }
    }
    log_.assign(order_, -1);
    exp_.assign(units, 0);
    FFElem acc = one();
    for (std::int64_t k = 0; k < units; ++k) {
      std::int64_t idx = index_of(acc);
      exp_[k] = idx;
      log_[idx] = static_cast<std::int32_t>(k);
      acc = ff_mul(acc, base);
    }
    log_base_index_ = index_of(base);
  });
}

const std::vector<std::int32_t> &FiniteField::log_table() const {
  build_tables();
  return log_;
}

const std::vector<std::int64_t> &FiniteField::exp_table() const {
  build_tables();
  return exp_;
}

FFElem FiniteField::log_base() const {
  build_tables();
  return element(log_base_index_);
}

FFElem ff_add(const FFElem &a, const FFElem &b) {
  check_same(a, b);
  const auto p = a.parent->p();
  FFElem r = a;
  for (std::size_t i = 0; i < r.coords.size(); ++i)
    r.coords[i] = (a.coords[i] + b.coords[i]) % p;
  return r;
}

FFElem ff_neg(const FFElem &a) {
  const auto p = a.parent->p();
  FFElem r = a;
  for (auto &c : r.coords)
    c = c == 0 ? 0 : p - c;
  return r;
}

FFElem ff_sub(const FFElem &a, const FFElem &b) { return ff_add(a, ff_neg(b)); }

FFElem ff_mul(const FFElem &a, const FFElem &b) {
  check_same(a, b);
  const auto &k = *a.parent;
  const auto p = k.p();
  const int n = k.degree();
  std::vector<std::int64_t> r(2 * n - 1, 0);
  for (int i = 0; i < n; ++i) {
    if (a.coords[i] == 0)
      continue;
    for (int j = 0; j < n; ++j)
      r[i + j] = (r[i + j] + a.coords[i] * b.coords[j]) % p;
  }
  const auto &m = k.modulus();
  for (int i = 2 * n - 2; i >= n; --i) {
    std::int64_t c = r[i];
    if (c == 0)
      continue;
    for (int j = 0; j < n; ++j)
      r[i - n + j] = pmod(r[i - n + j] - c * m[j], p);
  }
  r.resize(n);
  return make_elem(k, std::move(r));
}

FFElem ff_pow(const FFElem &a, std::int64_t e) {
  if (e < 0)
    return ff_pow(ff_inv(a), -e);
  FFElem r = a.parent->one();
  FFElem base = a;
  while (e > 0) {
    if (e & 1)
      r = ff_mul(r, base);
    base = ff_mul(base, base);
    e >>= 1;
  }
  return r;
}

FFElem ff_inv(const FFElem &a) {
  if (a.is_zero())
    raise(ErrorKind::DivisionByZero, "inverse of zero in finite field");
  return ff_pow(a, a.parent->order() - 2);
}

FFElem ff_arith(const FFElem &a, const FFElem &b, FFOp op, std::int64_t exponent) {
  switch (op) {
  case FFOp::Add: return ff_add(a, b);
  case FFOp::Sub: return ff_sub(a, b);
  case FFOp::Mul: return ff_mul(a, b);
  case FFOp::Inv: return ff_inv(a);
  case FFOp::Pow: return ff_pow(a, exponent);
  }
  return a;
}

FFElem ff_frobenius(const FFElem &a, int d) {
  const int n = a.parent->degree();
  d %= n;
  if (d < 0)
    d += n;
  FFElem r = a;
  for (int i = 0; i < d; ++i)
    r = ff_pow(r, a.parent->p());
  return r;
}

NormTrace ff_norm_trace(const FFElem &a, int d) {
  const int n = a.parent->degree();
  if (d <= 0 || n % d != 0)
    raise(ErrorKind::DegreeError, "subfield degree must divide the field degree");
  FFElem norm = a.parent->one();
  FFElem trace = a.parent->zero();
  FFElem conj = a;
  for (int i = 0; i < n / d; ++i) {
    norm = ff_mul(norm, conj);
    trace = ff_add(trace, conj);
    conj = ff_frobenius(conj, d);
  }
  return {norm, trace};
}

std::int64_t ff_dlog(const FFElem &x, const FFElem &g) {
  check_same(x, g);
  if (x.is_zero() || g.is_zero())
    raise(ErrorKind::ZeroArgument, "discrete log of zero");
  const auto &k = *x.parent;
  const std::int64_t units = k.order() - 1;
  const auto &log = k.log_table();
  std::int64_t lx = log[k.index_of(x)];
  std::int64_t lg = log[k.index_of(g)];
  if (units == 1)
    return 0;
  if (std::gcd(lg, units) != 1)
    raise(ErrorKind::NotAGenerator, "element does not generate the unit group");
  std::int64_t inv = zmod::inv(lg, units);
  return static_cast<std::int64_t>(static_cast<__int128>(lx) * inv % units);
}

FFElem ff_solve_hilbert90(const FFElem &c, int d) {
  const auto &k = *c.parent;
  if (c.is_zero())
    raise(ErrorKind::NormConditionViolated, "Hilbert 90 right-hand side is zero");
  const std::int64_t units = k.order() - 1;
  std::int64_t qd = 1;
  for (int i = 0; i < d; ++i)
    qd *= k.p();
  const std::int64_t expo = (qd - 1) % units;
  const auto &log = k.log_table();
  const auto &exp = k.exp_table();
  const std::int64_t a = log[k.index_of(c)];
  // b * expo == a (mod units)
  const std::int64_t g = std::gcd(expo, units);
  if (a % g != 0)
    raise(ErrorKind::NormConditionViolated, "norm of the right-hand side is not 1");
  const std::int64_t m = units / g;
  std::int64_t b0 = 0;
  if (m > 1)
    b0 = static_cast<std::int64_t>(static_cast<__int128>(a / g) * zmod::inv((expo / g) % m, m) % m);
  std::int64_t best = -1;
  for (std::int64_t t = 0; t < g; ++t) {
    std::int64_t idx = exp[(b0 + t * m) % units];
    if (best < 0 || idx < best)
      best = idx;
  }
  return k.element(best);
}

bool fp_solve(std::int64_t p, std::vector<std::int64_t> a, int rows, int cols,
              std::vector<std::int64_t> b, std::vector<std::int64_t> &x) {
  std::vector<int> pivot_col;
  int r = 0;
  for (int col = 0; col < cols && r < rows; ++col) {
    int piv = -1;
    for (int i = r; i < rows; ++i)
      if (pmod(a[i * cols + col], p) != 0) {
        piv = i;
        break;
      }
    if (piv < 0)
      continue;
    if (piv != r) {
      for (int j = 0; j < cols; ++j)
        std::swap(a[piv * cols + j], a[r * cols + j]);
      std::swap(b[piv], b[r]);
    }
    std::int64_t inv = inv_mod_small(a[r * cols + col], p);
    for (int j = 0; j < cols; ++j)
      a[r * cols + j] = pmod(a[r * cols + j] * inv, p);
    b[r] = pmod(b[r] * inv, p);
    for (int i = 0; i < rows; ++i) {
      if (i == r)
        continue;
      std::int64_t f = pmod(a[i * cols + col], p);
      if (f == 0)
        continue;
      for (int j = 0; j < cols; ++j)
        a[i * cols + j] = pmod(a[i * cols + j] - f * a[r * cols + j], p);
      b[i] = pmod(b[i] - f * b[r], p);
    }
    pivot_col.push_back(col);
    ++r;
  }
  for (int i = r; i < rows; ++i)
    if (pmod(b[i], p) != 0)
      return false;
  x.assign(cols, 0);
  for (int i = 0; i < r; ++i)
    x[pivot_col[i]] = pmod(b[i], p);
  return true;
}

FFElem ff_solve_artin_schreier(const FFElem &b, int d) {
  const auto &k = *b.parent;
  const int n = k.degree();
  const auto p = k.p();
  // column j = Frob^d(e_j) - e_j
  std::vector<std::int64_t> a(static_cast<std::size_t>(n) * n, 0);
  for (int j = 0; j < n; ++j) {
    std::vector<std::int64_t> ej(n, 0);
    ej[j] = 1;
    FFElem img = ff_sub(ff_frobenius(k.from_coords(ej), d), k.from_coords(ej));
    for (int i = 0; i < n; ++i)
      a[i * n + j] = img.coords[i];
  }
  std::vector<std::int64_t> x;
  if (!fp_solve(p, a, n, n, b.coords, x))
    raise(ErrorKind::TraceConditionViolated, "Artin-Schreier equation has no solution in the field");
  return k.from_coords(x);
}

} // namespace lfc
