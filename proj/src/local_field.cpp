#include "lfc/local_field.hpp"

#include "lfc/error.hpp"
#include "lfc/zmod.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace lfc {

namespace {

int ceil_div(int a, int b) { return a <= 0 ? 0 : (a + b - 1) / b; }

std::int64_t ipow(std::int64_t p, int k) {
  std::int64_t r = 1;
  for (int i = 0; i < k; ++i)
    r *= p;
  return r;
}

void check_parent(const FieldElement &a, const FieldElement &b) {
  if (a.parent() != b.parent())
    raise(ErrorKind::ParentMismatch, "field elements from different fields");
}

} // namespace

// ---------------------------------------------------------------------------
// LocalField construction

LocalFieldPtr LocalField::make(std::int64_t p, int f, std::vector<std::vector<std::int64_t>> eis_coeffs,
                               int precision) {
  if (f < 1 || eis_coeffs.empty())
    raise(ErrorKind::InvalidInput, "need f >= 1 and e >= 1");
  auto field = std::shared_ptr<LocalField>(new LocalField());
  field->p_ = p;
  field->f_ = f;
  field->e_ = static_cast<int>(eis_coeffs.size());
  field->prec_ = precision;
  field->residue_ = FiniteField::make(p, f);
  int m = 0;
  std::int64_t pm = 1;
  while (pm <= (std::numeric_limits<std::int64_t>::max() / 2) / p) {
    pm *= p;
    ++m;
  }
  field->m_ = m;
  field->pm_ = pm;
  for (auto &c : eis_coeffs) {
    if (static_cast<int>(c.size()) > f)
      raise(ErrorKind::InvalidInput, "Eisenstein coefficient has more than f coordinates");
    c.resize(f, 0);
    for (auto &x : c)
      x = zmod::reduce(x, pm);
  }
  const int e = field->e_;
  for (int i = 0; i < e; ++i) {
    int v = m;
    for (auto x : eis_coeffs[i])
      v = std::min(v, zmod::val(x, p, m));
    if (v < 1)
      raise(ErrorKind::NotEisenstein,
            "coefficient of x^" + std::to_string(i) + " is not divisible by p");
    if (i == 0 && v != 1)
      raise(ErrorKind::NotEisenstein, "constant term must have valuation exactly 1");
  }
  field->eis_ = std::move(eis_coeffs);
  if (precision < 2 || precision > field->capacity() - 4 * e)
    raise(ErrorKind::PrecisionTooSmall,
          "working precision must lie in [2, " + std::to_string(field->capacity() - 4 * e) + "]");
  field->init();
  return field;
}

LocalFieldPtr LocalField::with_precision(int precision) const {
  return make(p_, f_, eis_, precision);
}

void LocalField::init() {
  const auto &mod = residue_->modulus();
  unram_mod_.assign(mod.begin(), mod.end());
  // phi(w): root of g congruent to w^p, by Newton iteration in the unramified ring.
  Coords w(f_, 0);
  if (f_ == 1)
    w[0] = zmod::reduce(-unram_mod_[0], pm_);
  else
    w[1] = 1;
  // g(x) and g'(x) for g = x^f + sum g_i x^i
  auto eval_g = [&](const Coords &x, bool derivative) {
    Coords acc(f_, 0);
    for (int i = 0; i <= f_; ++i) {
      std::int64_t coeff = i == f_ ? 1 : unram_mod_[i];
      int power = i;
      if (derivative) {
        if (i == 0)
          continue;
        coeff = zmod::mul(coeff, i, pm_);
        power = i - 1;
      }
      Coords xpow(f_, 0);
      xpow[0] = 1;
      for (int t = 0; t < power; ++t)
        xpow = unram_mul(xpow, x);
      for (int t = 0; t < f_; ++t)
        acc[t] = zmod::add(acc[t], zmod::mul(coeff, xpow[t], pm_), pm_);
    }
    return acc;
  };
  Coords phi_w(f_, 0);
  {
    Coords x(f_, 0);
    x[0] = 1;
    for (std::int64_t k = 0; k < p_; ++k)
      x = unram_mul(x, w);
    for (int it = 0; it < 8; ++it) {
      Coords gx = eval_g(x, false);
      Coords dgx = eval_g(x, true);
      Coords step = unram_mul(gx, unram_inv(dgx));
      for (int t = 0; t < f_; ++t)
        x[t] = zmod::sub(x[t], step[t], pm_);
    }
    phi_w = x;
  }
  frob_powers_.assign(f_, std::vector<Coords>(f_, Coords(f_, 0)));
  Coords phi_j_w = w;
  for (int j = 0; j < f_; ++j) {
    Coords acc(f_, 0);
    acc[0] = 1;
    for (int t = 0; t < f_; ++t) {
      frob_powers_[j][t] = acc;
      acc = unram_mul(acc, phi_j_w);
    }
    // phi^{j+1}(w) = phi^j(phi(w)) = sum phi_w_t * phi^j(w)^t
    Coords next(f_, 0);
    for (int t = 0; t < f_; ++t)
      for (int s = 0; s < f_; ++s)
        next[s] = zmod::add(next[s], zmod::mul(phi_w[t], frob_powers_[j][t][s], pm_), pm_);
    phi_j_w = next;
  }
  // eps = pi^e / p = -(sum a_i pi^i) / p
  Coords eps(static_cast<std::size_t>(e_) * f_, 0);
  for (int i = 0; i < e_; ++i)
    for (int j = 0; j < f_; ++j) {
      std::int64_t a = eis_[i][j];
      eps[i * f_ + j] = zmod::reduce(-(a / p_), pm_);
    }
  eps_inv_ = unit_inverse(eps, capacity());
}

// ---------------------------------------------------------------------------
// Unramified layer

Coords LocalField::unram_mul(const Coords &a, const Coords &b) const {
  const int f = f_;
  if (f == 1)
    return Coords{zmod::mul(a[0], b[0], pm_)};
  std::vector<__int128> r(2 * f - 1, 0);
  for (int i = 0; i < f; ++i) {
    if (a[i] == 0)
      continue;
    for (int j = 0; j < f; ++j)
      r[i + j] = (r[i + j] + static_cast<__int128>(a[i]) * b[j]) % pm_;
  }
  for (int i = 2 * f - 2; i >= f; --i) {
    std::int64_t c = static_cast<std::int64_t>(r[i]);
    if (c == 0)
      continue;
    for (int j = 0; j < f; ++j)
      r[i - f + j] = (r[i - f + j] - static_cast<__int128>(c) * unram_mod_[j]) % pm_;
  }
  Coords out(f);
  for (int i = 0; i < f; ++i)
    out[i] = zmod::reduce128(r[i], pm_);
  return out;
}

Coords LocalField::unram_inv(const Coords &a) const {
  FFElem res = residue_->from_coords(a);
  if (res.is_zero())
    raise(ErrorKind::DivisionByZero, "inverse of a non-unit in the unramified layer");
  FFElem r = ff_inv(res);
  Coords y(r.coords.begin(), r.coords.end());
  // y <- y (2 - a y), doubling p-adic precision
  for (int prec = 1; prec < m_; prec *= 2) {
    Coords ay = unram_mul(a, y);
    for (auto &c : ay)
      c = zmod::reduce(-c, pm_);
    ay[0] = zmod::add(ay[0], 2, pm_);
    y = unram_mul(y, ay);
  }
  return y;
}

Coords LocalField::unram_frobenius(const Coords &a, int j) const {
  j %= f_;
  if (j < 0)
    j += f_;
  if (j == 0)
    return a;
  Coords out(f_, 0);
  for (int t = 0; t < f_; ++t) {
    if (a[t] == 0)
      continue;
    for (int s = 0; s < f_; ++s)
      out[s] = zmod::add(out[s], zmod::mul(a[t], frob_powers_[j][t][s], pm_), pm_);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Integral ring O/p^M

Coords LocalField::int_mul(const Coords &a, const Coords &b) const {
  const int e = e_, f = f_;
  std::vector<Coords> prod(2 * e - 1, Coords(f, 0));
  for (int i = 0; i < e; ++i) {
    Coords ai(a.begin() + i * f, a.begin() + (i + 1) * f);
    if (std::all_of(ai.begin(), ai.end(), [](auto x) { return x == 0; }))
      continue;
    for (int k = 0; k < e; ++k) {
      Coords bk(b.begin() + k * f, b.begin() + (k + 1) * f);
      Coords t = unram_mul(ai, bk);
      for (int s = 0; s < f; ++s)
        prod[i + k][s] = zmod::add(prod[i + k][s], t[s], pm_);
    }
  }
  for (int t = 2 * e - 2; t >= e; --t) {
    const Coords &c = prod[t];
    if (std::all_of(c.begin(), c.end(), [](auto x) { return x == 0; }))
      continue;
    for (int i = 0; i < e; ++i) {
      Coords s = unram_mul(c, eis_[i]);
      for (int j = 0; j < f; ++j)
        prod[t - e + i][j] = zmod::sub(prod[t - e + i][j], s[j], pm_);
    }
  }
  Coords out(static_cast<std::size_t>(e) * f);
  for (int i = 0; i < e; ++i)
    std::copy(prod[i].begin(), prod[i].end(), out.begin() + i * f);
  return out;
}

Coords LocalField::int_add(const Coords &a, const Coords &b) const {
  Coords r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    r[i] = zmod::add(a[i], b[i], pm_);
  return r;
}

Coords LocalField::int_shift(const Coords &a, int t) const {
  const int e = e_, f = f_;
  Coords cur = a;
  for (int step = 0; step < t; ++step) {
    Coords top(cur.end() - f, cur.end());
    Coords next(cur.size(), 0);
    for (int i = e - 1; i >= 1; --i)
      std::copy(cur.begin() + (i - 1) * f, cur.begin() + i * f, next.begin() + i * f);
    // top * pi^e = -top * sum a_i pi^i
    if (!std::all_of(top.begin(), top.end(), [](auto x) { return x == 0; }))
      for (int i = 0; i < e; ++i) {
        Coords s = unram_mul(top, eis_[i]);
        for (int j = 0; j < f; ++j)
          next[i * f + j] = zmod::sub(next[i * f + j], s[j], pm_);
      }
    cur = std::move(next);
  }
  return cur;
}

int LocalField::int_valuation(const Coords &a, int cap) const {
  int best = cap;
  for (int i = 0; i < e_; ++i) {
    int v = m_;
    for (int j = 0; j < f_; ++j)
      v = std::min(v, zmod::val(a[i * f_ + j], p_, m_));
    if (v < m_)
      best = std::min(best, e_ * v + i);
  }
  return best;
}

Coords LocalField::truncate(Coords a, int abs) const {
  for (int i = 0; i < e_; ++i) {
    int digits = ceil_div(abs - i, e_);
    if (digits >= m_)
      continue;
    std::int64_t mod = ipow(p_, digits);
    for (int j = 0; j < f_; ++j)
      a[i * f_ + j] = digits == 0 ? 0 : a[i * f_ + j] % mod;
  }
  return a;
}

Coords LocalField::divide_by_pi_power(Coords c, int t) const {
  if (t == 0)
    return c;
  const int a = t / e_, b = t % e_;
  int s = a;
  if (b != 0) {
    c = int_shift(c, e_ - b);
    s = a + 1;
  }
  const std::int64_t ps = ipow(p_, s);
  for (auto &x : c) {
    if (x % ps != 0)
      raise(ErrorKind::Other, "internal: coordinate not divisible during pi-division");
    x /= ps;
  }
  for (int i = 0; i < s; ++i)
    c = int_mul(c, eps_inv_);
  return c;
}

Coords LocalField::unit_inverse(const Coords &u, int rel) const {
  Coords c0(u.begin(), u.begin() + f_);
  Coords y(u.size(), 0);
  Coords inv0 = unram_inv(c0);
  std::copy(inv0.begin(), inv0.end(), y.begin());
  for (int prec = 1; prec < rel; prec *= 2) {
    Coords uy = int_mul(u, y);
    for (auto &c : uy)
      c = zmod::reduce(-c, pm_);
    uy[0] = zmod::add(uy[0], 2, pm_);
    y = int_mul(y, uy);
  }
  return truncate(y, rel);
}

FieldElement LocalField::normalize(Coords c, int base_val, int abs) const {
  const int rel = abs - base_val;
  if (rel <= 0)
    return zero(abs);
  c = truncate(std::move(c), rel);
  int v = int_valuation(c, rel);
  if (v >= rel)
    return zero(abs);
  FieldElement x;
  x.parent_ = shared_from_this();
  x.zero_ = false;
  x.val_ = base_val + v;
  int new_rel = std::min(rel - v, capacity() - e_ * (v / e_ + 2));
  x.unit_ = truncate(divide_by_pi_power(std::move(c), v), new_rel);
  x.prec_abs_ = x.val_ + new_rel;
  return x;
}

// ---------------------------------------------------------------------------
// Constructors of elements

FieldElement LocalField::zero(int prec_abs) const {
  FieldElement x;
  x.parent_ = shared_from_this();
  x.zero_ = true;
  x.prec_abs_ = prec_abs;
  return x;
}

FieldElement LocalField::from_coords(const Coords &c, int prec_abs) const {
  if (static_cast<int>(c.size()) != degree())
    raise(ErrorKind::InvalidInput, "coordinate vector has wrong length");
  Coords r(c.size());
  for (std::size_t i = 0; i < c.size(); ++i)
    r[i] = zmod::reduce(c[i], pm_);
  return normalize(std::move(r), 0, prec_abs);
}

FieldElement LocalField::from_parts(int valuation, const Coords &unit, int prec_abs) const {
  if (static_cast<int>(unit.size()) != degree())
    raise(ErrorKind::InvalidInput, "coordinate vector has wrong length");
  Coords r(unit.size());
  for (std::size_t i = 0; i < unit.size(); ++i)
    r[i] = zmod::reduce(unit[i], pm_);
  return normalize(std::move(r), valuation, prec_abs);
}

FieldElement LocalField::one() const { return from_int(1); }

FieldElement LocalField::from_int(std::int64_t v) const {
  Coords c(degree(), 0);
  c[0] = zmod::reduce(v, pm_);
  return normalize(std::move(c), 0, prec_);
}

FieldElement LocalField::pi() const {
  Coords c(degree(), 0);
  if (e_ == 1) {
    // pi = -a_0
    for (int j = 0; j < f_; ++j)
      c[j] = zmod::reduce(-eis_[0][j], pm_);
  } else {
    c[f_] = 1;
  }
  return normalize(std::move(c), 0, prec_);
}

FieldElement LocalField::omega() const {
  Coords c(degree(), 0);
  if (f_ == 1)
    c[0] = zmod::reduce(-unram_mod_[0], pm_);
  else
    c[1] = 1;
  return normalize(std::move(c), 0, prec_);
}

FieldElement LocalField::from_unram(std::span<const std::int64_t> u) const {
  Coords c(degree(), 0);
  for (int j = 0; j < f_ && j < static_cast<int>(u.size()); ++j)
    c[j] = zmod::reduce(u[j], pm_);
  return normalize(std::move(c), 0, prec_);
}

FieldElement LocalField::lift_residue(const FFElem &r) const {
  return from_unram(r.coords);
}

FieldElement LocalField::apply_automorphism(int frob_power, const FieldElement &pi_image,
                                            const FieldElement &x) const {
  if (x.is_zero())
    return zero(x.prec_abs());
  if (pi_image.is_zero() || pi_image.valuation() != 1)
    raise(ErrorKind::InvalidInput, "image of the prime element must have valuation 1");
  Coords pic = pi_image.coords();
  const int rel = std::min(x.prec_rel(), pi_image.prec_abs());
  // sigma(unit) = sum_i phi^j(c_i) sigma(pi)^i
  Coords acc(degree(), 0);
  Coords pipow(degree(), 0);
  pipow[0] = 1;
  for (int i = 0; i < e_; ++i) {
    Coords ci(x.unit().begin() + i * f_, x.unit().begin() + (i + 1) * f_);
    Coords twisted(degree(), 0);
    Coords t = unram_frobenius(ci, frob_power);
    std::copy(t.begin(), t.end(), twisted.begin());
    acc = int_add(acc, int_mul(twisted, pipow));
    if (i + 1 < e_)
      pipow = int_mul(pipow, pic);
  }
  FieldElement su = normalize(std::move(acc), 0, rel);
  if (x.valuation() == 0)
    return su;
  return su * pi_image.pow(x.valuation());
}

Polynomial LocalField::eisenstein_polynomial(int twist) const {
  Polynomial g;
  for (int i = 0; i < e_; ++i)
    g.push_back(from_unram(unram_frobenius(eis_[i], twist)));
  g.push_back(one());
  return g;
}

// ---------------------------------------------------------------------------
// FieldElement

int FieldElement::valuation() const {
  if (zero_)
    raise(ErrorKind::IndistinguishableFromZero,
          "element vanishes to precision " + std::to_string(prec_abs_));
  return val_;
}

int lf_valuation(const FieldElement &a) { return a.valuation(); }

Coords FieldElement::coords() const {
  const auto &L = *parent_;
  if (zero_)
    return Coords(L.degree(), 0);
  if (val_ < 0)
    raise(ErrorKind::InvalidInput, "coordinates requested for a non-integral element");
  return L.truncate(L.int_shift(unit_, val_), prec_abs_);
}

FFElem FieldElement::residue() const {
  const auto &L = *parent_;
  if (!zero_ && val_ < 0)
    raise(ErrorKind::InvalidInput, "residue of a non-integral element");
  if (zero_ || val_ > 0)
    return L.residue_field()->zero();
  return unit_residue();
}

FFElem FieldElement::unit_residue() const {
  const auto &L = *parent_;
  if (zero_)
    raise(ErrorKind::IndistinguishableFromZero, "residue of an element indistinguishable from zero");
  return L.residue_field()->from_coords(std::span<const std::int64_t>(unit_.data(), L.f()));
}

FieldElement FieldElement::with_prec_abs(int new_abs) const {
  if (new_abs >= prec_abs_)
    return *this;
  if (zero_ || new_abs <= val_)
    return parent_->zero(new_abs);
  FieldElement r = *this;
  r.prec_abs_ = new_abs;
  r.unit_ = parent_->truncate(unit_, new_abs - val_);
  return r;
}

FieldElement FieldElement::with_prec_rel(int new_rel) const {
  if (zero_)
    return *this;
  return with_prec_abs(val_ + new_rel);
}

FieldElement FieldElement::operator-() const {
  if (zero_)
    return *this;
  FieldElement r = *this;
  const auto pm = parent_->modulus();
  for (auto &c : r.unit_)
    c = c == 0 ? 0 : pm - c;
  r.unit_ = parent_->truncate(r.unit_, prec_rel());
  return r;
}

FieldElement operator+(const FieldElement &a, const FieldElement &b) {
  check_parent(a, b);
  const auto &L = *a.parent();
  const int abs = std::min(a.prec_abs(), b.prec_abs());
  if (a.is_zero() && b.is_zero())
    return L.zero(abs);
  if (a.is_zero())
    return b.with_prec_abs(abs);
  if (b.is_zero())
    return a.with_prec_abs(abs);
  const int m = std::min(a.val_, b.val_);
  Coords acc(L.degree(), 0);
  if (a.val_ - m < abs - m)
    acc = L.int_add(acc, L.int_shift(a.unit_, a.val_ - m));
  if (b.val_ - m < abs - m)
    acc = L.int_add(acc, L.int_shift(b.unit_, b.val_ - m));
  return L.normalize(std::move(acc), m, abs);
}

FieldElement operator-(const FieldElement &a, const FieldElement &b) { return a + (-b); }

FieldElement operator*(const FieldElement &a, const FieldElement &b) {
  check_parent(a, b);
  const auto &L = *a.parent();
  if (a.is_zero() && b.is_zero())
    return L.zero(a.prec_abs() + b.prec_abs());
  if (a.is_zero())
    return L.zero(a.prec_abs() + b.val_);
  if (b.is_zero())
    return L.zero(b.prec_abs() + a.val_);
  const int rel = std::min(a.prec_rel(), b.prec_rel());
  const int v = a.val_ + b.val_;
  return L.normalize(L.int_mul(a.unit_, b.unit_), v, v + rel);
}

FieldElement FieldElement::inverse() const {
  if (zero_)
    raise(ErrorKind::DivisionByZero, "inverse of an element indistinguishable from zero");
  const auto &L = *parent_;
  const int rel = prec_rel();
  FieldElement r;
  r.parent_ = parent_;
  r.zero_ = false;
  r.val_ = -val_;
  r.unit_ = L.unit_inverse(unit_, rel);
  r.prec_abs_ = r.val_ + rel;
  return r;
}

FieldElement operator/(const FieldElement &a, const FieldElement &b) {
  check_parent(a, b);
  if (b.is_zero())
    raise(ErrorKind::DivisionByZero, "division by an element indistinguishable from zero");
  return a * b.inverse();
}

FieldElement FieldElement::pow(std::int64_t e) const {
  if (e < 0)
    return inverse().pow(-e);
  FieldElement r = parent_->one();
  if (e == 0)
    return r;
  FieldElement base = *this;
  bool first = true;
  while (e > 0) {
    if (e & 1) {
      r = first ? base : r * base;
      first = false;
    }
    e >>= 1;
    if (e > 0)
      base = base * base;
  }
  return r;
}

bool operator==(const FieldElement &a, const FieldElement &b) {
  if (a.parent_ != b.parent_ || a.zero_ != b.zero_ || a.prec_abs_ != b.prec_abs_)
    return false;
  if (a.zero_)
    return true;
  return a.val_ == b.val_ && a.unit_ == b.unit_;
}

bool equal_mod_abs(const FieldElement &a, const FieldElement &b, int n) {
  FieldElement d = a - b;
  return d.is_zero() || d.valuation() >= n;
}

bool equal_mod_units(const FieldElement &a, const FieldElement &b, int k) {
  FieldElement q = a / b;
  if (q.valuation() != 0)
    return false;
  if (q.prec_rel() < k)
    raise(ErrorKind::PrecisionExhausted,
          "cannot compare modulo U^(" + std::to_string(k) + ") with relative precision " +
              std::to_string(q.prec_rel()));
  FieldElement d = q - q.parent()->one();
  return d.is_zero() || d.valuation() >= k;
}

// ---------------------------------------------------------------------------
// Teichmueller lifts, polynomials, roots

FieldElement lf_teichmueller(const FFElem &r, const LocalField &field) {
  if (r.is_zero())
    raise(ErrorKind::ZeroArgument, "Teichmueller lift of zero");
  Coords t(r.coords.begin(), r.coords.end());
  const std::int64_t q = field.q();
  const int digits = ceil_div(field.precision(), field.e()) + 1;
  for (int it = 0; it <= digits + 1; ++it) {
    Coords acc(field.f(), 0);
    acc[0] = 1;
    Coords base = t;
    std::int64_t ex = q;
    while (ex > 0) {
      if (ex & 1)
        acc = field.unram_mul(acc, base);
      base = field.unram_mul(base, base);
      ex >>= 1;
    }
    if (acc == t)
      break;
    t = std::move(acc);
  }
  return field.from_unram(t);
}

Polynomial poly_derivative(const Polynomial &g) {
  Polynomial d;
  for (std::size_t i = 1; i < g.size(); ++i)
    d.push_back(g[i] * g[i].parent()->from_int(static_cast<std::int64_t>(i)));
  if (d.empty() && !g.empty())
    d.push_back(g[0].parent()->zero());
  return d;
}

FieldElement poly_eval(const Polynomial &g, const FieldElement &x) {
  FieldElement acc = g.back();
  for (std::size_t i = g.size() - 1; i-- > 0;)
    acc = acc * x + g[i];
  return acc;
}

FieldElement lf_hensel_root(const Polynomial &g, const FieldElement &x0) {
  const Polynomial dg = poly_derivative(g);
  FieldElement gx = poly_eval(g, x0);
  FieldElement dgx = poly_eval(dg, x0);
  if (!gx.is_zero() && (dgx.is_zero() || gx.valuation() <= 2 * dgx.valuation()))
    raise(ErrorKind::HenselFails, "Hensel hypothesis v(g(x0)) > 2 v(g'(x0)) violated");
  FieldElement x = x0;
  const int cap = x0.parent()->capacity();
  for (int it = 0; it < 64; ++it) {
    gx = poly_eval(g, x);
    dgx = poly_eval(dg, x);
    if (dgx.is_zero())
      raise(ErrorKind::HenselFails, "derivative vanished during Newton iteration");
    FieldElement step = gx / dgx;
    FieldElement next = x - step;
    if (step.is_zero()) {
      return next;
    }
    if (step.valuation() >= cap)
      return next;
    x = next;
  }
  raise(ErrorKind::HenselFails, "Newton iteration did not converge");
}

namespace {

Polynomial poly_mul(const Polynomial &a, const Polynomial &b) {
  const auto &L = *a[0].parent();
  Polynomial r(a.size() + b.size() - 1, L.zero(L.capacity()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] = r[i + j] + a[i] * b[j];
  return r;
}

// g(r + pi x)
Polynomial taylor_shift(const Polynomial &g, const FieldElement &r) {
  const auto &L = *g[0].parent();
  Polynomial lin{r, L.pi()};
  Polynomial acc{g.back()};
  for (std::size_t i = g.size() - 1; i-- > 0;) {
    acc = poly_mul(acc, lin);
    acc[0] = acc[0] + g[i];
  }
  return acc;
}

void roots_rec(const Polynomial &g, int depth, std::vector<FieldElement> &out) {
  const auto &L = *g[0].parent();
  if (depth > 4 * L.capacity())
    raise(ErrorKind::PrecisionExhausted, "root refinement did not separate roots");
  int c = std::numeric_limits<int>::max();
  for (const auto &a : g)
    if (!a.is_zero())
      c = std::min(c, a.valuation());
  if (c == std::numeric_limits<int>::max())
    raise(ErrorKind::PrecisionExhausted, "polynomial vanishes to working precision");
  Polynomial h = g;
  if (c != 0) {
    FieldElement s = L.pi().pow(-c);
    for (auto &a : h)
      a = a * s;
  }
  const auto &k = L.residue_field();
  std::vector<FFElem> hbar;
  int deg = -1;
  for (std::size_t i = 0; i < h.size(); ++i) {
    const auto &a = h[i];
    if (a.is_zero() && a.prec_abs() <= 0)
      raise(ErrorKind::PrecisionExhausted, "coefficient residue unknown at working precision");
    hbar.push_back(a.is_zero() ? k->zero() : a.residue());
    if (!hbar.back().is_zero())
      deg = static_cast<int>(i);
  }
  if (deg <= 0)
    return;
  auto eval_bar = [&](const FFElem &x, bool deriv) {
    FFElem acc = k->zero();
    for (int i = deg; i >= (deriv ? 1 : 0); --i) {
      FFElem coeff = deriv ? ff_mul(hbar[i], k->from_int(i)) : hbar[i];
      acc = ff_add(ff_mul(acc, x), coeff);
    }
    return acc;
  };
  for (std::int64_t idx = 0; idx < k->order(); ++idx) {
    FFElem rb = k->element(idx);
    if (!eval_bar(rb, false).is_zero())
      continue;
    FieldElement r = L.lift_residue(rb);
    if (!eval_bar(rb, true).is_zero()) {
      out.push_back(lf_hensel_root(h, r));
      continue;
    }
    std::vector<FieldElement> sub;
    roots_rec(taylor_shift(h, r), depth + 1, sub);
    for (auto &y : sub)
      out.push_back(r + L.pi() * y);
  }
}

} // namespace

std::vector<FieldElement> integral_roots(const Polynomial &g) {
  if (g.size() < 2)
    return {};
  std::vector<FieldElement> out;
  roots_rec(g, 0, out);
  return out;
}

// ---------------------------------------------------------------------------
// Embeddings and the compositum

Embedding::Embedding(LocalFieldPtr source, LocalFieldPtr target, Coords theta)
    : source_(std::move(source)), target_(std::move(target)), theta_(std::move(theta)) {
  const auto &T = *target_;
  const int fs = source_->f(), ft = T.f();
  Coords acc(ft, 0);
  acc[0] = 1;
  for (int t = 0; t < fs; ++t) {
    theta_pows_.push_back(acc);
    acc = T.unram_mul(acc, theta_);
  }
  // Choose fs rows of the ft x fs matrix [theta^t] invertible mod p.
  const std::int64_t p = T.p();
  std::vector<std::int64_t> work(static_cast<std::size_t>(ft) * fs);
  for (int r = 0; r < ft; ++r)
    for (int t = 0; t < fs; ++t)
      work[r * fs + t] = theta_pows_[t][r] % p;
  std::vector<bool> used(ft, false);
  for (int col = 0; col < fs; ++col) {
    int piv = -1;
    for (int r = 0; r < ft; ++r)
      if (!used[r] && work[r * fs + col] % p != 0) {
        piv = r;
        break;
      }
    if (piv < 0)
      raise(ErrorKind::Other, "internal: embedding matrix is singular mod p");
    used[piv] = true;
    pivot_rows_.push_back(piv);
    std::int64_t inv = zmod::inv(work[piv * fs + col], p);
    for (int r = 0; r < ft; ++r) {
      if (r == piv || work[r * fs + col] % p == 0)
        continue;
      std::int64_t fct = work[r * fs + col] * inv % p;
      for (int t = 0; t < fs; ++t)
        work[r * fs + t] = zmod::reduce(work[r * fs + t] - fct * work[piv * fs + t], p);
    }
  }
}

Coords Embedding::map_unram(const Coords &c) const {
  const auto &T = *target_;
  const std::int64_t pm = T.modulus();
  Coords out(T.f(), 0);
  for (int t = 0; t < source_->f(); ++t) {
    if (c[t] == 0)
      continue;
    for (int s = 0; s < T.f(); ++s)
      out[s] = zmod::add(out[s], zmod::mul(c[t], theta_pows_[t][s], pm), pm);
  }
  return out;
}

FieldElement Embedding::apply(const FieldElement &x) const {
  const auto &T = *target_;
  if (x.is_zero())
    return T.zero(x.prec_abs());
  const int e = source_->e(), fs = source_->f(), ft = T.f();
  Coords unit(static_cast<std::size_t>(e) * ft, 0);
  for (int i = 0; i < e; ++i) {
    Coords ci(x.unit().begin() + i * fs, x.unit().begin() + (i + 1) * fs);
    Coords m = map_unram(ci);
    std::copy(m.begin(), m.end(), unit.begin() + i * ft);
  }
  return T.from_parts(x.valuation(), unit, x.prec_abs());
}

std::optional<Coords> Embedding::pullback_unram(const Coords &c, int digits) const {
  const auto &T = *target_;
  const int fs = source_->f();
  const std::int64_t pm = T.modulus();
  // Gauss-Jordan on the rows selected at construction; the block is
  // invertible mod p, so every pivot below is a unit.
  std::vector<std::int64_t> a(static_cast<std::size_t>(fs) * fs);
  Coords rhs(fs);
  for (int i = 0; i < fs; ++i) {
    for (int t = 0; t < fs; ++t)
      a[i * fs + t] = theta_pows_[t][pivot_rows_[i]];
    rhs[i] = c[pivot_rows_[i]];
  }
  const std::int64_t p = T.p();
  for (int col = 0; col < fs; ++col) {
    int piv = -1;
    for (int r = col; r < fs; ++r)
      if (a[r * fs + col] % p != 0) {
        piv = r;
        break;
      }
    for (int t = 0; t < fs; ++t)
      std::swap(a[piv * fs + t], a[col * fs + t]);
    std::swap(rhs[piv], rhs[col]);
    std::int64_t iv = zmod::inv(a[col * fs + col], pm);
    for (int t = 0; t < fs; ++t)
      a[col * fs + t] = zmod::mul(a[col * fs + t], iv, pm);
    rhs[col] = zmod::mul(rhs[col], iv, pm);
    for (int r = 0; r < fs; ++r) {
      if (r == col || a[r * fs + col] == 0)
        continue;
      std::int64_t fct = a[r * fs + col];
      for (int t = 0; t < fs; ++t)
        a[r * fs + t] = zmod::sub(a[r * fs + t], zmod::mul(fct, a[col * fs + t], pm), pm);
      rhs[r] = zmod::sub(rhs[r], zmod::mul(fct, rhs[col], pm), pm);
    }
  }
  Coords img = map_unram(rhs);
  if (digits > 0) {
    std::int64_t mod = digits >= T.modulus_exponent() ? pm : ipow(T.p(), digits);
    for (int s = 0; s < T.f(); ++s)
      if (zmod::reduce(img[s] - c[s], mod) != 0)
        return std::nullopt;
    for (auto &x : rhs)
      x %= mod;
  }
  return rhs;
}

std::optional<FieldElement> Embedding::pullback(const FieldElement &y) const {
  const auto &S = *source_;
  if (y.is_zero())
    return S.zero(y.prec_abs());
  const int e = S.e(), fs = S.f(), ft = target_->f();
  const int rel = y.prec_rel();
  Coords unit(static_cast<std::size_t>(e) * fs, 0);
  for (int i = 0; i < e; ++i) {
    Coords ci(y.unit().begin() + i * ft, y.unit().begin() + (i + 1) * ft);
    int digits = ceil_div(rel - i, e);
    auto pre = pullback_unram(ci, digits);
    if (!pre)
      return std::nullopt;
    std::copy(pre->begin(), pre->end(), unit.begin() + i * fs);
  }
  return S.from_parts(y.valuation(), unit, y.prec_abs());
}

Compositum lf_compositum_F(const LocalFieldPtr &L, int unram_degree) {
  if (unram_degree < 1)
    raise(ErrorKind::InvalidInput, "compositum degree must be positive");
  if (unram_degree == 1) {
    Coords theta(L->f(), 0);
    if (L->f() == 1)
      theta[0] = L->omega().coords()[0];
    else
      theta[1] = 1;
    return {L, Embedding(L, L, theta)};
  }
  const std::int64_t p = L->p();
  const int ff = L->f() * unram_degree;
  // Unramified helper with the target residue layer, for ring arithmetic.
  std::vector<std::vector<std::int64_t>> unr{{-p}};
  auto helper = LocalField::make(p, ff, unr, std::min(L->precision(), 8));
  const auto &kF = helper->residue_field();
  const auto &modL = L->residue_field()->modulus();
  auto g_at = [&](const FFElem &x) {
    FFElem acc = kF->one();
    for (int i = L->f() - 1; i >= 0; --i)
      acc = ff_add(ff_mul(acc, x), kF->from_int(modL[i]));
    return acc;
  };
  FFElem root = kF->zero();
  bool found = false;
  for (std::int64_t idx = 1; idx < kF->order(); ++idx) {
    FFElem x = kF->element(idx);
    if (g_at(x).is_zero()) {
      root = x;
      found = true;
      break;
    }
  }
  if (!found)
    raise(ErrorKind::Other, "internal: residue modulus has no root in the extension");
  // Newton lift of theta in the unramified ring of F.
  const std::int64_t pm = helper->modulus();
  Coords theta(root.coords.begin(), root.coords.end());
  const int fl = L->f();
  for (int it = 0; it < 8; ++it) {
    Coords gv(ff, 0), dv(ff, 0), xp(ff, 0);
    xp[0] = 1;
    for (int i = 0; i <= fl; ++i) {
      std::int64_t c = i == fl ? 1 : modL[i];
      for (int s = 0; s < ff; ++s)
        gv[s] = zmod::add(gv[s], zmod::mul(c, xp[s], pm), pm);
      if (i < fl) {
        std::int64_t dc = (i + 1 == fl ? 1 : modL[i + 1]) * (i + 1);
        for (int s = 0; s < ff; ++s)
          dv[s] = zmod::add(dv[s], zmod::mul(zmod::reduce(dc, pm), xp[s], pm), pm);
      }
      xp = helper->unram_mul(xp, theta);
    }
    Coords step = helper->unram_mul(gv, helper->unram_inv(dv));
    for (int s = 0; s < ff; ++s)
      theta[s] = zmod::sub(theta[s], step[s], pm);
  }
  std::vector<std::vector<std::int64_t>> eis;
  {
    // image of the Eisenstein coefficients under w_L -> theta
    Coords acc(ff, 0);
    acc[0] = 1;
    std::vector<Coords> pows;
    for (int t = 0; t < fl; ++t) {
      pows.push_back(acc);
      acc = helper->unram_mul(acc, theta);
    }
    for (const auto &a : L->eis_coeffs()) {
      Coords img(ff, 0);
      for (int t = 0; t < fl; ++t)
        for (int s = 0; s < ff; ++s)
          img[s] = zmod::add(img[s], zmod::mul(a[t], pows[t][s], pm), pm);
      eis.push_back(img);
    }
  }
  auto F = LocalField::make(p, ff, eis, L->precision());
  return {F, Embedding(L, F, theta)};
}

} // namespace lfc
