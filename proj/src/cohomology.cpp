#include "lfc/cohomology.hpp"

#include "lfc/error.hpp"
#include "lfc/local_linalg.hpp"
#include "lfc/zmod.hpp"

#include <map>
#include <numeric>

namespace lfc {

namespace {

std::int64_t ipow(std::int64_t p, int k) {
  std::int64_t r = 1;
  for (int i = 0; i < k; ++i)
    r *= p;
  return r;
}

std::vector<std::int64_t> level_digits(const FieldElement &y, int level) {
  const auto &F = y.parent();
  FieldElement diff = y - F->one();
  if (!diff.is_zero() && diff.valuation() < level)
    raise(ErrorKind::Other, "element is not in the expected unit level");
  if (diff.is_zero() || diff.valuation() > level)
    return std::vector<std::int64_t>(F->f(), 0);
  return (diff * F->pi().pow(-level)).residue().coords;
}

} // namespace

// ---------------------------------------------------------------------------
// UnitsQuotient

std::shared_ptr<const UnitsQuotient> UnitsQuotient::build(const LocalFieldPtr &L, int k) {
  if (k < 1)
    raise(ErrorKind::InvalidInput, "unit level must be positive");
  if (L->precision() < k + 1)
    raise(ErrorKind::PrecisionTooSmall, "field precision below the unit level");
  auto M = std::shared_ptr<UnitsQuotient>(new UnitsQuotient());
  M->field_ = L;
  M->k_ = k;
  const auto &res = L->residue_field();
  const std::int64_t p = L->p();
  const int f = L->f();
  M->has_teich_ = L->q() > 2;
  M->moduli_.push_back(0);
  M->gens_.push_back(L->pi());
  M->teich_gen_ = lf_teichmueller(res->gen(), *L);
  if (M->has_teich_) {
    M->moduli_.push_back(L->q() - 1);
    M->gens_.push_back(M->teich_gen_);
  }
  const int N = (k - 1) * f;
  if (N == 0)
    return M;
  std::vector<FieldElement> level_gens;
  FieldElement pii = L->one();
  for (int i = 1; i < k; ++i) {
    pii = pii * L->pi();
    std::vector<std::vector<FieldElement>> per_j;
    FieldElement w = L->one();
    for (int j = 0; j < f; ++j, w = w * L->omega()) {
      FieldElement g = L->one() + w * pii;
      level_gens.push_back(g);
      FieldElement gi = g.inverse();
      std::vector<FieldElement> pw{L->one()};
      for (std::int64_t b = 1; b < p; ++b)
        pw.push_back(pw.back() * gi);
      per_j.push_back(std::move(pw));
    }
    M->level_inv_pows_.push_back(std::move(per_j));
  }
  // relations g^p = prod g'^digits among the level generators
  linalg::Ring R(p, k + 1);
  M->qmod_ = R.mod;
  linalg::Mat rel(N, N);
  for (int a = 0; a < N; ++a) {
    auto d = M->one_unit_digits(level_gens[a].pow(p));
    for (int b = 0; b < N; ++b)
      rel(a, b) = R.red(-d[b]);
    rel(a, a) = R.add(rel(a, a), p);
  }
  linalg::Smith s = linalg::smith(rel, R, false, true);
  if (s.rank != N)
    raise(ErrorKind::Other, "one-unit relations are not of full rank");
  M->Q_.assign(N, std::vector<std::int64_t>(N));
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b)
      M->Q_[a][b] = s.Q(a, b);
  for (int t = 0; t < N; ++t) {
    if (s.exps[t] == 0)
      continue;
    if (s.exps[t] >= R.A)
      raise(ErrorKind::Other, "one-unit invariant factor out of range");
    M->kept_.push_back(t);
    M->moduli_.push_back(ipow(p, s.exps[t]));
    FieldElement g = L->one();
    for (int m = 0; m < N; ++m)
      if (s.Qinv(t, m) != 0)
        g = g * level_gens[m].pow(s.Qinv(t, m));
    M->gens_.push_back(g);
  }
  return M;
}

std::vector<std::int64_t> UnitsQuotient::one_unit_digits(FieldElement y) const {
  const int f = field_->f();
  std::vector<std::int64_t> digits((k_ - 1) * f, 0);
  for (int i = 1; i < k_; ++i) {
    auto b = level_digits(y, i);
    for (int j = 0; j < f; ++j) {
      digits[(i - 1) * f + j] = b[j];
      if (b[j] != 0)
        y = y * level_inv_pows_[i - 1][j][b[j]];
    }
  }
  level_digits(y, k_);  // asserts y in U^(k)
  return digits;
}

Coord UnitsQuotient::dlog(const FieldElement &x) const {
  if (x.parent() != field_)
    raise(ErrorKind::ParentMismatch, "dlog of an element of another field");
  const int z = x.valuation();
  if (x.prec_rel() < k_)
    raise(ErrorKind::PrecisionExhausted, "element known to relative precision " + std::to_string(x.prec_rel()) +
                                             " < " + std::to_string(k_));
  Coord c(dim(), 0);
  c[0] = z;
  FieldElement y = z == 0 ? x : x * field_->pi().pow(-z);
  int next = 1;
  if (has_teich_) {
    const std::int64_t a = ff_dlog(y.residue(), field_->residue_field()->gen());
    c[1] = a;
    if (a != 0)
      y = y * teich_gen_.pow(field_->q() - 1 - a);
    next = 2;
  }
  if (k_ == 1)
    return c;
  auto d = one_unit_digits(y);
  for (std::size_t t = 0; t < kept_.size(); ++t) {
    const int col = kept_[t];
    const std::int64_t m = moduli_[next + t];
    __int128 acc = 0;
    for (std::size_t a = 0; a < d.size(); ++a)
      acc += static_cast<__int128>(d[a]) * Q_[a][col];
    c[next + t] = zmod::reduce128(acc, m);
  }
  return c;
}

FieldElement UnitsQuotient::exp(const Coord &c) const {
  FieldElement r = field_->one();
  for (int i = 0; i < dim(); ++i)
    if (c[i] != 0)
      r = r * gens_[i].pow(c[i]);
  return r;
}

Coord UnitsQuotient::reduce(Coord c) const {
  for (int i = 0; i < dim(); ++i)
    if (moduli_[i] != 0)
      c[i] = zmod::reduce(c[i], moduli_[i]);
  return c;
}

Coord UnitsQuotient::add(const Coord &a, const Coord &b) const {
  Coord r(dim());
  for (int i = 0; i < dim(); ++i)
    r[i] = a[i] + b[i];
  return reduce(std::move(r));
}

Coord UnitsQuotient::sub(const Coord &a, const Coord &b) const {
  Coord r(dim());
  for (int i = 0; i < dim(); ++i)
    r[i] = a[i] - b[i];
  return reduce(std::move(r));
}

Coord UnitsQuotient::scale(const Coord &a, std::int64_t m) const {
  Coord r(dim());
  for (int i = 0; i < dim(); ++i)
    r[i] = moduli_[i] == 0 ? a[i] * m : zmod::mul(zmod::reduce(a[i], moduli_[i]), zmod::reduce(m, moduli_[i]), moduli_[i]);
  return r;
}

std::int64_t UnitsQuotient::torsion_exponent() const {
  std::int64_t e = 1;
  for (int i = 1; i < dim(); ++i)
    e = std::lcm(e, moduli_[i]);
  return e;
}

std::int64_t UnitsQuotient::torsion_order() const {
  std::int64_t e = 1;
  for (int i = 1; i < dim(); ++i)
    e *= moduli_[i];
  return e;
}

// ---------------------------------------------------------------------------
// Action and cochains

Coord ActionMatrices::apply(const UnitsQuotient &M, int s, const Coord &x) const {
  const int r = M.dim();
  std::vector<__int128> acc(r, 0);
  for (int g = 0; g < r; ++g) {
    if (x[g] == 0)
      continue;
    const Coord &row = rows[s][g];
    for (int i = 0; i < r; ++i)
      acc[i] += static_cast<__int128>(x[g]) * row[i];
  }
  Coord out(r);
  for (int i = 0; i < r; ++i) {
    const std::int64_t m = M.moduli()[i];
    out[i] = m == 0 ? static_cast<std::int64_t>(acc[i]) : zmod::reduce128(acc[i], m);
  }
  return out;
}

ActionMatrices action_matrices(const UnitsQuotient &M, const GaloisGroup &G) {
  if (G.field() != M.field())
    raise(ErrorKind::ParentMismatch, "group and units quotient live on different fields");
  ActionMatrices A;
  A.rows.resize(G.size());
  for (int s = 0; s < G.size(); ++s)
    for (const auto &g : M.generators())
      A.rows[s].push_back(M.dlog(G.apply(s, g)));
  return A;
}

Cochain2 cocycle_coords(const TwoCocycle &c, const UnitsQuotient &M) {
  const int n = c.group->size();
  Cochain2 out(n, std::vector<Coord>(n));
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t)
      out[s][t] = M.dlog(c.values[s][t]);
  return out;
}

Cochain2 coboundary(const GaloisGroup &G, const UnitsQuotient &M, const ActionMatrices &A, const Cochain1 &c) {
  const int n = G.size();
  Cochain2 out(n, std::vector<Coord>(n));
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t)
      out[s][t] = M.add(M.sub(A.apply(M, s, c[t]), c[G.mul(s, t)]), c[s]);
  return out;
}

CocycleCheck is_cocycle(const GaloisGroup &G, const Cochain2 &g, const UnitsQuotient &M, const ActionMatrices &A) {
  const int n = G.size();
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t)
      for (int u = 0; u < n; ++u) {
        Coord lhs = M.add(A.apply(M, s, g[t][u]), g[s][G.mul(t, u)]);
        Coord rhs = M.add(g[G.mul(s, t)][u], g[s][t]);
        if (M.reduce(lhs) != M.reduce(rhs))
          return {false, s, t, u};
      }
  return {};
}

std::optional<Cochain1> solve_coboundary(const GaloisGroup &G, const Cochain2 &delta, const UnitsQuotient &M,
                                         const ActionMatrices &A) {
  const int n = G.size();
  const int r = M.dim();
  // valuation part: c_z(s) = sum_t delta_z(s, t) / n
  Cochain1 c(n, Coord(r, 0));
  for (int s = 0; s < n; ++s) {
    std::int64_t sum = 0;
    for (int t = 0; t < n; ++t)
      sum += delta[s][t][0];
    if (sum % n != 0)
      return std::nullopt;
    c[s][0] = sum / n;
  }
  Cochain2 dz = coboundary(G, M, A, c);
  Cochain2 rest(n, std::vector<Coord>(n));
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t) {
      if (dz[s][t][0] != delta[s][t][0])
        return std::nullopt;
      rest[s][t] = M.sub(delta[s][t], dz[s][t]);
    }
  // torsion part, one prime at a time
  std::map<std::int64_t, int> primes;
  for (int i = 1; i < r; ++i)
    for (auto [l, e] : linalg::factor(M.moduli()[i]))
      primes[l] = std::max(primes[l], e);
  for (auto [l, A_l] : primes) {
    std::vector<int> J;
    std::vector<int> b;
    for (int i = 1; i < r; ++i) {
      int v = linalg::lval(M.moduli()[i], l);
      if (v > 0) {
        J.push_back(i);
        b.push_back(v);
      }
    }
    const int m = static_cast<int>(J.size());
    linalg::Ring R(l, A_l);
    linalg::Mat sys(n * n * m, n * m);
    std::vector<std::int64_t> rhs(n * n * m);
    for (int s = 0; s < n; ++s)
      for (int t = 0; t < n; ++t) {
        const int st = G.mul(s, t);
        for (int ii = 0; ii < m; ++ii) {
          const int row = (s * n + t) * m + ii;
          const std::int64_t scale = R.lpow(A_l - b[ii]);
          auto put = [&](int sigma, int jj, std::int64_t v) {
            std::int64_t &x = sys(row, sigma * m + jj);
            x = R.add(x, R.mul(R.red(v), scale));
          };
          for (int jj = 0; jj < m; ++jj)
            put(t, jj, A.rows[s][J[jj]][J[ii]]);
          put(st, ii, -1);
          put(s, ii, 1);
          rhs[row] = R.mul(R.red(rest[s][t][J[ii]]), scale);
        }
      }
    std::vector<std::int64_t> y;
    if (!linalg::solve(sys, rhs, R, y))
      return std::nullopt;
    // CRT into the coordinates
    for (int sigma = 0; sigma < n; ++sigma)
      for (int jj = 0; jj < m; ++jj) {
        const std::int64_t mod_i = M.moduli()[J[jj]];
        const std::int64_t lp = R.lpow(b[jj]);
        const std::int64_t other = mod_i / lp;
        // x = c mod other, x = y mod lp
        const std::int64_t cur = zmod::reduce(c[sigma][J[jj]], other);
        const std::int64_t yv = zmod::reduce(y[sigma * m + jj], lp);
        const std::int64_t t = zmod::mul(zmod::reduce(yv - cur, lp), zmod::inv(other % lp, lp), lp);
        c[sigma][J[jj]] = zmod::reduce(cur + other * t, mod_i);
      }
  }
  Cochain2 check = coboundary(G, M, A, c);
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t)
      if (M.reduce(check[s][t]) != M.reduce(delta[s][t]))
        raise(ErrorKind::Other, "coboundary solver produced an invalid witness");
  return c;
}

std::optional<Cochain1> cohomologous(const GaloisGroup &G, const Cochain2 &g1, const Cochain2 &g2,
                                     const UnitsQuotient &M, const ActionMatrices &A) {
  const int n = G.size();
  Cochain2 d(n, std::vector<Coord>(n));
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t)
      d[s][t] = M.sub(g1[s][t], g2[s][t]);
  return solve_coboundary(G, d, M, A);
}

int class_order(const GaloisGroup &G, const Cochain2 &g, const UnitsQuotient &M, const ActionMatrices &A) {
  const int n = G.size();
  for (int m = 1; m <= n; ++m) {
    if (n % m != 0)
      continue;
    Cochain2 gm(n, std::vector<Coord>(n));
    for (int s = 0; s < n; ++s)
      for (int t = 0; t < n; ++t)
        gm[s][t] = M.scale(g[s][t], m);
    if (solve_coboundary(G, gm, M, A))
      return m;
  }
  return 0;  // not killed by |G|: not a cocycle
}

} // namespace lfc
