#include "lfc/cohomology.hpp"

#include "lfc/error.hpp"
#include "lfc/local_linalg.hpp"

#include <algorithm>
#include <numeric>

namespace lfc {

using linalg::Mat;
using linalg::Ring;

// One prime l dividing |G|. H^2 of the finite module M'' = M / <p^w> is
// computed as Z^2 / B^2 over Z/l^A, then cut down to the kernel of the
// connecting map H^2(M'') -> H^3(G, Z).
struct H2Group::Part {
  std::int64_t l = 2;
  int n = 0;
  std::vector<int> J;  // coordinates of M with l | modulus
  std::vector<int> b;  // l-adic valuation of their moduli
  Ring R;
  Mat Qz, Qzinv;       // cocycle space: x = Qz y, y_i in l^s_i Z
  std::vector<int> s;
  std::vector<int> K;  // y indices that survive
  Mat Qh;              // H^2(M'') coordinates: c = u Qh
  std::vector<int> hidx, e;
  Ring R3;
  Mat QS;              // S = kernel of the connecting map, S basis l^t_i QS^-1 rows
  std::vector<int> t, Kc;
  Mat QF;              // final coordinates
  std::vector<int> fidx, f;

  std::vector<std::int64_t> x_of(const Cochain2 &g) const;
  std::vector<std::int64_t> hclass(const std::vector<std::int64_t> &x) const;
  std::vector<std::int64_t> final_coords(const std::vector<std::int64_t> &c) const;
};

namespace {

std::vector<std::int64_t> mat_vec(const Mat &Q, const std::vector<std::int64_t> &x, const Ring &R) {
  std::vector<std::int64_t> y(Q.rows, 0);
  for (int i = 0; i < Q.rows; ++i) {
    std::int64_t acc = 0;
    for (int j = 0; j < Q.cols; ++j)
      if (x[j] != 0 && Q(i, j) != 0)
        acc = R.add(acc, R.mul(Q(i, j), x[j]));
    y[i] = acc;
  }
  return y;
}

// row vector times matrix, columns restricted to `cols`
std::vector<std::int64_t> vec_mat(const std::vector<std::int64_t> &u, const Mat &Q, const std::vector<int> &cols,
                                  const Ring &R) {
  std::vector<std::int64_t> c(cols.size(), 0);
  for (std::size_t i = 0; i < cols.size(); ++i) {
    std::int64_t acc = 0;
    for (int k = 0; k < Q.rows; ++k)
      if (u[k] != 0)
        acc = R.add(acc, R.mul(R.red(u[k]), Q(k, cols[i])));
    c[i] = acc;
  }
  return c;
}

std::int64_t divide_exact(std::int64_t x, int v, const Ring &R, const char *what) {
  const std::int64_t lv = R.lpow(v);
  if (x % lv != 0)
    raise(ErrorKind::Other, what);
  return x / lv;
}

} // namespace

std::vector<std::int64_t> H2Group::Part::x_of(const Cochain2 &g) const {
  const int m = static_cast<int>(J.size());
  std::vector<std::int64_t> x(static_cast<std::size_t>(n) * n * m);
  for (int a = 0; a < n; ++a)
    for (int c = 0; c < n; ++c)
      for (int jj = 0; jj < m; ++jj)
        x[(a * n + c) * m + jj] = R.red(g[a][c][J[jj]]);
  return x;
}

std::vector<std::int64_t> H2Group::Part::hclass(const std::vector<std::int64_t> &x) const {
  auto y = mat_vec(Qzinv, x, R);
  std::vector<std::int64_t> u(K.size());
  for (std::size_t k = 0; k < K.size(); ++k)
    u[k] = divide_exact(y[K[k]], s[K[k]], R, "cochain is not a cocycle");
  for (int i = 0; i < static_cast<int>(y.size()); ++i)
    if (s[i] >= R.A && y[i] != 0)
      raise(ErrorKind::Other, "cochain is not a cocycle");
  auto c = vec_mat(u, Qh, hidx, R);
  for (std::size_t i = 0; i < c.size(); ++i)
    c[i] %= R.lpow(e[i]);
  return c;
}

std::vector<std::int64_t> H2Group::Part::final_coords(const std::vector<std::int64_t> &c) const {
  if (hidx.empty())
    return {};
  std::vector<int> all(QS.cols);
  std::iota(all.begin(), all.end(), 0);
  auto w = vec_mat(c, QS, all, R3);
  std::vector<std::int64_t> v(Kc.size());
  for (std::size_t k = 0; k < Kc.size(); ++k)
    v[k] = divide_exact(w[Kc[k]], t[Kc[k]], R3, "class outside the kernel of the connecting map");
  auto out = vec_mat(v, QF, fidx, R3);
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] %= R3.lpow(f[i]);
  return out;
}

std::int64_t H2Group::order() const {
  std::int64_t r = 1;
  for (auto x : inv_)
    r *= x;
  return r;
}

Coord H2Group::classify(const Cochain2 &g) const {
  Coord out;
  for (const auto &P : parts_) {
    auto c = P->final_coords(P->hclass(P->x_of(g)));
    out.insert(out.end(), c.begin(), c.end());
  }
  return out;
}

std::int64_t H2Group::class_order(const Cochain2 &g) const {
  Coord c = classify(g);
  std::int64_t ord = 1;
  for (std::size_t i = 0; i < c.size(); ++i)
    ord = std::lcm(ord, inv_[i] / std::gcd(inv_[i], c[i]));
  return ord;
}

H2Group h2_invariants(const GaloisGroup &G, const UnitsQuotient &M, const ActionMatrices &A, OracleLimits lim) {
  const int n = G.size();
  const int r = M.dim();
  if (n > lim.max_group || n * n * r > lim.max_dim)
    raise(ErrorKind::OracleTooLarge, "H2 oracle over its size guard: |G| = " + std::to_string(n) +
                                         ", |G|^2 dim = " + std::to_string(n * n * r));
  std::vector<std::int64_t> mod = M.moduli();
  mod[0] = static_cast<std::int64_t>(M.field()->e()) * n * M.torsion_exponent();

  H2Group H;
  for (auto [l, vn] : linalg::factor(n)) {
    auto P = std::make_shared<H2Group::Part>();
    P->l = l;
    P->n = n;
    int bmax = 0;
    for (int i = 0; i < r; ++i) {
      const int v = linalg::lval(mod[i], l);
      if (v > 0) {
        P->J.push_back(i);
        P->b.push_back(v);
        bmax = std::max(bmax, v);
      }
    }
    const int m = static_cast<int>(P->J.size());
    const int N = n * n * m;
    P->R = Ring(l, bmax + 1);
    const Ring &R = P->R;
    auto xi = [&](int a, int c, int jj) { return (a * n + c) * m + jj; };

    // cocycle condition, row (s,t,u,i) scaled by l^(A - b_i)
    Mat D2(n * n * n * m, N);
    for (int s = 0; s < n; ++s)
      for (int t = 0; t < n; ++t)
        for (int u = 0; u < n; ++u)
          for (int ii = 0; ii < m; ++ii) {
            const int row = ((s * n + t) * n + u) * m + ii;
            const std::int64_t sc = R.lpow(R.A - P->b[ii]);
            auto put = [&](int col, std::int64_t v) { D2(row, col) = R.add(D2(row, col), R.mul(R.red(v), sc)); };
            for (int jj = 0; jj < m; ++jj)
              put(xi(t, u, jj), A.rows[s][P->J[jj]][P->J[ii]]);
            put(xi(G.mul(s, t), u, ii), -1);
            put(xi(s, G.mul(t, u), ii), 1);
            put(xi(s, t, ii), -1);
          }
    auto sz = linalg::smith(std::move(D2), R, false, true);
    P->Qz = std::move(sz.Q);
    P->Qzinv = std::move(sz.Qinv);
    P->s.assign(N, 0);
    for (int i = 0; i < sz.rank; ++i)
      P->s[i] = R.A - sz.exps[i];
    for (int i = 0; i < N; ++i)
      if (P->s[i] < R.A)
        P->K.push_back(i);
    const int nK = static_cast<int>(P->K.size());

    // coboundaries and module relations in u coordinates
    std::vector<std::vector<std::int64_t>> rel;
    auto push_u = [&](const std::vector<std::int64_t> &y) {
      std::vector<std::int64_t> u(nK);
      for (int k = 0; k < nK; ++k)
        u[k] = divide_exact(y[P->K[k]], P->s[P->K[k]], R, "coboundary outside the cocycle lattice");
      rel.push_back(std::move(u));
    };
    for (int sigma = 0; sigma < n; ++sigma)
      for (int jj = 0; jj < m; ++jj) {
        std::vector<std::int64_t> x(N, 0);
        for (int s = 0; s < n; ++s)
          for (int t = 0; t < n; ++t) {
            for (int ii = 0; ii < m; ++ii) {
              std::int64_t v = 0;
              if (t == sigma)
                v += A.rows[s][P->J[jj]][P->J[ii]];
              if (ii == jj) {
                if (G.mul(s, t) == sigma)
                  v -= 1;
                if (s == sigma)
                  v += 1;
              }
              x[xi(s, t, ii)] = R.red(v);
            }
          }
        push_u(mat_vec(P->Qzinv, x, R));
      }
    for (int q = 0; q < N; ++q) {
      const std::int64_t lb = R.lpow(P->b[q % m]);
      std::vector<std::int64_t> y(N);
      for (int i = 0; i < N; ++i)
        y[i] = R.mul(P->Qzinv(i, q), lb);
      push_u(y);
    }
    for (int k = 0; k < nK; ++k) {
      std::vector<std::int64_t> u(nK, 0);
      u[k] = R.lpow(R.A - P->s[P->K[k]]);
      rel.push_back(std::move(u));
    }
    Mat Rel(static_cast<int>(rel.size()), nK);
    for (int i = 0; i < Rel.rows; ++i)
      for (int k = 0; k < nK; ++k)
        Rel(i, k) = rel[i][k];
    auto sh = linalg::smith(std::move(Rel), R, false, true);
    if (sh.rank < nK)
      raise(ErrorKind::Other, "H2 computation produced a free part");
    P->Qh = std::move(sh.Q);
    for (int i = 0; i < sh.rank; ++i)
      if (sh.exps[i] > 0) {
        P->hidx.push_back(i);
        P->e.push_back(sh.exps[i]);
      }
    const int h = static_cast<int>(P->hidx.size());
    if (h == 0) {
      H.parts_.push_back(P);
      continue;
    }

    // connecting map: integer lift of the valuation part, coboundary / l^b_z
    int emax = *std::max_element(P->e.begin(), P->e.end());
    P->R3 = Ring(l, std::max(emax, vn) + 1);
    const Ring &R3 = P->R3;
    if (P->J.empty() || P->J[0] != 0)
      raise(ErrorKind::Other, "valuation coordinate missing from the l-part");
    Mat W(n * n * n, h + n * n);
    for (int hi = 0; hi < h; ++hi) {
      // u = row hidx[hi] of Qh^-1
      std::vector<std::int64_t> u(nK);
      for (int k = 0; k < nK; ++k)
        u[k] = sh.Qinv(P->hidx[hi], k);
      std::vector<std::int64_t> y(N, 0);
      for (int k = 0; k < nK; ++k)
        y[P->K[k]] = R.mul(u[k], R.lpow(P->s[P->K[k]]));
      auto x = mat_vec(P->Qz, y, R);
      const std::int64_t lbz = R.lpow(P->b[0]);
      for (int s = 0; s < n; ++s)
        for (int t = 0; t < n; ++t)
          for (int uu = 0; uu < n; ++uu) {
            __int128 d = static_cast<__int128>(x[xi(t, uu, 0)]) - x[xi(G.mul(s, t), uu, 0)] +
                         x[xi(s, G.mul(t, uu), 0)] - x[xi(s, t, 0)];
            if (d % lbz != 0)
              raise(ErrorKind::Other, "valuation part of a cocycle is not closed");
            d /= lbz;
            std::int64_t dm = static_cast<std::int64_t>(d % R3.mod);
            W((s * n + t) * n + uu, hi) = R3.red(dm);
          }
    }
    for (int s = 0; s < n; ++s)
      for (int t = 0; t < n; ++t)
        for (int uu = 0; uu < n; ++uu) {
          const int row = (s * n + t) * n + uu;
          auto put = [&](int a, int c, std::int64_t v) {
            std::int64_t &w = W(row, h + a * n + c);
            w = R3.red(w - v);
          };
          put(t, uu, 1);
          put(G.mul(s, t), uu, -1);
          put(s, G.mul(t, uu), 1);
          put(s, t, -1);
        }
    auto sw = linalg::smith(std::move(W), R3, false, true);
    std::vector<std::vector<std::int64_t>> gens;
    for (int i = 0; i < h + n * n; ++i) {
      const std::int64_t sc = i < sw.rank ? R3.lpow(R3.A - sw.exps[i]) : 1;
      std::vector<std::int64_t> g(h);
      bool nz = false;
      for (int j = 0; j < h; ++j) {
        g[j] = R3.mul(sw.Q(j, i), sc);
        nz |= g[j] != 0;
      }
      if (nz)
        gens.push_back(std::move(g));
    }
    Mat Sg(std::max<int>(1, static_cast<int>(gens.size())), h);
    for (std::size_t i = 0; i < gens.size(); ++i)
      for (int j = 0; j < h; ++j)
        Sg(static_cast<int>(i), j) = gens[i][j];
    auto ss = linalg::smith(std::move(Sg), R3, false, true);
    P->QS = std::move(ss.Q);
    P->t.assign(h, R3.A);
    for (int i = 0; i < ss.rank; ++i)
      P->t[i] = ss.exps[i];
    for (int i = 0; i < h; ++i)
      if (P->t[i] < R3.A)
        P->Kc.push_back(i);
    const int nc = static_cast<int>(P->Kc.size());
    std::vector<std::vector<std::int64_t>> vrel;
    for (int j = 0; j < h; ++j) {
      const std::int64_t le = R3.lpow(P->e[j]);
      std::vector<std::int64_t> v(nc);
      for (int k = 0; k < nc; ++k)
        v[k] = divide_exact(R3.mul(le, P->QS(j, P->Kc[k])), P->t[P->Kc[k]], R3,
                            "module relation outside the kernel of the connecting map");
      vrel.push_back(std::move(v));
    }
    for (int k = 0; k < nc; ++k) {
      std::vector<std::int64_t> v(nc, 0);
      v[k] = R3.lpow(R3.A - P->t[P->Kc[k]]);
      vrel.push_back(std::move(v));
    }
    Mat V(static_cast<int>(vrel.size()), nc);
    for (int i = 0; i < V.rows; ++i)
      for (int k = 0; k < nc; ++k)
        V(i, k) = vrel[i][k];
    auto sf = linalg::smith(std::move(V), R3, false, true);
    P->QF = std::move(sf.Q);
    for (int i = 0; i < sf.rank; ++i)
      if (sf.exps[i] > 0) {
        P->fidx.push_back(i);
        P->f.push_back(sf.exps[i]);
        H.inv_.push_back(R3.lpow(sf.exps[i]));
      }
    H.parts_.push_back(P);
  }
  return H;
}

} // namespace lfc
