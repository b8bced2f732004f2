#include "lfc/local_linalg.hpp"

#include "lfc/error.hpp"
#include "lfc/zmod.hpp"

#include <utility>

namespace lfc::linalg {

Ring::Ring(std::int64_t l_, int A_) : l(l_), A(A_) {
  __int128 m = 1;
  for (int i = 0; i < A; ++i) {
    m *= l;
    if (m >= (static_cast<__int128>(1) << 62))
      raise(ErrorKind::Other, "local ring modulus too large");
  }
  mod = static_cast<std::int64_t>(m);
  pow2 = l == 2;
}

int Ring::val(std::int64_t x) const {
  if (x == 0)
    return A;
  int v = 0;
  while (x % l == 0) {
    x /= l;
    ++v;
  }
  return v;
}

std::int64_t Ring::unit_inv(std::int64_t u) const { return zmod::inv(u, mod); }

std::int64_t Ring::lpow(int e) const {
  std::int64_t r = 1;
  for (int i = 0; i < e; ++i)
    r *= l;
  return r;
}

Mat Mat::identity(int n) {
  Mat m(n, n);
  for (int i = 0; i < n; ++i)
    m(i, i) = 1;
  return m;
}

namespace {

void swap_rows(Mat &m, int i, int j) {
  if (i == j)
    return;
  for (int c = 0; c < m.cols; ++c)
    std::swap(m(i, c), m(j, c));
}

void swap_cols(Mat &m, int i, int j) {
  if (i == j)
    return;
  for (int r = 0; r < m.rows; ++r)
    std::swap(m(r, i), m(r, j));
}

// row_i -= c * row_t over columns [from, cols)
void row_axpy(Mat &m, int i, int t, std::int64_t c, int from, const Ring &R) {
  if (c == 0)
    return;
  std::int64_t *ri = &m.a[static_cast<std::size_t>(i) * m.cols];
  const std::int64_t *rt = &m.a[static_cast<std::size_t>(t) * m.cols];
  for (int col = from; col < m.cols; ++col)
    if (rt[col] != 0)
      ri[col] = R.sub(ri[col], R.mul(c, rt[col]));
}

} // namespace

Smith smith(Mat m, const Ring &R, bool track_P, bool track_Q, std::vector<std::vector<std::int64_t>> *rhs) {
  Smith s;
  if (track_P)
    s.P = Mat::identity(m.rows);
  if (track_Q) {
    s.Q = Mat::identity(m.cols);
    s.Qinv = Mat::identity(m.cols);
  }
  for (auto &x : m.a)
    x = R.red(x);
  const int n = std::min(m.rows, m.cols);
  for (int t = 0; t < n; ++t) {
    int bi = -1, bj = -1, bv = R.A;
    for (int i = t; i < m.rows && bv > 0; ++i)
      for (int j = t; j < m.cols; ++j) {
        std::int64_t x = m(i, j);
        if (x == 0)
          continue;
        int v = R.val(x);
        if (v < bv) {
          bv = v;
          bi = i;
          bj = j;
          if (v == 0)
            break;
        }
      }
    if (bi < 0)
      break;
    swap_rows(m, t, bi);
    if (track_P)
      swap_rows(s.P, t, bi);
    if (rhs)
      for (auto &b : *rhs)
        std::swap(b[t], b[bi]);
    swap_cols(m, t, bj);
    if (track_Q) {
      swap_cols(s.Q, t, bj);
      swap_rows(s.Qinv, t, bj);
    }
    // normalize pivot to l^bv
    const std::int64_t lv = R.lpow(bv);
    const std::int64_t u = R.unit_inv(m(t, t) / lv);
    for (int c = t; c < m.cols; ++c)
      m(t, c) = R.mul(m(t, c), u);
    if (track_P)
      for (int c = 0; c < s.P.cols; ++c)
        s.P(t, c) = R.mul(s.P(t, c), u);
    if (rhs)
      for (auto &b : *rhs)
        b[t] = R.mul(b[t], u);
    // clear the column below
    for (int i = t + 1; i < m.rows; ++i) {
      std::int64_t x = m(i, t);
      if (x == 0)
        continue;
      std::int64_t c = x / lv;
      row_axpy(m, i, t, c, t, R);
      if (track_P)
        row_axpy(s.P, i, t, c, 0, R);
      if (rhs)
        for (auto &b : *rhs)
          b[i] = R.sub(b[i], R.mul(c, b[t]));
    }
    // clear the row to the right; only row t changes in m
    for (int j = t + 1; j < m.cols; ++j) {
      std::int64_t x = m(t, j);
      if (x == 0)
        continue;
      std::int64_t c = x / lv;
      m(t, j) = 0;
      if (track_Q) {
        for (int r = 0; r < s.Q.rows; ++r)
          if (s.Q(r, t) != 0)
            s.Q(r, j) = R.sub(s.Q(r, j), R.mul(c, s.Q(r, t)));
        for (int cc = 0; cc < s.Qinv.cols; ++cc)
          if (s.Qinv(j, cc) != 0)
            s.Qinv(t, cc) = R.add(s.Qinv(t, cc), R.mul(c, s.Qinv(j, cc)));
      }
    }
    s.exps.push_back(bv);
    ++s.rank;
  }
  return s;
}

std::vector<std::pair<std::int64_t, int>> factor(std::int64_t m) {
  std::vector<std::pair<std::int64_t, int>> r;
  for (std::int64_t d = 2; d * d <= m; ++d)
    if (m % d == 0) {
      int e = 0;
      while (m % d == 0) {
        m /= d;
        ++e;
      }
      r.push_back({d, e});
    }
  if (m > 1)
    r.push_back({m, 1});
  return r;
}

int lval(std::int64_t m, std::int64_t l) {
  int v = 0;
  while (m != 0 && m % l == 0) {
    m /= l;
    ++v;
  }
  return v;
}

bool solve(const Mat &m, const std::vector<std::int64_t> &b, const Ring &R, std::vector<std::int64_t> &y) {
  std::vector<std::vector<std::int64_t>> rhs{b};
  for (auto &x : rhs[0])
    x = R.red(x);
  Smith s = smith(m, R, false, true, &rhs);
  const auto &pb = rhs[0];
  std::vector<std::int64_t> v(m.cols, 0);
  for (int i = 0; i < s.rank; ++i) {
    std::int64_t x = pb[i];
    if (R.val(x) < s.exps[i])
      return false;
    v[i] = x / R.lpow(s.exps[i]);
  }
  for (int i = s.rank; i < m.rows; ++i)
    if (pb[i] != 0)
      return false;
  y.assign(m.cols, 0);
  for (int r = 0; r < m.cols; ++r) {
    std::int64_t acc = 0;
    for (int c = 0; c < s.rank; ++c)
      if (v[c] != 0)
        acc = R.add(acc, R.mul(s.Q(r, c), v[c]));
    y[r] = acc;
  }
  return true;
}

} // namespace lfc::linalg
