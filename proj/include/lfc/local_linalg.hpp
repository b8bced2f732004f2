#pragma once

#include <cstdint>
#include <utility>
#include <vector>

// Linear algebra over the local rings Z/l^A (l prime, l^A < 2^62).
namespace lfc::linalg {

struct Ring {
  std::int64_t l = 2;
  int A = 1;
  std::int64_t mod = 2;
  bool pow2 = true;

  Ring() = default;
  Ring(std::int64_t l, int A);

  std::int64_t red(std::int64_t x) const {
    x %= mod;
    return x < 0 ? x + mod : x;
  }
  std::int64_t mul(std::int64_t a, std::int64_t b) const {
    if (pow2)
      return static_cast<std::int64_t>((static_cast<std::uint64_t>(a) * static_cast<std::uint64_t>(b)) &
                                       static_cast<std::uint64_t>(mod - 1));
    return static_cast<std::int64_t>(static_cast<__int128>(a) * b % mod);
  }
  std::int64_t sub(std::int64_t a, std::int64_t b) const {
    std::int64_t r = a - b;
    return r < 0 ? r + mod : r;
  }
  std::int64_t add(std::int64_t a, std::int64_t b) const {
    std::int64_t r = a + b;
    return r >= mod ? r - mod : r;
  }
  /// l-adic valuation, A for zero.
  int val(std::int64_t x) const;
  std::int64_t unit_inv(std::int64_t u) const;
  std::int64_t lpow(int e) const;
};

struct Mat {
  int rows = 0, cols = 0;
  std::vector<std::int64_t> a;

  Mat() = default;
  Mat(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, 0) {}
  static Mat identity(int n);
  std::int64_t &operator()(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
  std::int64_t operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }
};

/// P M Q = diag(l^exps[0], ..., l^exps[rank-1], 0, ...).
struct Smith {
  int rank = 0;
  std::vector<int> exps;
  Mat P;     // rows x rows, when tracked
  Mat Q;     // cols x cols, when tracked
  Mat Qinv;  // inverse of Q, when tracked
};

/// Smith form with full minimal-valuation pivoting. Row operations are also
/// applied to every vector in `rhs` (each of length m.rows).
Smith smith(Mat m, const Ring &R, bool track_P, bool track_Q,
            std::vector<std::vector<std::int64_t>> *rhs = nullptr);

/// Prime factorization, ascending.
std::vector<std::pair<std::int64_t, int>> factor(std::int64_t m);
/// l-adic valuation of a nonzero integer.
int lval(std::int64_t m, std::int64_t l);

/// One solution of M y = b, or false.
bool solve(const Mat &m, const std::vector<std::int64_t> &b, const Ring &R, std::vector<std::int64_t> &y);

} // namespace lfc::linalg
