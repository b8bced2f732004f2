// Builds the field catalog: every Galois extension of Q_p of the requested
// degrees, found by enumerating Eisenstein polynomials with coefficients
// reduced modulo growing powers of p and keeping one field per isomorphism
// class. The search stops once each degree reaches its expected count.

#include "lfc/error.hpp"
#include "lfc/io.hpp"
#include "lfc/parallel.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <map>

using namespace lfc;

namespace {

struct Found {
  LocalFieldPtr field;
  FieldSpec spec;
  std::string group;
};

// room for k up to 16, capped by what the coordinate ring holds
int precision_for(std::int64_t p, int f, int e) {
  std::vector<std::vector<std::int64_t>> poly(e, std::vector<std::int64_t>(f, 0));
  poly[0][0] = e == 1 ? -p : p;
  const int cap = LocalField::make(p, f, poly, 2)->capacity() - 4 * e;
  return std::min(2 * 16 + 2 * e, cap);
}

// Eisenstein coefficient vectors for (e, f) with digits below p^level.
std::vector<std::vector<std::vector<std::int64_t>>> candidates(std::int64_t p, int e, int f, int level) {
  std::int64_t span = 1;
  for (int i = 1; i < level; ++i)
    span *= p;
  const int slots = e * f;
  std::vector<std::vector<std::vector<std::int64_t>>> out;
  std::vector<std::int64_t> digit(slots, 0);
  for (;;) {
    bool unit = false;
    for (int j = 0; j < f; ++j)
      unit |= digit[j] % p != 0;
    if (unit) {
      std::vector<std::vector<std::int64_t>> poly(e, std::vector<std::int64_t>(f));
      for (int i = 0; i < e; ++i)
        for (int j = 0; j < f; ++j)
          poly[i][j] = p * digit[i * f + j];
      out.push_back(std::move(poly));
    }
    int pos = 0;
    while (pos < slots && ++digit[pos] == span)
      digit[pos++] = 0;
    if (pos == slots)
      break;
  }
  return out;
}

std::vector<Found> search(std::int64_t p, int n, int target, int max_level) {
  std::vector<Found> found;
  {
    std::vector<std::int64_t> c(n, 0);
    c[0] = -p;
    FieldSpec s{p, n, {c}, precision_for(p, n, 1)};
    auto L = make_field(s);
    found.push_back({L, s, group_label(*compute_automorphisms(L))});
  }
  for (int level = 2; level <= max_level && static_cast<int>(found.size()) < target; ++level)
    for (int e = 2; e <= n && static_cast<int>(found.size()) < target; ++e) {
      if (n % e != 0)
        continue;
      const int f = n / e;
      auto cands = candidates(p, e, f, level);
      std::vector<int> galois(cands.size(), 0);
      std::vector<std::string> label(cands.size());
      parallel_for(static_cast<int>(cands.size()), true, [&](int i) {
        try {
          auto L = LocalField::make(p, f, cands[i], precision_for(p, f, e));
          auto G = compute_automorphisms(L);
          if (G->size() == n) {
            galois[i] = 1;
            label[i] = group_label(*G);
          }
        } catch (const Error &) {
        }
      });
      for (std::size_t i = 0; i < cands.size() && static_cast<int>(found.size()) < target; ++i) {
        if (!galois[i])
          continue;
        FieldSpec s{p, f, cands[i], precision_for(p, f, e)};
        auto L = make_field(s);
        bool fresh = true;
        for (const auto &g : found)
          if (lf_isomorphic(L, g.field)) {
            fresh = false;
            break;
          }
        if (fresh) {
          found.push_back({L, s, label[i]});
          std::fprintf(stderr, "Q%lld degree %d: e=%d f=%d %s (level %d, %zu/%d)\n", static_cast<long long>(p), n,
                       e, f, label[i].c_str(), level, found.size(), target);
        }
      }
    }
  return found;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Search for Galois extensions of Q_2 and Q_3 of degree <= 4"};
  std::string out = "data/catalog.json";
  int max_level = 6;
  app.add_option("--out", out, "output path");
  app.add_option("--max-level", max_level, "largest coefficient level p^level to try");
  CLI11_PARSE(app, argc, argv);

  // expected counts from the characters of Q_p^x of order 2, 3 and exponent-4 quotients
  const std::map<std::pair<int, int>, int> targets{{{2, 2}, 7}, {{2, 3}, 1}, {{2, 4}, 19},
                                                   {{3, 2}, 3}, {{3, 3}, 4}, {{3, 4}, 3}};
  std::vector<CatalogEntry> catalog;
  int status = 0;
  for (const auto &[key, target] : targets) {
    auto [p, n] = key;
    auto found = search(p, n, target, max_level);
    if (static_cast<int>(found.size()) != target) {
      std::fprintf(stderr, "Q%d degree %d: found %zu of %d\n", p, n, found.size(), target);
      status = 1;
    }
    std::map<std::string, int> idx;
    for (const auto &g : found) {
      const int i = ++idx[g.group];
      catalog.push_back({"Q" + std::to_string(p) + "." + std::to_string(n) + "." + g.group + "." + std::to_string(i),
                         g.group, g.spec});
    }
  }
  catalog.push_back({"Q3.6.S3.1", "S3", FieldSpec{3, 1, {{3}, {0}, {0}, {0}, {0}, {0}}, precision_for(3, 1, 6)}});
  write_json(out, to_json(catalog));
  return status;
}
