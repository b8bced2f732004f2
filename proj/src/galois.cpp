#include "lfc/galois.hpp"

#include "lfc/error.hpp"

#include <algorithm>
#include <optional>
#include <set>

namespace lfc {

namespace {

int posmod(int a, int m) { return ((a % m) + m) % m; }

// Number of leading digits on which a and b agree (large when equal).
int agreement(const FieldElement &a, const FieldElement &b) {
  FieldElement diff = a - b;
  if (diff.is_zero())
    return diff.prec_abs();
  return diff.valuation();
}

FieldElement trace(const GaloisGroup &G, const std::vector<int> &H, const FieldElement &x) {
  FieldElement acc = G.field()->zero(x.prec_abs());
  for (int h : H)
    acc = acc + G.apply(h, x);
  return acc;
}

} // namespace

Automorphism compose(const Automorphism &a, const Automorphism &b) {
  const int f = a.pi_image.parent()->f();
  return {posmod(a.frob_power + b.frob_power, f), a.apply(b.pi_image)};
}

GaloisGroup::GaloisGroup(LocalFieldPtr field, std::vector<Automorphism> elements)
    : field_(std::move(field)), elements_(std::move(elements)) {
  const int n = size();
  identity_ = index_of({0, field_->pi()});
  mul_.assign(n, std::vector<int>(n, 0));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      mul_[a][b] = index_of(compose(elements_[a], elements_[b]));
  inv_.assign(n, -1);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (mul_[a][b] == identity_)
        inv_[a] = b;
  for (int a = 0; a < n; ++a)
    if (inv_[a] < 0)
      raise(ErrorKind::Other, "automorphisms do not form a group");
}

int GaloisGroup::index_of(const Automorphism &s) const {
  const int f = field_->f();
  const int fp = posmod(s.frob_power, f);
  int best = -1, best_agree = -1, second = -1;
  for (int i = 0; i < size(); ++i) {
    if (elements_[i].frob_power != fp)
      continue;
    int ag = agreement(elements_[i].pi_image, s.pi_image);
    if (ag > best_agree) {
      second = best_agree;
      best_agree = ag;
      best = i;
    } else if (ag > second) {
      second = ag;
    }
  }
  if (best < 0 || best_agree <= 1 || best_agree == second)
    raise(ErrorKind::Other, "automorphism not identifiable in the group");
  return best;
}

FieldElement transfer(const FieldElement &x, const LocalFieldPtr &target) {
  const int abs = std::min(x.prec_abs(), target->precision());
  if (x.is_zero() || x.valuation() >= abs)
    return target->zero(abs);
  return target->from_parts(x.valuation(), x.unit(), abs);
}

GaloisGroupPtr compute_automorphisms(const LocalFieldPtr &L) {
  const int top = L->capacity() - 4 * L->e();
  LocalFieldPtr hi = L->precision() >= top ? L : L->with_precision(top);
  std::vector<Automorphism> elems;
  for (int j = 0; j < L->f(); ++j) {
    std::vector<FieldElement> roots;
    try {
      roots = integral_roots(hi->eisenstein_polynomial(j));
    } catch (const Error &e) {
      if (e.kind() == ErrorKind::PrecisionExhausted)
        raise(ErrorKind::NotGalois, "roots of the defining polynomial are not separated in L");
      throw;
    }
    for (auto &r : roots)
      elems.push_back({j, r});
  }
  if (static_cast<int>(elems.size()) != L->degree())
    raise(ErrorKind::NotGalois, "found " + std::to_string(elems.size()) + " automorphisms, degree is " +
                                    std::to_string(L->degree()));
  auto precise = std::make_shared<GaloisGroup>(hi, elems);
  if (hi == L)
    return precise;
  for (auto &s : elems)
    s.pi_image = transfer(s.pi_image, L);
  auto G = std::make_shared<GaloisGroup>(L, std::move(elems));
  G->precise_ = precise;
  return G;
}

bool is_subgroup(const GaloisGroup &G, const std::vector<int> &H) {
  std::set<int> s(H.begin(), H.end());
  if (!s.count(G.identity()))
    return false;
  for (int a : s)
    for (int b : s)
      if (!s.count(G.mul(a, b)))
        return false;
  return true;
}

std::vector<std::vector<int>> subgroups_of_order(const GaloisGroup &G, int order) {
  auto closure = [&](std::set<int> s) {
    bool grew = true;
    while (grew) {
      grew = false;
      std::vector<int> cur(s.begin(), s.end());
      for (int a : cur)
        for (int b : cur)
          grew |= s.insert(G.mul(a, b)).second;
    }
    return s;
  };
  std::set<std::set<int>> all{{G.identity()}};
  std::vector<std::set<int>> frontier{{G.identity()}};
  while (!frontier.empty()) {
    std::vector<std::set<int>> next;
    for (const auto &H : frontier)
      for (int g = 0; g < G.size(); ++g) {
        if (H.count(g))
          continue;
        std::set<int> s = H;
        s.insert(g);
        s = closure(std::move(s));
        if (all.insert(s).second)
          next.push_back(s);
      }
    frontier = std::move(next);
  }
  std::vector<std::vector<int>> out;
  for (const auto &H : all)
    if (static_cast<int>(H.size()) == order)
      out.emplace_back(H.begin(), H.end());
  return out;
}

std::vector<int> inertia_subgroup(const GaloisGroup &G) {
  std::vector<int> r;
  for (int i = 0; i < G.size(); ++i)
    if (G[i].frob_power == 0)
      r.push_back(i);
  return r;
}

SubfieldData lf_fixed_field(const GaloisGroup &G, const std::vector<int> &H_in) {
  std::vector<int> H = H_in;
  std::sort(H.begin(), H.end());
  H.erase(std::unique(H.begin(), H.end()), H.end());
  if (!is_subgroup(G, H))
    raise(ErrorKind::InvalidInput, "automorphism set is not a subgroup");
  const LocalFieldPtr &L = G.field();
  SubfieldData K;
  K.subgroup = H;
  K.e_rel = 0;
  for (int h : H)
    K.e_rel += G[h].frob_power == 0;
  K.d = static_cast<int>(H.size()) / K.e_rel;
  K.f_K = L->f() / K.d;
  K.e_K = L->e() / K.e_rel;

  if (H.size() == 1) {
    K.pi_K = L->pi();
  } else if (static_cast<int>(H.size()) == L->degree()) {
    K.pi_K = L->from_int(L->p());
  } else {
    // Trace ideals Tr(P^m) run through consecutive powers of the prime of K;
    // two traces of adjacent valuations give a prime element.
    const GaloisGroup &GP = G.precise() ? *G.precise() : G;
    const LocalFieldPtr &Lp = GP.field();
    std::vector<std::optional<FieldElement>> by_val;
    FieldElement pim = Lp->one();
    for (int m = 0; m < 2 * L->e(); ++m, pim = pim * Lp->pi()) {
      FieldElement w = Lp->one();
      for (int a = 0; a < L->f(); ++a, w = w * Lp->omega()) {
        FieldElement t = trace(GP, H, w * pim);
        if (t.is_zero())
          continue;
        int v = t.valuation();
        if (v % K.e_rel != 0)
          raise(ErrorKind::Other, "trace valuation not divisible by e(L/K)");
        int c = v / K.e_rel;
        if (c >= static_cast<int>(by_val.size()))
          by_val.resize(c + 1);
        if (!by_val[c])
          by_val[c] = t;
      }
    }
    bool found = false;
    for (std::size_t c = 0; c + 1 < by_val.size() && !found; ++c)
      if (by_val[c] && by_val[c + 1]) {
        K.pi_K = transfer(*by_val[c + 1] / *by_val[c], L);
        found = true;
      }
    if (!found)
      raise(ErrorKind::PrecisionExhausted, "no prime element found in the fixed field");
  }

  const auto &k = L->residue_field();
  std::int64_t qK = 1;
  for (int i = 0; i < K.f_K; ++i)
    qK *= L->p();
  FieldElement t = lf_teichmueller(ff_pow(k->gen(), (k->order() - 1) / (qK - 1)), *L);
  FieldElement ta = L->one();
  for (int a = 0; a < K.f_K; ++a, ta = ta * t) {
    FieldElement x = ta;
    for (int b = 0; b < K.e_K; ++b, x = x * K.pi_K)
      K.basis.push_back(x);
  }
  return K;
}

SubfieldData base_field_Qp(const GaloisGroup &G) {
  std::vector<int> all(G.size());
  for (int i = 0; i < G.size(); ++i)
    all[i] = i;
  return lf_fixed_field(G, all);
}

int restrict_unram(const Automorphism &s, int d, int f_K) {
  if (s.frob_power % f_K != 0)
    raise(ErrorKind::InvalidInput, "automorphism does not fix the base field");
  return posmod(-(s.frob_power / f_K), d);
}

Automorphism lift_sigma_hat(const Automorphism &s, const Compositum &F, int d, int f_K) {
  const int j = restrict_unram(s, d, f_K);
  const int fF = F.field->f();
  const int fL = F.embedding.source()->f();
  Automorphism r{posmod(-j * f_K, fF), F.embedding.apply(s.pi_image)};
  if (r.frob_power % fL != s.frob_power % fL)
    raise(ErrorKind::Other, "lift does not restrict to sigma");
  return r;
}

std::string group_label(const GaloisGroup &G) {
  const int n = G.size();
  std::vector<int> order(n, 1);
  int max_order = 1, involutions = 0;
  bool abelian = true;
  for (int a = 0; a < n; ++a) {
    for (int x = a; x != G.identity(); x = G.mul(x, a))
      ++order[a];
    max_order = std::max(max_order, order[a]);
    involutions += order[a] == 2;
    for (int b = 0; b < n; ++b)
      abelian &= G.mul(a, b) == G.mul(b, a);
  }
  if (max_order == n)
    return "C" + std::to_string(n);
  if (n == 4)
    return "V4";
  if (n == 6 && !abelian)
    return "S3";
  if (n == 8 && !abelian)
    return involutions == 1 ? "Q8" : "D4";
  return "G" + std::to_string(n);
}

bool lf_isomorphic(const LocalFieldPtr &a, const LocalFieldPtr &b) {
  if (a->p() != b->p() || a->e() != b->e() || a->f() != b->f())
    return false;
  auto B = b->with_precision(b->capacity() - 4 * b->e());
  for (int j = 0; j < a->f(); ++j) {
    Polynomial g;
    for (const auto &c : a->eis_coeffs())
      g.push_back(B->from_unram(B->unram_frobenius(c, j)));
    g.push_back(B->one());
    if (!integral_roots(g).empty())
      return true;
  }
  return false;
}

} // namespace lfc
