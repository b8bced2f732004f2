#include "doctest.h"

#include "lfc/error.hpp"
#include "lfc/finite_field.hpp"

#include <random>
#include <set>

using namespace lfc;

namespace {

// Multiplicative order by repeated multiplication, independent of the log tables.
std::int64_t brute_order(const FFElem &a) {
  FFElem acc = a;
  std::int64_t k = 1;
  while (!acc.is_one()) {
    acc = acc * a;
    ++k;
  }
  return k;
}

FFElem brute_pow(const FFElem &a, std::int64_t e) {
  FFElem r = a.parent->one();
  for (std::int64_t i = 0; i < e; ++i)
    r = r * a;
  return r;
}

std::int64_t ipow(std::int64_t p, int k) {
  std::int64_t r = 1;
  while (k-- > 0)
    r *= p;
  return r;
}

} // namespace

TEST_CASE("F_4 arithmetic") {
  auto k = FiniteField::make(2, 2);
  CHECK(k->modulus() == std::vector<std::int64_t>{1, 1});  // w^2 + w + 1
  FFElem w = k->gen();
  FFElem w2 = w * w;
  CHECK(w2 == k->from_coords(std::vector<std::int64_t>{1, 1}));
  CHECK(ff_inv(k->one()).is_one());
  for (std::int64_t i = 1; i < k->order(); ++i)
    CHECK(ff_pow(k->element(i), k->order() - 1).is_one());
  CHECK(ff_arith(w, w, FFOp::Mul) == w2);
  CHECK(ff_arith(w, w, FFOp::Pow, 3).is_one());
}

TEST_CASE("canonical modulus is the smallest primitive polynomial") {
  for (auto [p, n] : {std::pair{2, 3}, {3, 2}, {2, 4}, {5, 2}, {3, 3}}) {
    auto k = FiniteField::make(p, n);
    CHECK(k->generator_is_primitive());
    CHECK(brute_order(k->gen()) == k->order() - 1);
    // every smaller coefficient vector is either reducible or non-primitive
    std::int64_t my_index = 0;
    for (int i = n - 1; i >= 0; --i)
      my_index = my_index * p + k->modulus()[i];
    for (std::int64_t idx = 0; idx < my_index; ++idx) {
      std::vector<std::int64_t> m(n);
      std::int64_t t = idx;
      for (int i = 0; i < n; ++i) {
        m[i] = t % p;
        t /= p;
      }
      try {
        auto other = FiniteField::make(p, m);
        CHECK(brute_order(other->gen()) < other->order() - 1);
      } catch (const Error &) {
        // reducible
      }
    }
  }
  // F_9 = F_3[w]/(w^2 + w + 2)
  CHECK(FiniteField::make(3, 2)->modulus() == std::vector<std::int64_t>{2, 1});
}

TEST_CASE("field order cap") {
  CHECK_THROWS_AS(FiniteField::make(2, 20), Error);
  CHECK_NOTHROW(FiniteField::make(2, 19));
}

TEST_CASE("inverse and errors") {
  auto k = FiniteField::make(3, 3);
  for (std::int64_t i = 1; i < k->order(); ++i) {
    FFElem a = k->element(i);
    CHECK((a * ff_inv(a)).is_one());
  }
  try {
    ff_inv(k->zero());
    FAIL("expected DivisionByZero");
  } catch (const Error &e) {
    CHECK(e.kind() == ErrorKind::DivisionByZero);
  }
  auto other = FiniteField::make(2, 3);
  try {
    (void)(k->one() * other->one());
    FAIL("expected ParentMismatch");
  } catch (const Error &e) {
    CHECK(e.kind() == ErrorKind::ParentMismatch);
  }
}

TEST_CASE("Frobenius") {
  auto f4 = FiniteField::make(2, 2);
  FFElem w = f4->gen();
  CHECK(ff_frobenius(w, 1) == f4->from_coords(std::vector<std::int64_t>{1, 1}));
  CHECK(ff_frobenius(w, 0) == w);
  CHECK(ff_frobenius(w, 2) == w);

  std::mt19937_64 rng(7);
  for (auto [p, n] : {std::pair{2, 4}, {3, 3}, {5, 2}, {7, 2}}) {
    auto k = FiniteField::make(p, n);
    std::uniform_int_distribution<std::int64_t> pick(0, k->order() - 1);
    for (int it = 0; it < 50; ++it) {
      FFElem a = k->element(pick(rng)), b = k->element(pick(rng));
      CHECK(ff_frobenius(a + b, 1) == ff_frobenius(a, 1) + ff_frobenius(b, 1));
      CHECK(ff_frobenius(a * b, 1) == ff_frobenius(a, 1) * ff_frobenius(b, 1));
      FFElem it_a = a;
      for (int i = 0; i < n; ++i)
        it_a = ff_frobenius(it_a, 1);
      CHECK(it_a == a);
    }
  }
}

TEST_CASE("norm and trace") {
  auto f4 = FiniteField::make(2, 2);
  for (std::int64_t i = 1; i < 4; ++i)
    CHECK(ff_norm_trace(f4->element(i), 1).norm.is_one());
  CHECK(ff_norm_trace(f4->zero(), 1).trace.is_zero());

  auto f9 = FiniteField::make(3, 2);
  // generators of F_9^x map to generators of F_3^x (= {2}); brute force over all units
  std::set<std::int64_t> norms;
  for (std::int64_t i = 1; i < 9; ++i) {
    FFElem a = f9->element(i);
    FFElem nrm = ff_norm_trace(a, 1).norm;
    CHECK(nrm == brute_pow(a, 4));
    norms.insert(f9->index_of(nrm));
    if (brute_order(a) == 8)
      CHECK(nrm == f9->from_int(2));
  }
  CHECK(norms == std::set<std::int64_t>{1, 2});  // surjective onto F_3^x

  try {
    ff_norm_trace(f9->one(), 3);
    FAIL("expected DegreeError");
  } catch (const Error &e) {
    CHECK(e.kind() == ErrorKind::DegreeError);
  }
}

TEST_CASE("Hilbert 90 solver") {
  auto f4 = FiniteField::make(2, 2);
  CHECK(ff_solve_hilbert90(f4->one(), 1).is_one());
  CHECK(ff_solve_hilbert90(f4->gen(), 1) == f4->gen());

  auto f9 = FiniteField::make(3, 2);
  for (std::int64_t i = 1; i < 9; ++i) {
    FFElem c = f9->element(i);
    bool admissible = brute_pow(c, 4).is_one();
    if (admissible) {
      FFElem x = ff_solve_hilbert90(c, 1);
      CHECK(brute_pow(x, 2) == c);
      // smallest solution in enumeration order
      for (std::int64_t j = 1; j < f9->index_of(x); ++j)
        CHECK_FALSE(brute_pow(f9->element(j), 2) == c);
    } else {
      CHECK_THROWS_AS(ff_solve_hilbert90(c, 1), Error);
    }
  }
}

TEST_CASE("Hilbert 90 round trip") {
  std::mt19937_64 rng(11);
  for (auto [p, n, d] : {std::tuple{2, 4, 1}, {2, 4, 2}, {3, 3, 1}, {3, 4, 2}, {5, 2, 1}}) {
    auto k = FiniteField::make(p, n);
    std::uniform_int_distribution<std::int64_t> pick(1, k->order() - 1);
    std::int64_t expo = ipow(p, d) - 1;
    for (int it = 0; it < 20; ++it) {
      FFElem x = k->element(pick(rng));
      FFElem c = ff_pow(x, expo);
      FFElem y = ff_solve_hilbert90(c, d);
      CHECK(ff_pow(y, expo) == c);
    }
  }
}

TEST_CASE("Artin-Schreier solver") {
  auto f4 = FiniteField::make(2, 2);
  CHECK(ff_solve_artin_schreier(f4->zero(), 1).is_zero());
  FFElem y = ff_solve_artin_schreier(f4->one(), 1);
  CHECK(y == f4->gen());
  FFElem y1 = y + f4->one();
  CHECK(ff_frobenius(y1, 1) - y1 == f4->one());

  auto f8 = FiniteField::make(2, 3);
  for (std::int64_t i = 0; i < 8; ++i) {
    FFElem b = f8->element(i);
    if (ff_norm_trace(b, 1).trace.is_zero()) {
      FFElem s = ff_solve_artin_schreier(b, 1);
      CHECK(ff_frobenius(s, 1) - s == b);
    } else {
      try {
        ff_solve_artin_schreier(b, 1);
        FAIL("expected TraceConditionViolated");
      } catch (const Error &e) {
        CHECK(e.kind() == ErrorKind::TraceConditionViolated);
      }
    }
  }
}

TEST_CASE("discrete log") {
  auto f4 = FiniteField::make(2, 2);
  FFElem g = f4->gen();
  CHECK(ff_dlog(f4->one(), g) == 0);
  CHECK(ff_dlog(g, g) == 1);
  CHECK(ff_dlog(f4->from_coords(std::vector<std::int64_t>{1, 1}), g) == 2);

  auto k = FiniteField::make(3, 4);
  FFElem gen = k->gen();
  for (std::int64_t i = 1; i < k->order(); i += 7) {
    FFElem x = k->element(i);
    CHECK(ff_pow(gen, ff_dlog(x, gen)) == x);
  }
  try {
    ff_dlog(gen, ff_pow(gen, 2));
    FAIL("expected NotAGenerator");
  } catch (const Error &e) {
    CHECK(e.kind() == ErrorKind::NotAGenerator);
  }
  try {
    ff_dlog(k->zero(), gen);
    FAIL("expected ZeroArgument");
  } catch (const Error &e) {
    CHECK(e.kind() == ErrorKind::ZeroArgument);
  }
}
