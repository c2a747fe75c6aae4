#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <vector>

#include "krullforge/freeab.hpp"
#include "krullforge/rng.hpp"

using namespace krullforge;

namespace {

using FA = FreeAbelian<char>;

FA elem(std::initializer_list<std::pair<char, long>> terms) {
  FA a;
  for (const auto& [p, n] : terms) a.mul_prime(p, n);
  return a;
}

FA random_elem(SplitRng& rng, int max_primes = 4, long max_exp = 4) {
  FA a;
  const int k = static_cast<int>(rng.next_i64(0, max_primes));
  for (int i = 0; i < k; ++i) {
    const char p = static_cast<char>('a' + rng.next_i64(0, 5));
    long e = rng.next_i64(-max_exp, max_exp);
    a.mul_prime(p, e);
  }
  return a;
}

// Brute force: all common divisors of a and b over a bounding exponent box,
// then the divisibility-maximum among them.
std::vector<FA> common_divisors_in_box(const FA& a, const FA& b) {
  std::vector<char> supp;
  for (const auto& [p, n] : a.exponents()) supp.push_back(p);
  for (const auto& [p, n] : b.exponents())
    if (a.val(p) == 0) supp.push_back(p);

  std::vector<long> lo(supp.size()), hi(supp.size());
  for (std::size_t i = 0; i < supp.size(); ++i) {
    const long va = a.val(supp[i]).get_si();
    const long vb = b.val(supp[i]).get_si();
    lo[i] = std::min({va, vb, 0L}) - 1;
    hi[i] = std::max({va, vb, 0L}) + 1;
  }
  std::vector<FA> out;
  std::vector<long> e = lo;
  for (;;) {
    FA c;
    for (std::size_t i = 0; i < supp.size(); ++i) c.mul_prime(supp[i], e[i]);
    if (fa_divides(c, a) && fa_divides(c, b)) out.push_back(c);
    std::size_t i = 0;
    while (i < supp.size()) {
      if (++e[i] <= hi[i]) break;
      e[i] = lo[i];
      ++i;
    }
    if (i == supp.size()) break;
  }
  return out;
}

FA brute_force_gcd(const FA& a, const FA& b) {
  const std::vector<FA> divs = common_divisors_in_box(a, b);
  REQUIRE(!divs.empty());
  const FA* best = &divs.front();
  for (const FA& d : divs)
    if (fa_divides(*best, d) && !(d == *best)) best = &d;
  // verify it is the maximum: every common divisor divides it
  for (const FA& d : divs) CHECK(fa_divides(d, *best));
  return *best;
}

}  // namespace

TEST_CASE("multiplication and inverse") {
  const FA p = FA::prime('p');
  CHECK(fa_mul(p, fa_inv(p)) == FA::unit());
  CHECK(fa_mul(p, fa_inv(p)).is_unit());
  CHECK(fa_mul(elem({{'p', 2}, {'q', 1}}), fa_inv(p)) == elem({{'p', 1}, {'q', 1}}));
  CHECK(fa_inv(elem({{'p', 3}, {'q', -2}})) == elem({{'p', -3}, {'q', 2}}));
  CHECK(fa_pow(elem({{'p', 2}}), Int(3)) == elem({{'p', 6}}));
}

TEST_CASE("gcd") {
  const FA a = elem({{'p', 2}, {'q', 1}});
  CHECK(fa_gcd(a, a) == a);
  CHECK(fa_gcd(a, elem({{'p', 1}, {'r', 1}})) == elem({{'p', 1}}));
  // negative exponents: min over the union of supports
  const FA x = elem({{'p', -1}, {'q', 2}});
  const FA y = elem({{'q', 1}});
  CHECK(fa_gcd(x, y) == elem({{'p', -1}, {'q', 1}}));
  CHECK(fa_gcd(x, y) == brute_force_gcd(x, y));
}

TEST_CASE("gcd matches the brute-force divisibility maximum on random pairs") {
  SplitRng rng(99);
  for (int i = 0; i < 60; ++i) {
    const FA a = random_elem(rng, 3, 2);
    const FA b = random_elem(rng, 3, 2);
    CHECK(fa_gcd(a, b) == brute_force_gcd(a, b));
  }
}

TEST_CASE("divides, supp, val") {
  const FA a = elem({{'p', 2}, {'q', -1}});
  CHECK(fa_val(a, 'q') == -1);
  CHECK(fa_val(a, 'r') == 0);  // off-support valuation vanishes
  CHECK(fa_divides(FA::prime('p'), elem({{'p', 2}, {'q', 1}})));
  CHECK(!fa_divides(elem({{'p', 3}}), elem({{'p', 2}, {'q', 1}})));
  CHECK(fa_divides(elem({{'p', -1}}), FA::unit()));
  CHECK(!fa_divides(FA::unit(), elem({{'p', -1}})));
  CHECK(fa_supp(a).size() == 2);
}

TEST_CASE("lex order: sign at the maximal support element") {
  const FA a = elem({{'p', -3}, {'q', 1}});  // max supp q, val 1 > 0
  CHECK(lex_compare(a, a) == Ordering::EQ);
  CHECK(lex_positive(a));
  const FA b = elem({{'p', 2}, {'q', -1}});  // max supp q, val -1
  CHECK(lex_compare(b, FA::unit()) == Ordering::LT);
  CHECK(lex_compare(a, b) == Ordering::GT);
}

TEST_CASE("group axioms on 1000 random triples") {
  SplitRng rng(2024);
  for (int i = 0; i < 1000; ++i) {
    const FA a = random_elem(rng);
    const FA b = random_elem(rng);
    const FA c = random_elem(rng);
    CHECK(fa_mul(fa_mul(a, b), c) == fa_mul(a, fa_mul(b, c)));
    CHECK(fa_mul(a, b) == fa_mul(b, a));
    CHECK(fa_mul(a, FA::unit()) == a);
    CHECK(fa_mul(a, fa_inv(a)).is_unit());
  }
}

TEST_CASE("gcd is the divisibility infimum on random data") {
  SplitRng rng(555);
  for (int i = 0; i < 300; ++i) {
    const FA a = random_elem(rng);
    const FA b = random_elem(rng);
    const FA g = fa_gcd(a, b);
    CHECK(fa_divides(g, a));
    CHECK(fa_divides(g, b));
    // build a random common divisor c <= g and check c | g
    FA c;
    for (const auto& [p, n] : g.exponents()) c.mul_prime(p, n - rng.next_i64(0, 2));
    CHECK(fa_divides(c, a));
    CHECK(fa_divides(c, b));
    CHECK(fa_divides(c, g));
  }
}

TEST_CASE("lex order is a translation-invariant strict total order") {
  SplitRng rng(808);
  for (int i = 0; i < 1000; ++i) {
    const FA a = random_elem(rng);
    const FA b = random_elem(rng);
    const FA c = random_elem(rng);
    // trichotomy + antisymmetry
    const Ordering ab = lex_compare(a, b);
    CHECK(lex_compare(b, a) == opposite(ab));
    if (ab == Ordering::EQ) CHECK(a == b);
    // transitivity
    if (lex_compare(a, b) != Ordering::GT && lex_compare(b, c) != Ordering::GT)
      CHECK(lex_compare(a, c) != Ordering::GT);
    // translation invariance
    CHECK(lex_compare(fa_mul(c, a), fa_mul(c, b)) == ab);
  }
}

TEST_CASE("positivity cone is closed under multiplication") {
  SplitRng rng(31);
  int hits = 0;
  for (int i = 0; i < 2000; ++i) {
    const FA a = random_elem(rng);
    const FA b = random_elem(rng);
    if (lex_positive(a) && lex_positive(b)) {
      ++hits;
      CHECK(lex_positive(fa_mul(a, b)));
    }
  }
  CHECK(hits > 100);
}
