#pragma once

#include <functional>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "krullforge/abelian.hpp"
#include "krullforge/freeab.hpp"
#include "krullforge/rng.hpp"

namespace krullforge {

/// A Krull monoid presented by a divisor theory: the prime-divisor basis P
/// is identified with the divisorial prime ideals, ideal arithmetic is
/// free-abelian arithmetic on P, and the monoid itself is the kernel of the
/// class map. All callables must be pure; specs are freely copyable and
/// shareable.
///
/// enumerate(count, seed) samples `count` pairwise distinct basis indices.
/// primes_in_class(g, count, seed) samples distinct indices with class g;
/// it backs class-surjectivity checks, witness construction and tallies.
template <class P, class Less = std::less<P>>
struct KrullMonoidSpec {
  using Basis = P;
  using BasisLess = Less;
  using Elem = FreeAbelian<P, Less>;

  FGAbelianGroup class_group;
  std::function<GroupElem(const P&)> cls;
  std::function<P(const P&)> tau;
  std::function<P(const P&)> tau_inv;
  std::function<std::vector<P>(std::size_t count, std::uint64_t seed)> enumerate;
  std::function<std::vector<P>(const GroupElem& cls, std::size_t count, std::uint64_t seed)>
      primes_in_class;
};

/// Divisorial fractional ideals in coordinates on the prime basis:
/// nonnegative exponents = integral ideals, arbitrary exponents = fractional.
template <class P, class Less = std::less<P>>
using Divisor = FreeAbelian<P, Less>;

/// Class of a divisor: the class-group sum of its primes with multiplicity.
template <class P, class Less>
GroupElem class_sum(const KrullMonoidSpec<P, Less>& spec, const FreeAbelian<P, Less>& a) {
  GroupElem s = spec.class_group.zero();
  for (const auto& [p, n] : a.exponents())
    s = spec.class_group.add(s, spec.class_group.scale(n, spec.cls(p)));
  return s;
}

/// Membership in the monoid: integral (all exponents >= 0) with trivial
/// class sum.
template <class P, class Less>
bool is_member(const KrullMonoidSpec<P, Less>& spec, const FreeAbelian<P, Less>& a) {
  return fa_is_nonnegative(a) && spec.class_group.is_zero(class_sum(spec, a));
}

/// Divisorial ideal generated by a finite set of quotient-group elements:
/// the gcd of the generators' divisor coordinates.
template <class P, class Less>
Divisor<P, Less> v_ideal_of(const KrullMonoidSpec<P, Less>& spec,
                            const std::vector<FreeAbelian<P, Less>>& gens) {
  if (gens.empty()) throw std::invalid_argument("v_ideal_of: empty generating set");
  for (const auto& x : gens)
    if (!spec.class_group.is_zero(class_sum(spec, x)))
      throw std::invalid_argument("v_ideal_of: generator has nonzero class sum");
  Divisor<P, Less> d = gens.front();
  for (std::size_t i = 1; i < gens.size(); ++i) d = fa_gcd(d, gens[i]);
  return d;
}

/// Divisorial product: exponent addition.
template <class P, class Less>
Divisor<P, Less> v_product(const Divisor<P, Less>& a, const Divisor<P, Less>& b) {
  return fa_mul(a, b);
}

template <class P, class Less>
GroupElem ideal_class(const KrullMonoidSpec<P, Less>& spec, const Divisor<P, Less>& a) {
  return class_sum(spec, a);
}

/// Automorphism action on divisors: relabel each prime by tau.
template <class P, class Less>
Divisor<P, Less> tau_star(const KrullMonoidSpec<P, Less>& spec, const Divisor<P, Less>& a) {
  Divisor<P, Less> b;
  for (const auto& [p, n] : a.exponents()) b.mul_prime(spec.tau(p), n);
  return b;
}

template <class P, class Less>
Divisor<P, Less> tau_star_inv(const KrullMonoidSpec<P, Less>& spec, const Divisor<P, Less>& a) {
  Divisor<P, Less> b;
  for (const auto& [p, n] : a.exponents()) b.mul_prime(spec.tau_inv(p), n);
  return b;
}

enum class Stability { Equal, Moved, ProperContainment };

inline const char* to_string(Stability s) {
  switch (s) {
    case Stability::Equal: return "Equal";
    case Stability::Moved: return "Moved";
    default: return "ProperContainment";
  }
}

template <class P, class Less = std::less<P>>
struct StabilityResult {
  Stability kind = Stability::Equal;
  Divisor<P, Less> image;  // tau_star of the input, the witness on containment
};

/// Classify (a, tau_star(a)) under divisorial containment. Containment of
/// ideals is reverse divisibility of divisors, so strict containment in
/// either direction means one divisor properly divides the other. For a
/// Krull monoid automorphism this can never happen (exponent sums are
/// preserved); ProperContainment is kept as the falsification channel.
template <class P, class Less>
StabilityResult<P, Less> stability_check(const KrullMonoidSpec<P, Less>& spec,
                                         const Divisor<P, Less>& a) {
  Divisor<P, Less> image = tau_star(spec, a);
  if (image == a) return {Stability::Equal, std::move(image)};
  if (fa_divides(a, image) || fa_divides(image, a))
    return {Stability::ProperContainment, std::move(image)};
  return {Stability::Moved, std::move(image)};
}

/// Least n in [1, N] with tau^n(p) = p, if any.
template <class P, class Less>
std::optional<long> finite_orbit_up_to(const KrullMonoidSpec<P, Less>& spec, const P& p, long n_max) {
  if (n_max < 1) throw std::invalid_argument("finite_orbit_up_to: bound must be >= 1");
  P q = spec.tau(p);
  for (long n = 1; n <= n_max; ++n) {
    if (q == p) return n;
    q = spec.tau(q);
  }
  return std::nullopt;
}

/// True iff the image of X under tau equals X as a set.
template <class P, class Less>
bool fixed_prime_set_check(const KrullMonoidSpec<P, Less>& spec, const std::vector<P>& x) {
  if (x.empty()) throw std::invalid_argument("fixed_prime_set_check: empty set");
  std::set<P, Less> original(x.begin(), x.end());
  std::set<P, Less> image;
  for (const P& p : original) image.insert(spec.tau(p));
  return original == image;
}

/// The tau-orbit of p truncated at the first return or at `cap` steps.
template <class P, class Less>
std::vector<P> orbit_of(const KrullMonoidSpec<P, Less>& spec, const P& p, long cap) {
  std::vector<P> orbit{p};
  P q = spec.tau(p);
  for (long n = 1; n < cap && !(q == p); ++n) {
    orbit.push_back(q);
    q = spec.tau(q);
  }
  return orbit;
}

// ---------------------------------------------------------------------------
// Seeded samplers shared by the verification suites. All draw through the
// caller's SplitRng, so a fixed seed reproduces the exact sample sequence.

/// Random divisor supported on the pool, 1..max_terms primes, nonzero
/// exponents in [-max_exp, max_exp].
template <class P, class Less>
Divisor<P, Less> random_divisor(const std::vector<P>& pool, SplitRng& rng, int max_terms = 4,
                                long max_exp = 4) {
  Divisor<P, Less> d;
  const long k = rng.next_i64(1, max_terms);
  for (long i = 0; i < k; ++i) {
    long e = rng.next_i64(-max_exp, max_exp);
    if (e == 0) e = 1;
    d.mul_prime(pool[rng.next_index(pool.size())], e);
  }
  return d;
}

/// Random monoid member: a random integral element compensated to class sum
/// zero by one prime drawn from the matching class.
template <class P, class Less>
FreeAbelian<P, Less> random_member(const KrullMonoidSpec<P, Less>& spec, const std::vector<P>& pool,
                                   SplitRng& rng, int max_terms = 3, long max_exp = 3) {
  FreeAbelian<P, Less> e;
  const long k = rng.next_i64(0, max_terms);
  for (long i = 0; i < k; ++i)
    e.mul_prime(pool[rng.next_index(pool.size())], rng.next_i64(1, max_exp));
  const GroupElem s = class_sum(spec, e);
  if (!spec.class_group.is_zero(s)) {
    const auto comp = spec.primes_in_class(spec.class_group.neg(s), 1, rng.next_u64());
    if (comp.empty()) throw std::runtime_error("random_member: no compensating prime");
    e.mul_prime(comp.front(), 1);
  }
  return e;
}

/// Random quotient-group element (class sum zero, arbitrary exponents).
template <class P, class Less>
FreeAbelian<P, Less> random_quotient_elem(const KrullMonoidSpec<P, Less>& spec,
                                          const std::vector<P>& pool, SplitRng& rng,
                                          int max_terms = 3, long max_exp = 3) {
  FreeAbelian<P, Less> e;
  const long k = rng.next_i64(0, max_terms);
  for (long i = 0; i < k; ++i) {
    long x = rng.next_i64(-max_exp, max_exp);
    if (x == 0) x = 1;
    e.mul_prime(pool[rng.next_index(pool.size())], x);
  }
  const GroupElem s = class_sum(spec, e);
  if (!spec.class_group.is_zero(s)) {
    const auto comp = spec.primes_in_class(spec.class_group.neg(s), 1, rng.next_u64());
    if (comp.empty()) throw std::runtime_error("random_quotient_elem: no compensating prime");
    e.mul_prime(comp.front(), 1);
  }
  return e;
}

/// Structural invariants of a spec, checked at sample scale: tau and
/// tau_inv are mutually inverse, tau preserves classes, enumerate returns
/// pairwise distinct indices, and every sampled class is hit by a prime.
template <class P, class Less>
std::optional<std::string> check_spec_invariants(const KrullMonoidSpec<P, Less>& spec,
                                                 std::size_t samples, std::uint64_t seed) {
  const std::vector<P> pool = spec.enumerate(samples, seed);
  if (pool.size() != samples) return "enumerate returned short sample";
  std::set<P, Less> distinct(pool.begin(), pool.end());
  if (distinct.size() != pool.size()) return "enumerate returned duplicate indices";
  for (const P& p : pool) {
    if (!(spec.tau_inv(spec.tau(p)) == p)) return "tau_inv(tau(p)) != p";
    if (!(spec.tau(spec.tau_inv(p)) == p)) return "tau(tau_inv(p)) != p";
    if (!(spec.cls(spec.tau(p)) == spec.cls(p))) return "tau does not preserve classes";
  }
  SplitRng rng = SplitRng(seed).split(0x5e17);
  const std::size_t class_samples = std::min<std::size_t>(samples, 25);
  for (std::size_t i = 0; i < class_samples; ++i) {
    const GroupElem g = spec.class_group.random_elem(rng);
    const auto hits = spec.primes_in_class(g, 1, rng.next_u64());
    if (hits.empty()) return "class " + to_string(g) + " not hit by any prime";
    if (!(spec.cls(hits.front()) == g)) return "primes_in_class returned wrong class";
  }
  return std::nullopt;
}

}  // namespace krullforge
