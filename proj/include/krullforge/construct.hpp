#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "krullforge/krull.hpp"

namespace krullforge {

/// Prime-divisor index of the realization: orbit slot i, shift n, class g.
/// The basis is {(i, n, g) : 0 <= i < orbit_count, n in Z, g in G}; the
/// automorphism shifts n and fixes (i, g), so orbits are the shift lines.
struct PrimeIndex {
  std::uint32_t orbit = 0;
  std::int64_t shift = 0;
  GroupElem cls;

  bool operator==(const PrimeIndex&) const = default;
};

/// Total order on the basis: orbit lines first (slot, then the class in
/// canonical coordinate order), then the shift inside the line. The shift
/// automorphism strictly increases this order and preserves it.
inline Ordering orbit_order_compare(const PrimeIndex& p, const PrimeIndex& q) {
  if (p.orbit != q.orbit) return p.orbit < q.orbit ? Ordering::LT : Ordering::GT;
  const Ordering c = compare_coords(p.cls, q.cls);
  if (c != Ordering::EQ) return c;
  if (p.shift != q.shift) return p.shift < q.shift ? Ordering::LT : Ordering::GT;
  return Ordering::EQ;
}

struct PrimeIndexLess {
  bool operator()(const PrimeIndex& p, const PrimeIndex& q) const {
    return orbit_order_compare(p, q) == Ordering::LT;
  }
};

inline std::string to_string(const PrimeIndex& p) {
  return "(" + std::to_string(p.orbit) + "," + std::to_string(p.shift) + "," + to_string(p.cls) +
         ")";
}

using PrimeBasisSpec = KrullMonoidSpec<PrimeIndex, PrimeIndexLess>;
using PrimeDivisor = FreeAbelian<PrimeIndex, PrimeIndexLess>;

struct RealizationParams {
  FGAbelianGroup group;
  std::size_t orbit_count = 1;
};

namespace detail {

// Distinct-index sampler over the full basis: random slot, shift and class.
// Shifts widen progressively in the (astronomically unlikely) event of
// repeated collisions, so the draw always completes.
inline std::vector<PrimeIndex> sample_basis(const FGAbelianGroup& group, std::size_t orbit_count,
                                            std::size_t count, std::uint64_t seed,
                                            std::int64_t shift_lo, std::int64_t shift_hi) {
  SplitRng rng(seed);
  std::set<PrimeIndex, PrimeIndexLess> seen;
  std::vector<PrimeIndex> out;
  std::int64_t lo = shift_lo, hi = shift_hi;
  std::size_t attempts = 0;
  while (out.size() < count) {
    PrimeIndex p;
    p.orbit = static_cast<std::uint32_t>(rng.next_index(orbit_count));
    p.shift = rng.next_i64(lo, hi);
    p.cls = group.random_elem(rng);
    if (seen.insert(p).second) out.push_back(p);
    if (++attempts > 64 * (out.size() + 1)) {
      lo *= 2;
      hi = hi * 2 + 1;
      attempts = 0;
    }
  }
  return out;
}

inline std::vector<PrimeIndex> sample_class(const FGAbelianGroup& group, std::size_t orbit_count,
                                            const GroupElem& g, std::size_t count,
                                            std::uint64_t seed, std::int64_t shift_lo,
                                            std::int64_t shift_hi) {
  if (!group.contains(g))
    throw std::invalid_argument("primes_in_class: element does not belong to the class group");
  SplitRng rng(seed);
  std::set<PrimeIndex, PrimeIndexLess> seen;
  std::vector<PrimeIndex> out;
  std::int64_t lo = shift_lo, hi = shift_hi;
  std::size_t attempts = 0;
  while (out.size() < count) {
    PrimeIndex p;
    p.orbit = static_cast<std::uint32_t>(out.size() % orbit_count);
    p.shift = rng.next_i64(lo, hi);
    p.cls = g;
    if (seen.insert(p).second) out.push_back(p);
    if (++attempts > 64 * (out.size() + 1)) {
      lo *= 2;
      hi = hi * 2 + 1;
      attempts = 0;
    }
  }
  return out;
}

}  // namespace detail

/// The realization: class group = params.group, cls((i,n,g)) = g,
/// tau((i,n,g)) = (i,n+1,g). The shift has no finite orbits and acts
/// trivially on classes, and cls is surjective by construction.
inline PrimeBasisSpec build_realization(const RealizationParams& params) {
  if (params.orbit_count < 1)
    throw std::invalid_argument("build_realization: orbit_count must be >= 1");
  const FGAbelianGroup group = params.group;
  const std::size_t orbits = params.orbit_count;

  PrimeBasisSpec spec;
  spec.class_group = group;
  spec.cls = [](const PrimeIndex& p) { return p.cls; };
  spec.tau = [](const PrimeIndex& p) {
    return PrimeIndex{p.orbit, p.shift + 1, p.cls};
  };
  spec.tau_inv = [](const PrimeIndex& p) {
    return PrimeIndex{p.orbit, p.shift - 1, p.cls};
  };
  spec.enumerate = [group, orbits](std::size_t count, std::uint64_t seed) {
    return detail::sample_basis(group, orbits, count, seed, -100, 100);
  };
  spec.primes_in_class = [group, orbits](const GroupElem& g, std::size_t count,
                                         std::uint64_t seed) {
    return detail::sample_class(group, orbits, g, count, seed, -1000, 1000);
  };
  return spec;
}

/// Adversarial controls for the falsification channels of the suites.
enum class Adversarial { none, identity, cycle };

inline const char* to_string(Adversarial a) {
  switch (a) {
    case Adversarial::none: return "none";
    case Adversarial::identity: return "identity";
    default: return "cycle";
  }
}

/// Same basis and class map as the realization, but tau is the identity
/// (mode identity) or a k-cycle on the shift window [0, k) and the identity
/// off the window (mode cycle). enumerate samples inside the window so the
/// finite orbits are visible to every check.
inline PrimeBasisSpec build_adversarial(const RealizationParams& params, Adversarial mode,
                                        std::int64_t cycle_len = 2) {
  if (mode == Adversarial::none) return build_realization(params);
  if (mode == Adversarial::cycle && cycle_len < 1)
    throw std::invalid_argument("build_adversarial: cycle length must be >= 1");
  PrimeBasisSpec spec = build_realization(params);
  const FGAbelianGroup group = params.group;
  const std::size_t orbits = params.orbit_count;

  if (mode == Adversarial::identity) {
    spec.tau = [](const PrimeIndex& p) { return p; };
    spec.tau_inv = spec.tau;
    return spec;
  }

  const std::int64_t k = cycle_len;
  spec.tau = [k](const PrimeIndex& p) {
    if (p.shift < 0 || p.shift >= k) return p;
    return PrimeIndex{p.orbit, (p.shift + 1) % k, p.cls};
  };
  spec.tau_inv = [k](const PrimeIndex& p) {
    if (p.shift < 0 || p.shift >= k) return p;
    return PrimeIndex{p.orbit, (p.shift + k - 1) % k, p.cls};
  };
  spec.enumerate = [group, orbits, k](std::size_t count, std::uint64_t seed) {
    return detail::sample_basis(group, orbits, count, seed, 0, k - 1);
  };
  return spec;
}

/// Order on the quotient group of the monoid: the lexicographic order under
/// the orbit order, restricted to class-sum-zero elements. Members sit in
/// the nonnegative cone and tau strictly increases positives.
template <class P, class Less>
Ordering quotient_order_compare(const KrullMonoidSpec<P, Less>& spec,
                                const FreeAbelian<P, Less>& a, const FreeAbelian<P, Less>& b) {
  if (!spec.class_group.is_zero(class_sum(spec, a)) ||
      !spec.class_group.is_zero(class_sum(spec, b)))
    throw std::invalid_argument("quotient_order_compare: operand has nonzero class sum");
  return lex_compare(a, b);
}

template <class P, class Less = std::less<P>>
struct DivisorTheoryWitness {
  P prime;
  FreeAbelian<P, Less> h1, h2;
};

template <class P, class Less = std::less<P>>
struct DivisorTheoryReport {
  bool pass = true;
  std::vector<DivisorTheoryWitness<P, Less>> witnesses;
  std::string failure;
};

/// Sample-scale witness that the inclusion into the free monoid is a divisor
/// theory: every sampled prime is the gcd of two monoid members. Witnesses
/// are p*q and p*q' with q, q' distinct primes compensating the class of p.
template <class P, class Less>
DivisorTheoryReport<P, Less> verify_divisor_theory(const KrullMonoidSpec<P, Less>& spec,
                                                   std::size_t sample_count, std::uint64_t seed) {
  if (sample_count < 1)
    throw std::invalid_argument("verify_divisor_theory: sample_count must be >= 1");
  DivisorTheoryReport<P, Less> report;
  const std::vector<P> primes = spec.enumerate(sample_count, seed);
  SplitRng rng = SplitRng(seed).split(0xd1f0);
  for (const P& p : primes) {
    const GroupElem comp_class = spec.class_group.neg(spec.cls(p));
    const std::vector<P> comps = spec.primes_in_class(comp_class, 3, rng.next_u64());
    std::vector<P> usable;
    for (const P& q : comps)
      if (!(q == p)) usable.push_back(q);
    if (usable.size() < 2) {
      report.pass = false;
      report.failure = "no witness pair for prime " + detail::describe(p);
      return report;
    }
    DivisorTheoryWitness<P, Less> w;
    w.prime = p;
    w.h1 = fa_mul(FreeAbelian<P, Less>::prime(p), FreeAbelian<P, Less>::prime(usable[0]));
    w.h2 = fa_mul(FreeAbelian<P, Less>::prime(p), FreeAbelian<P, Less>::prime(usable[1]));
    const bool ok = is_member(spec, w.h1) && is_member(spec, w.h2) &&
                    fa_gcd(w.h1, w.h2) == FreeAbelian<P, Less>::prime(p);
    if (!ok) {
      report.pass = false;
      report.failure = "witness pair for prime " + detail::describe(p) + " has gcd != prime";
      return report;
    }
    report.witnesses.push_back(std::move(w));
  }
  return report;
}

}  // namespace krullforge
