#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>

#include "krullforge/krull.hpp"

namespace krullforge {

/// Exact rational coefficients.
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
  if (den == 0) throw std::invalid_argument("make_rational: zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline bool field_is_zero(const Rational& x) { return sgn(x) == 0; }

inline Rational field_inv(const Rational& x) {
  if (field_is_zero(x)) throw std::invalid_argument("field_inv: zero has no inverse");
  return 1 / x;
}

inline std::string field_str(const Rational& x) { return x.get_str(); }

namespace detail {

constexpr bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t f = 2; f * f <= n; ++f)
    if (n % f == 0) return false;
  return true;
}

}  // namespace detail

/// Prime-field coefficients with a compile-time modulus.
template <std::uint64_t Modulus>
struct Fp {
  static_assert(detail::is_prime_u64(Modulus), "Fp modulus must be prime");
  static_assert(Modulus < (1ULL << 31), "Fp modulus must fit comfortably in 64-bit products");

  std::uint64_t v = 0;

  Fp() = default;
  Fp(long x) {  // NOLINT(google-explicit-constructor): integer literals are coefficients
    const long m = static_cast<long>(Modulus);
    long r = x % m;
    if (r < 0) r += m;
    v = static_cast<std::uint64_t>(r);
  }

  friend Fp operator+(Fp a, Fp b) { return from_raw((a.v + b.v) % Modulus); }
  friend Fp operator-(Fp a, Fp b) { return from_raw((a.v + Modulus - b.v) % Modulus); }
  friend Fp operator*(Fp a, Fp b) { return from_raw((a.v * b.v) % Modulus); }
  friend Fp operator-(Fp a) { return from_raw(a.v == 0 ? 0 : Modulus - a.v); }
  Fp& operator+=(Fp o) { return *this = *this + o; }
  Fp& operator*=(Fp o) { return *this = *this * o; }
  bool operator==(const Fp&) const = default;

  static Fp from_raw(std::uint64_t r) {
    Fp x;
    x.v = r;
    return x;
  }
};

template <std::uint64_t M>
bool field_is_zero(const Fp<M>& x) {
  return x.v == 0;
}

template <std::uint64_t M>
Fp<M> field_inv(const Fp<M>& x) {
  if (x.v == 0) throw std::invalid_argument("field_inv: zero has no inverse");
  // exponent M-2 by square and multiply
  std::uint64_t base = x.v, e = M - 2, acc = 1;
  while (e) {
    if (e & 1) acc = acc * base % M;
    base = base * base % M;
    e >>= 1;
  }
  return Fp<M>::from_raw(acc);
}

template <std::uint64_t M>
std::string field_str(const Fp<M>& x) {
  return std::to_string(x.v) + " mod " + std::to_string(M);
}

/// Element of the group algebra K[G] for G the quotient group of the
/// monoid: a finite map from class-sum-zero free-abelian elements to
/// nonzero coefficients. Terms are keyed by the group order, so the
/// minimal and maximal support elements are the ends of the map.
template <class F, class P, class Less = std::less<P>>
class GroupAlgebraElem {
 public:
  using Field = F;
  using Term = FreeAbelian<P, Less>;

  struct TermLess {
    bool operator()(const Term& a, const Term& b) const {
      return lex_compare(a, b) == Ordering::LT;
    }
  };
  using Map = std::map<Term, F, TermLess>;

  GroupAlgebraElem() = default;

  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  const Map& terms() const { return terms_; }

  /// Units of the group algebra are homogeneous, so a one-term element is a
  /// unit candidate.
  bool is_single_term() const { return terms_.size() == 1; }

  void add_term(Term g, F c) {
    if (field_is_zero(c)) return;
    const auto it = terms_.find(g);
    if (it == terms_.end()) {
      terms_.emplace(std::move(g), std::move(c));
    } else {
      it->second = it->second + c;
      if (field_is_zero(it->second)) terms_.erase(it);
    }
  }

  bool operator==(const GroupAlgebraElem& o) const { return terms_ == o.terms_; }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [g, c] : terms_) {
      if (!s.empty()) s += " + ";
      s += field_str(c) + "*" + g.to_string();
    }
    return s;
  }

 private:
  Map terms_;
};

template <class F, class P, class Less>
GroupAlgebraElem<F, P, Less> ga_add(const GroupAlgebraElem<F, P, Less>& f,
                                    const GroupAlgebraElem<F, P, Less>& g) {
  GroupAlgebraElem<F, P, Less> h = f;
  for (const auto& [t, c] : g.terms()) h.add_term(t, c);
  return h;
}

template <class F, class P, class Less>
GroupAlgebraElem<F, P, Less> ga_neg(const GroupAlgebraElem<F, P, Less>& f) {
  GroupAlgebraElem<F, P, Less> h;
  for (const auto& [t, c] : f.terms()) h.add_term(t, -c);
  return h;
}

template <class F, class P, class Less>
GroupAlgebraElem<F, P, Less> ga_sub(const GroupAlgebraElem<F, P, Less>& f,
                                    const GroupAlgebraElem<F, P, Less>& g) {
  return ga_add(f, ga_neg(g));
}

/// Convolution product: the coefficient of c is the sum of f(a)g(b) over
/// ab = c.
template <class F, class P, class Less>
GroupAlgebraElem<F, P, Less> ga_mul(const GroupAlgebraElem<F, P, Less>& f,
                                    const GroupAlgebraElem<F, P, Less>& g) {
  GroupAlgebraElem<F, P, Less> h;
  for (const auto& [a, ca] : f.terms())
    for (const auto& [b, cb] : g.terms()) h.add_term(fa_mul(a, b), ca * cb);
  return h;
}

template <class F, class P, class Less>
GroupAlgebraElem<F, P, Less> ga_scale(const F& c, const GroupAlgebraElem<F, P, Less>& f) {
  GroupAlgebraElem<F, P, Less> h;
  for (const auto& [t, ct] : f.terms()) h.add_term(t, c * ct);
  return h;
}

/// The group algebra K[G] over the quotient group of a presented Krull
/// monoid, together with the extension of the monoid automorphism. The
/// coefficient automorphism defaults to the identity; an exact-field
/// automorphism pair (map, inverse) may be supplied for coefficient rings
/// with symmetry.
template <class F, class P, class Less = std::less<P>>
struct GroupAlgebra {
  using Field = F;
  using Elem = GroupAlgebraElem<F, P, Less>;
  using Term = FreeAbelian<P, Less>;

  KrullMonoidSpec<P, Less> spec;
  std::function<F(const F&)> coeff_map;      // empty = identity
  std::function<F(const F&)> coeff_map_inv;  // empty = identity

  explicit GroupAlgebra(KrullMonoidSpec<P, Less> s) : spec(std::move(s)) {}

  Elem zero() const { return Elem{}; }

  Elem one() const { return monomial(Term::unit(), F(1)); }

  /// Single term c*g; g must be a quotient-group element (class sum zero).
  Elem monomial(Term g, F c) const {
    if (!spec.class_group.is_zero(class_sum(spec, g)))
      throw std::invalid_argument("GroupAlgebra::monomial: support has nonzero class sum");
    Elem e;
    e.add_term(std::move(g), std::move(c));
    return e;
  }

  /// The extension of tau (support relabeling) and the coefficient map:
  /// a ring automorphism.
  Elem phi(const Elem& f) const {
    Elem out;
    for (const auto& [g, c] : f.terms())
      out.add_term(tau_star(spec, g), coeff_map ? coeff_map(c) : c);
    return out;
  }

  Elem phi_inv(const Elem& f) const {
    Elem out;
    for (const auto& [g, c] : f.terms())
      out.add_term(tau_star_inv(spec, g), coeff_map_inv ? coeff_map_inv(c) : c);
    return out;
  }

  Elem phi_pow(const Elem& f, long n) const {
    Elem out = f;
    for (long i = 0; i < n; ++i) out = phi(out);
    for (long i = 0; i > n; --i) out = phi_inv(out);
    return out;
  }

  /// The unique generator of f's principal ideal of the form 1 + f' with
  /// strictly positive support: divide by the unit (coefficient * minimal
  /// support element).
  Elem normed_generator(const Elem& f) const {
    if (f.is_zero())
      throw std::invalid_argument("GroupAlgebra::normed_generator: zero element");
    const auto& [g0, c0] = *f.terms().begin();
    const F inv = field_inv(c0);
    const Term g0_inv = fa_inv(g0);
    Elem out;
    for (const auto& [g, c] : f.terms()) out.add_term(fa_mul(g, g0_inv), inv * c);
    return out;
  }

  /// True iff phi moves the principal ideal of f, decided by comparing
  /// normed generators. Rejects zero and units (single terms).
  bool principal_ideal_moved(const Elem& f) const {
    if (f.is_zero())
      throw std::invalid_argument("GroupAlgebra::principal_ideal_moved: zero element");
    if (f.is_single_term())
      throw std::invalid_argument("GroupAlgebra::principal_ideal_moved: unit element");
    return !(normed_generator(phi(f)) == normed_generator(f));
  }
};

}  // namespace krullforge
