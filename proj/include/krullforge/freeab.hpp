#pragma once

#include <map>
#include <sstream>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "krullforge/ints.hpp"

namespace krullforge {

namespace detail {

template <class T>
concept HasToString = requires(const T& t) {
  { to_string(t) } -> std::convertible_to<std::string>;
};

template <class T>
std::string describe(const T& v) {
  if constexpr (HasToString<T>) {
    return to_string(v);
  } else if constexpr (std::is_same_v<T, char>) {
    return std::string(1, v);
  } else if constexpr (std::is_arithmetic_v<T>) {
    return std::to_string(v);
  } else {
    std::ostringstream os;
    os << v;
    return os.str();
  }
}

}  // namespace detail

/// Element of the free abelian group on an ordered basis: a finite map
/// basis index -> nonzero exponent. The canonical form never stores zero
/// exponents, so structural equality is group equality. The map comparator
/// is the base order, which makes max-support lookups trivial.
template <class P, class Less = std::less<P>>
class FreeAbelian {
 public:
  using Basis = P;
  using Map = std::map<P, Int, Less>;

  FreeAbelian() = default;

  static FreeAbelian unit() { return {}; }

  static FreeAbelian prime(P p, Int n = 1) {
    FreeAbelian a;
    a.mul_prime(std::move(p), std::move(n));
    return a;
  }

  bool is_unit() const { return exp_.empty(); }

  Int val(const P& p) const {
    const auto it = exp_.find(p);
    return it == exp_.end() ? Int(0) : it->second;
  }

  const Map& exponents() const { return exp_; }

  std::vector<P> support() const {
    std::vector<P> s;
    s.reserve(exp_.size());
    for (const auto& [p, n] : exp_) s.push_back(p);
    return s;
  }

  std::size_t support_size() const { return exp_.size(); }

  /// Multiply by p^n in place, keeping the canonical form.
  void mul_prime(P p, Int n) {
    if (n == 0) return;
    const auto [it, inserted] = exp_.emplace(std::move(p), n);
    if (!inserted) {
      it->second += n;
      if (it->second == 0) exp_.erase(it);
    }
  }

  bool operator==(const FreeAbelian& o) const { return exp_ == o.exp_; }

  std::string to_string() const {
    if (exp_.empty()) return "1";
    std::string s;
    for (const auto& [p, n] : exp_) {
      if (!s.empty()) s += "*";
      s += detail::describe(p);
      if (n != 1) s += "^" + n.get_str();
    }
    return s;
  }

 private:
  Map exp_;
};

template <class P, class Less>
FreeAbelian<P, Less> fa_mul(const FreeAbelian<P, Less>& a, const FreeAbelian<P, Less>& b) {
  FreeAbelian<P, Less> c = a;
  for (const auto& [p, n] : b.exponents()) c.mul_prime(p, n);
  return c;
}

template <class P, class Less>
FreeAbelian<P, Less> fa_inv(const FreeAbelian<P, Less>& a) {
  FreeAbelian<P, Less> c;
  for (const auto& [p, n] : a.exponents()) c.mul_prime(p, -n);
  return c;
}

template <class P, class Less>
FreeAbelian<P, Less> fa_div(const FreeAbelian<P, Less>& a, const FreeAbelian<P, Less>& b) {
  return fa_mul(a, fa_inv(b));
}

template <class P, class Less>
FreeAbelian<P, Less> fa_pow(const FreeAbelian<P, Less>& a, const Int& n) {
  FreeAbelian<P, Less> c;
  for (const auto& [p, e] : a.exponents()) c.mul_prime(p, e * n);
  return c;
}

/// Exponent-wise minimum over the union of supports: the infimum in the
/// divisibility order of the free abelian group.
template <class P, class Less>
FreeAbelian<P, Less> fa_gcd(const FreeAbelian<P, Less>& a, const FreeAbelian<P, Less>& b) {
  FreeAbelian<P, Less> c;
  for (const auto& [p, n] : a.exponents()) {
    const Int m = b.val(p);
    c.mul_prime(p, n < m ? n : m);
  }
  for (const auto& [p, m] : b.exponents())
    if (a.val(p) == 0 && m < 0) c.mul_prime(p, m);
  return c;
}

/// a divides b iff val_p(a) <= val_p(b) for every p.
template <class P, class Less>
bool fa_divides(const FreeAbelian<P, Less>& a, const FreeAbelian<P, Less>& b) {
  for (const auto& [p, n] : a.exponents())
    if (n > b.val(p)) return false;
  for (const auto& [p, m] : b.exponents())
    if (m < 0 && a.val(p) == 0) return false;
  return true;
}

template <class P, class Less>
std::vector<P> fa_supp(const FreeAbelian<P, Less>& a) {
  return a.support();
}

template <class P, class Less>
Int fa_val(const FreeAbelian<P, Less>& a, const P& p) {
  return a.val(p);
}

template <class P, class Less>
bool fa_is_nonnegative(const FreeAbelian<P, Less>& a) {
  for (const auto& [p, n] : a.exponents())
    if (n < 0) return false;
  return true;
}

/// Lexicographic group order induced by the base order: a > 1 iff the
/// exponent at max supp(a) is positive; compare(a, b) is the sign of
/// a * b^{-1}. A translation-invariant strict total order.
template <class P, class Less>
Ordering lex_compare(const FreeAbelian<P, Less>& a, const FreeAbelian<P, Less>& b) {
  Less less{};
  auto ia = a.exponents().rbegin();
  auto ib = b.exponents().rbegin();
  const auto ea = a.exponents().rend();
  const auto eb = b.exponents().rend();
  while (ia != ea || ib != eb) {
    if (ib == eb || (ia != ea && less(ib->first, ia->first))) {
      // largest remaining index lives only in a
      return ia->second > 0 ? Ordering::GT : Ordering::LT;
    }
    if (ia == ea || less(ia->first, ib->first)) {
      return ib->second > 0 ? Ordering::LT : Ordering::GT;
    }
    // same index
    const int c = cmp(ia->second, ib->second);
    if (c != 0) return ordering_of(c);
    ++ia;
    ++ib;
  }
  return Ordering::EQ;
}

template <class P, class Less>
bool lex_positive(const FreeAbelian<P, Less>& a) {
  return lex_compare(a, FreeAbelian<P, Less>::unit()) == Ordering::GT;
}

template <class P, class Less>
FreeAbelian<P, Less> operator*(const FreeAbelian<P, Less>& a, const FreeAbelian<P, Less>& b) {
  return fa_mul(a, b);
}

}  // namespace krullforge
