#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "krullforge/ints.hpp"
#include "krullforge/rng.hpp"

namespace krullforge {

/// Element of a finitely generated abelian group Z^r x Z/d_1 x ... x Z/d_k,
/// stored on the canonical generating set: free coordinates first, torsion
/// coordinates reduced into [0, d_i).
struct GroupElem {
  std::vector<Int> free_part;
  std::vector<Int> torsion_part;

  bool operator==(const GroupElem&) const = default;
};

/// Deterministic coordinate order on elements of one group: free part
/// lexicographically, then torsion part. Used wherever a fixed total order
/// on group elements is needed (orbit ordering, map keys).
inline Ordering compare_coords(const GroupElem& a, const GroupElem& b) {
  if (a.free_part.size() != b.free_part.size() || a.torsion_part.size() != b.torsion_part.size())
    throw std::invalid_argument("compare_coords: elements of different groups");
  for (std::size_t i = 0; i < a.free_part.size(); ++i) {
    const int c = cmp(a.free_part[i], b.free_part[i]);
    if (c != 0) return ordering_of(c);
  }
  for (std::size_t i = 0; i < a.torsion_part.size(); ++i) {
    const int c = cmp(a.torsion_part[i], b.torsion_part[i]);
    if (c != 0) return ordering_of(c);
  }
  return Ordering::EQ;
}

inline std::string to_string(const GroupElem& g) {
  std::string s = "[";
  for (std::size_t i = 0; i < g.free_part.size(); ++i)
    s += (i ? "," : "") + g.free_part[i].get_str();
  s += "|";
  for (std::size_t i = 0; i < g.torsion_part.size(); ++i)
    s += (i ? "," : "") + g.torsion_part[i].get_str();
  return s + "]";
}

struct SmithNormalForm {
  IntMatrix u;      // unimodular, rows x rows
  IntMatrix s;      // diagonal, nonnegative, divisibility chain
  IntMatrix v;      // unimodular, cols x cols
  IntMatrix u_inv;  // exact inverse of u, maintained alongside
};

namespace detail {

// Working state for the reduction: keeps a = u * m * v and u_inv = u^{-1}
// exact under every elementary operation.
struct SnfWork {
  IntMatrix a, u, u_inv, v;

  void row_swap(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < a.cols(); ++c) swap(a.at(i, c), a.at(j, c));
    for (std::size_t c = 0; c < u.cols(); ++c) swap(u.at(i, c), u.at(j, c));
    for (std::size_t r = 0; r < u_inv.rows(); ++r) swap(u_inv.at(r, i), u_inv.at(r, j));
  }

  void row_negate(std::size_t i) {
    for (std::size_t c = 0; c < a.cols(); ++c) a.at(i, c) = -a.at(i, c);
    for (std::size_t c = 0; c < u.cols(); ++c) u.at(i, c) = -u.at(i, c);
    for (std::size_t r = 0; r < u_inv.rows(); ++r) u_inv.at(r, i) = -u_inv.at(r, i);
  }

  // row_dst += c * row_src
  void row_addmul(std::size_t dst, std::size_t src, const Int& c) {
    for (std::size_t k = 0; k < a.cols(); ++k) a.at(dst, k) += c * a.at(src, k);
    for (std::size_t k = 0; k < u.cols(); ++k) u.at(dst, k) += c * u.at(src, k);
    for (std::size_t r = 0; r < u_inv.rows(); ++r) u_inv.at(r, src) -= c * u_inv.at(r, dst);
  }

  void col_swap(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r = 0; r < a.rows(); ++r) swap(a.at(r, i), a.at(r, j));
    for (std::size_t r = 0; r < v.rows(); ++r) swap(v.at(r, i), v.at(r, j));
  }

  // col_dst += c * col_src
  void col_addmul(std::size_t dst, std::size_t src, const Int& c) {
    for (std::size_t r = 0; r < a.rows(); ++r) a.at(r, dst) += c * a.at(r, src);
    for (std::size_t r = 0; r < v.rows(); ++r) v.at(r, dst) += c * v.at(r, src);
  }

  // Unimodular transform of rows (t, r) replacing a(t,c) by gcd(a(t,c), a(r,c))
  // and zeroing a(r,c).
  void rows_gcd_combine(std::size_t t, std::size_t r, std::size_t c) {
    Int g, p, q;
    mpz_gcdext(g.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t(), a.at(t, c).get_mpz_t(),
               a.at(r, c).get_mpz_t());
    const Int as = a.at(t, c) / g;
    const Int bs = a.at(r, c) / g;
    auto combine_rows = [&](IntMatrix& m) {
      for (std::size_t k = 0; k < m.cols(); ++k) {
        const Int x = m.at(t, k), y = m.at(r, k);
        m.at(t, k) = p * x + q * y;
        m.at(r, k) = as * y - bs * x;
      }
    };
    combine_rows(a);
    combine_rows(u);
    for (std::size_t i = 0; i < u_inv.rows(); ++i) {
      const Int x = u_inv.at(i, t), y = u_inv.at(i, r);
      u_inv.at(i, t) = as * x + bs * y;
      u_inv.at(i, r) = p * y - q * x;
    }
  }

  // Same transform on columns (t, c), pivot row r.
  void cols_gcd_combine(std::size_t t, std::size_t c, std::size_t r) {
    Int g, p, q;
    mpz_gcdext(g.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t(), a.at(r, t).get_mpz_t(),
               a.at(r, c).get_mpz_t());
    const Int as = a.at(r, t) / g;
    const Int bs = a.at(r, c) / g;
    auto combine_cols = [&](IntMatrix& m) {
      for (std::size_t k = 0; k < m.rows(); ++k) {
        const Int x = m.at(k, t), y = m.at(k, c);
        m.at(k, t) = p * x + q * y;
        m.at(k, c) = as * y - bs * x;
      }
    };
    combine_cols(a);
    combine_cols(v);
  }
};

}  // namespace detail

/// Smith normal form over Z: returns unimodular u, v and diagonal s with
/// u * m * v = s, nonnegative diagonal, and s(i,i) | s(i+1,i+1).
/// Total on rectangular matrices, including empty ones.
inline SmithNormalForm smith_normal_form(const IntMatrix& m) {
  const std::size_t R = m.rows(), C = m.cols();
  detail::SnfWork w{m, IntMatrix::identity(R), IntMatrix::identity(R), IntMatrix::identity(C)};

  const std::size_t N = std::min(R, C);
  for (std::size_t t = 0; t < N; ++t) {
    // pick the absolutely smallest nonzero entry of the trailing block
    std::size_t pi = t, pj = t;
    bool found = false;
    Int best;
    for (std::size_t r = t; r < R; ++r)
      for (std::size_t c = t; c < C; ++c) {
        if (w.a.at(r, c) == 0) continue;
        Int v = abs(w.a.at(r, c));
        if (!found || v < best) {
          found = true;
          best = std::move(v);
          pi = r;
          pj = c;
        }
      }
    if (!found) break;
    w.row_swap(t, pi);
    w.col_swap(t, pj);

    for (;;) {
      // plain elimination where the pivot divides; gcd transform otherwise
      // (the latter strictly shrinks the pivot, so the loop terminates)
      for (std::size_t r = t + 1; r < R; ++r) {
        if (w.a.at(r, t) == 0) continue;
        if (w.a.at(r, t) % w.a.at(t, t) == 0)
          w.row_addmul(r, t, -Int(w.a.at(r, t) / w.a.at(t, t)));
        else
          w.rows_gcd_combine(t, r, t);
      }
      for (std::size_t c = t + 1; c < C; ++c) {
        if (w.a.at(t, c) == 0) continue;
        if (w.a.at(t, c) % w.a.at(t, t) == 0)
          w.col_addmul(c, t, -Int(w.a.at(t, c) / w.a.at(t, t)));
        else
          w.cols_gcd_combine(t, c, t);
      }

      bool clear = true;
      for (std::size_t r = t + 1; r < R && clear; ++r) clear = w.a.at(r, t) == 0;
      for (std::size_t c = t + 1; c < C && clear; ++c) clear = w.a.at(t, c) == 0;
      if (!clear) continue;  // column ops reintroduced entries below the pivot

      // divisibility chain: pivot must divide the whole trailing block
      bool divides = true;
      for (std::size_t r = t + 1; r < R && divides; ++r)
        for (std::size_t c = t + 1; c < C && divides; ++c)
          if (w.a.at(r, c) % w.a.at(t, t) != 0) {
            w.row_addmul(t, r, 1);
            divides = false;
          }
      if (divides) break;
    }
    if (w.a.at(t, t) < 0) w.row_negate(t);
  }
  return {std::move(w.u), std::move(w.a), std::move(w.v), std::move(w.u_inv)};
}

/// Finitely generated abelian group in invariant-factor form: free rank plus
/// a divisibility chain d_1 | d_2 | ... | d_k with every d_i >= 2.
/// Construction normalizes arbitrary factor lists (CRT merge via Smith
/// normal form, factors 1 dropped), so equal groups compare equal.
class FGAbelianGroup {
 public:
  FGAbelianGroup() = default;

  FGAbelianGroup(std::size_t free_rank, std::vector<Int> torsion) : free_rank_(free_rank) {
    for (const Int& d : torsion)
      if (d < 1) throw std::invalid_argument("FGAbelianGroup: torsion factor must be positive");
    std::erase_if(torsion, [](const Int& d) { return d == 1; });
    if (!torsion.empty()) {
      const SmithNormalForm snf = smith_normal_form(IntMatrix::diagonal(torsion));
      torsion_.clear();
      for (std::size_t i = 0; i < torsion.size(); ++i)
        if (snf.s.at(i, i) >= 2) torsion_.push_back(snf.s.at(i, i));
    }
  }

  static FGAbelianGroup trivial() { return FGAbelianGroup(); }
  static FGAbelianGroup free(std::size_t rank) { return FGAbelianGroup(rank, {}); }

  std::size_t free_rank() const { return free_rank_; }
  const std::vector<Int>& torsion() const { return torsion_; }
  std::size_t torsion_rank() const { return torsion_.size(); }
  std::size_t gen_count() const { return free_rank_ + torsion_.size(); }
  bool is_trivial() const { return free_rank_ == 0 && torsion_.empty(); }

  /// Group order; empty when infinite.
  std::optional<Int> order() const {
    if (free_rank_ > 0) return std::nullopt;
    Int n = 1;
    for (const Int& d : torsion_) n *= d;
    return n;
  }

  bool operator==(const FGAbelianGroup&) const = default;

  GroupElem zero() const {
    return GroupElem{std::vector<Int>(free_rank_), std::vector<Int>(torsion_.size())};
  }

  bool contains(const GroupElem& g) const {
    if (g.free_part.size() != free_rank_ || g.torsion_part.size() != torsion_.size()) return false;
    for (std::size_t i = 0; i < torsion_.size(); ++i)
      if (g.torsion_part[i] < 0 || g.torsion_part[i] >= torsion_[i]) return false;
    return true;
  }

  /// Build an element from raw coordinates (free then torsion), reducing
  /// torsion entries mod d_i.
  GroupElem from_coords(const std::vector<Int>& coords) const {
    if (coords.size() != gen_count())
      throw std::invalid_argument("FGAbelianGroup::from_coords: wrong coordinate count");
    GroupElem g;
    g.free_part.assign(coords.begin(), coords.begin() + static_cast<long>(free_rank_));
    g.torsion_part.resize(torsion_.size());
    for (std::size_t i = 0; i < torsion_.size(); ++i)
      mpz_mod(g.torsion_part[i].get_mpz_t(), coords[free_rank_ + i].get_mpz_t(),
              torsion_[i].get_mpz_t());
    return g;
  }

  GroupElem elem(std::vector<Int> free_part, std::vector<Int> torsion_part) const {
    std::vector<Int> coords = std::move(free_part);
    coords.insert(coords.end(), torsion_part.begin(), torsion_part.end());
    return from_coords(coords);
  }

  std::vector<Int> coords(const GroupElem& g) const {
    require(g, "coords");
    std::vector<Int> c = g.free_part;
    c.insert(c.end(), g.torsion_part.begin(), g.torsion_part.end());
    return c;
  }

  GroupElem add(const GroupElem& a, const GroupElem& b) const {
    require(a, "add");
    require(b, "add");
    GroupElem g = zero();
    for (std::size_t i = 0; i < free_rank_; ++i) g.free_part[i] = a.free_part[i] + b.free_part[i];
    for (std::size_t i = 0; i < torsion_.size(); ++i) {
      Int t = a.torsion_part[i] + b.torsion_part[i];
      if (t >= torsion_[i]) t -= torsion_[i];
      g.torsion_part[i] = std::move(t);
    }
    return g;
  }

  GroupElem neg(const GroupElem& a) const {
    require(a, "neg");
    GroupElem g = zero();
    for (std::size_t i = 0; i < free_rank_; ++i) g.free_part[i] = -a.free_part[i];
    for (std::size_t i = 0; i < torsion_.size(); ++i)
      g.torsion_part[i] = a.torsion_part[i] == 0 ? Int(0) : Int(torsion_[i] - a.torsion_part[i]);
    return g;
  }

  GroupElem sub(const GroupElem& a, const GroupElem& b) const { return add(a, neg(b)); }

  GroupElem scale(const Int& n, const GroupElem& a) const {
    require(a, "scale");
    GroupElem g = zero();
    for (std::size_t i = 0; i < free_rank_; ++i) g.free_part[i] = n * a.free_part[i];
    for (std::size_t i = 0; i < torsion_.size(); ++i)
      mpz_mod(g.torsion_part[i].get_mpz_t(), Int(n * a.torsion_part[i]).get_mpz_t(),
              torsion_[i].get_mpz_t());
    return g;
  }

  bool is_zero(const GroupElem& a) const {
    require(a, "is_zero");
    for (const Int& x : a.free_part)
      if (x != 0) return false;
    for (const Int& x : a.torsion_part)
      if (x != 0) return false;
    return true;
  }

  /// Deterministic sampling: free coordinates uniform in [-free_bound,
  /// free_bound], torsion coordinates uniform mod d_i.
  GroupElem random_elem(SplitRng& rng, long free_bound = 9) const {
    GroupElem g = zero();
    for (std::size_t i = 0; i < free_rank_; ++i) g.free_part[i] = rng.next_i64(-free_bound, free_bound);
    for (std::size_t i = 0; i < torsion_.size(); ++i)
      g.torsion_part[i] = rng.next_int(0, torsion_[i] - 1);
    return g;
  }

  GroupElem random_elem(std::uint64_t seed, long free_bound = 9) const {
    SplitRng rng(seed);
    return random_elem(rng, free_bound);
  }

  std::string to_string() const {
    if (is_trivial()) return "0";
    std::string s;
    if (free_rank_ == 1) s = "Z";
    else if (free_rank_ > 1) s = "Z^" + std::to_string(free_rank_);
    for (const Int& d : torsion_) {
      if (!s.empty()) s += " x ";
      s += "Z/" + d.get_str();
    }
    return s;
  }

 private:
  void require(const GroupElem& g, const char* op) const {
    if (!contains(g))
      throw std::invalid_argument(std::string("FGAbelianGroup::") + op +
                                  ": element does not belong to this group");
  }

  std::size_t free_rank_ = 0;
  std::vector<Int> torsion_;
};

/// Homomorphism between finitely generated abelian groups, stored as an
/// integer matrix on the canonical generating sets (free generators first).
/// Construction verifies that every source relation maps into the relation
/// lattice of the target, i.e. that the matrix defines a homomorphism.
class GroupHom {
 public:
  GroupHom(FGAbelianGroup source, FGAbelianGroup target, IntMatrix matrix)
      : source_(std::move(source)), target_(std::move(target)), m_(std::move(matrix)) {
    if (m_.rows() != target_.gen_count() || m_.cols() != source_.gen_count())
      throw std::invalid_argument("GroupHom: matrix shape does not match generating sets");
    const std::size_t sf = source_.free_rank();
    const std::size_t tf = target_.free_rank();
    for (std::size_t j = 0; j < source_.torsion_rank(); ++j) {
      const Int& dj = source_.torsion()[j];
      for (std::size_t i = 0; i < tf; ++i)
        if (m_.at(i, sf + j) != 0)
          throw std::invalid_argument("GroupHom: torsion generator mapped outside target relations");
      for (std::size_t i = 0; i < target_.torsion_rank(); ++i)
        if ((dj * m_.at(tf + i, sf + j)) % target_.torsion()[i] != 0)
          throw std::invalid_argument("GroupHom: torsion relation not respected");
    }
  }

  static GroupHom identity(const FGAbelianGroup& g) {
    return GroupHom(g, g, IntMatrix::identity(g.gen_count()));
  }

  static GroupHom zero(const FGAbelianGroup& source, const FGAbelianGroup& target) {
    return GroupHom(source, target, IntMatrix(target.gen_count(), source.gen_count()));
  }

  /// Multiplication by n as an endomorphism.
  static GroupHom scalar(const FGAbelianGroup& g, const Int& n) {
    IntMatrix m(g.gen_count(), g.gen_count());
    for (std::size_t i = 0; i < g.gen_count(); ++i) m.at(i, i) = n;
    return GroupHom(g, g, m);
  }

  const FGAbelianGroup& source() const { return source_; }
  const FGAbelianGroup& target() const { return target_; }
  const IntMatrix& matrix() const { return m_; }

  GroupElem apply(const GroupElem& x) const {
    return target_.from_coords(m_.apply(source_.coords(x)));
  }

  bool is_endomorphism() const { return source_ == target_; }

  friend GroupHom compose(const GroupHom& outer, const GroupHom& inner) {
    if (inner.target_ != outer.source_)
      throw std::invalid_argument("compose: middle groups do not match");
    return GroupHom(inner.source_, outer.target_, outer.m_ * inner.m_);
  }

 private:
  FGAbelianGroup source_;
  FGAbelianGroup target_;
  IntMatrix m_;
};

struct CokernelResult {
  FGAbelianGroup group;
  GroupHom projection;  // target(f) ->> group; kills exactly image(f)
  IntMatrix section;    // coordinate lift: column j is a preimage of generator j
};

/// Cokernel target(f)/image(f) in invariant-factor form, with the canonical
/// projection. Computed from the Smith normal form of [matrix(f) | relations
/// of target(f)].
inline CokernelResult cokernel(const GroupHom& f) {
  const FGAbelianGroup& tgt = f.target();
  const std::size_t n = tgt.gen_count();
  const std::size_t m = f.source().gen_count();
  const std::size_t k = tgt.torsion_rank();

  IntMatrix c(n, m + k);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t j = 0; j < m; ++j) c.at(r, j) = f.matrix().at(r, j);
  for (std::size_t i = 0; i < k; ++i) c.at(tgt.free_rank() + i, m + i) = tgt.torsion()[i];

  const SmithNormalForm snf = smith_normal_form(c);
  std::vector<Int> diag(n);
  for (std::size_t i = 0; i < n && i < m + k; ++i) diag[i] = snf.s.at(i, i);

  std::vector<std::size_t> free_rows, torsion_rows;
  std::vector<Int> factors;
  for (std::size_t i = 0; i < n; ++i) {
    if (diag[i] == 0) {
      free_rows.push_back(i);
    } else if (diag[i] >= 2) {
      torsion_rows.push_back(i);
      factors.push_back(diag[i]);
    }
  }

  FGAbelianGroup q(free_rows.size(), factors);
  std::vector<std::size_t> rows = free_rows;
  rows.insert(rows.end(), torsion_rows.begin(), torsion_rows.end());

  IntMatrix p(rows.size(), n);
  IntMatrix section(n, rows.size());
  for (std::size_t j = 0; j < rows.size(); ++j) {
    for (std::size_t cidx = 0; cidx < n; ++cidx) p.at(j, cidx) = snf.u.at(rows[j], cidx);
    for (std::size_t r = 0; r < n; ++r) section.at(r, j) = snf.u_inv.at(r, rows[j]);
  }
  return CokernelResult{q, GroupHom(tgt, q, p), section};
}

/// Parse a group spec: "0" or terms "Z", "Z^<int>=1>", "Z/<int>=2>" joined
/// by "x". Examples: "Z/2", "Z^2 x Z/4", "Z/2 x Z/3" (normalizes to Z/6).
inline FGAbelianGroup parse_group(const std::string& spec) {
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return std::string();
    const auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
  };
  auto fail = [&](const std::string& why) -> void {
    throw std::invalid_argument("parse_group: " + why + " in \"" + spec + "\"");
  };
  auto parse_uint = [&](const std::string& digits) {
    if (digits.empty()) fail("missing integer");
    for (char ch : digits)
      if (ch < '0' || ch > '9') fail("malformed integer \"" + digits + "\"");
    return Int(digits);
  };

  const std::string whole = trim(spec);
  if (whole.empty()) fail("empty spec");
  if (whole == "0") return FGAbelianGroup::trivial();

  std::size_t free_rank = 0;
  std::vector<Int> torsion;
  std::size_t pos = 0;
  while (pos <= whole.size()) {
    const std::size_t next = whole.find('x', pos);
    const std::string term =
        trim(next == std::string::npos ? whole.substr(pos) : whole.substr(pos, next - pos));
    if (term.empty()) fail("empty term");
    if (term[0] != 'Z') fail("term must start with Z");
    if (term.size() == 1) {
      free_rank += 1;
    } else if (term[1] == '^') {
      const Int k = parse_uint(term.substr(2));
      if (k < 1) fail("rank must be >= 1");
      if (!k.fits_ulong_p()) fail("rank out of range");
      free_rank += k.get_ui();
    } else if (term[1] == '/') {
      const Int d = parse_uint(term.substr(2));
      if (d < 2) fail("modulus must be >= 2");
      torsion.push_back(d);
    } else {
      fail("malformed term \"" + term + "\"");
    }
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  return FGAbelianGroup(free_rank, torsion);
}

}  // namespace krullforge
