#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace krullforge {

/// Arbitrary-precision integer. Every group, matrix and exponent value in
/// this library is exact; machine integers appear only as indices, shifts
/// and sample counts.
using Int = mpz_class;

enum class Ordering { LT, EQ, GT };

inline Ordering ordering_of(int cmp) {
  return cmp < 0 ? Ordering::LT : (cmp > 0 ? Ordering::GT : Ordering::EQ);
}

inline Ordering opposite(Ordering o) {
  return o == Ordering::LT ? Ordering::GT : (o == Ordering::GT ? Ordering::LT : Ordering::EQ);
}

inline const char* to_string(Ordering o) {
  switch (o) {
    case Ordering::LT: return "LT";
    case Ordering::EQ: return "EQ";
    default: return "GT";
  }
}

inline Ordering compare_int(const Int& a, const Int& b) { return ordering_of(cmp(a, b)); }

/// Dense row-major integer matrix. The surface is intentionally small:
/// exactly what normal forms and homomorphism plumbing need.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  static IntMatrix diagonal(const std::vector<Int>& d) {
    IntMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m.at(i, i) = d[i];
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Int& at(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
  const Int& at(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

  bool operator==(const IntMatrix&) const = default;

  bool is_diagonal() const {
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c)
        if (r != c && at(r, c) != 0) return false;
    return true;
  }

  std::vector<Int> apply(const std::vector<Int>& x) const {
    if (x.size() != cols_) throw std::invalid_argument("IntMatrix::apply: size mismatch");
    std::vector<Int> y(rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) y[r] += at(r, c) * x[c];
    return y;
  }

  friend IntMatrix operator*(const IntMatrix& x, const IntMatrix& y) {
    if (x.cols_ != y.rows_) throw std::invalid_argument("IntMatrix: size mismatch in product");
    IntMatrix z(x.rows_, y.cols_);
    for (std::size_t r = 0; r < x.rows_; ++r)
      for (std::size_t k = 0; k < x.cols_; ++k) {
        if (x.at(r, k) == 0) continue;
        for (std::size_t c = 0; c < y.cols_; ++c) z.at(r, c) += x.at(r, k) * y.at(k, c);
      }
    return z;
  }

  friend IntMatrix operator-(const IntMatrix& x, const IntMatrix& y) {
    if (x.rows_ != y.rows_ || x.cols_ != y.cols_)
      throw std::invalid_argument("IntMatrix: size mismatch in difference");
    IntMatrix z(x.rows_, x.cols_);
    for (std::size_t i = 0; i < z.a_.size(); ++i) z.a_[i] = x.a_[i] - y.a_[i];
    return z;
  }

  friend IntMatrix operator-(const IntMatrix& x) {
    IntMatrix z(x.rows_, x.cols_);
    for (std::size_t i = 0; i < z.a_.size(); ++i) z.a_[i] = -x.a_[i];
    return z;
  }

  std::string to_string() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t r = 0; r < rows_; ++r) {
      os << (r ? "; " : "");
      for (std::size_t c = 0; c < cols_; ++c) os << (c ? " " : "") << at(r, c).get_str();
    }
    os << "]";
    return os.str();
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Int> a_;
};

}  // namespace krullforge
