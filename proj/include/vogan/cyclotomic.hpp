#pragma once

#include <array>
#include <sstream>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "vogan/errors.hpp"

namespace vogan {

using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

// Exact element of the cyclotomic field Q(zeta) with zeta a primitive 24th
// root of unity.  Coordinates are rationals over the power basis
// 1, zeta, ..., zeta^7, reduced modulo the 24th cyclotomic polynomial
// x^8 - x^4 + 1.  The field contains i = zeta^6, the primitive cube root
// zeta^8, sqrt(2) = zeta^3 + zeta^21 and sqrt(3) = zeta^2 + zeta^22, which
// covers every scalar the twisted realizations need.
class Cyclo {
 public:
  static constexpr int degree = 8;

  Cyclo() = default;
  Cyclo(int v) { c_[0] = v; }  // NOLINT: implicit by design
  Cyclo(const Rational& v) { c_[0] = v; }
  explicit Cyclo(std::array<Rational, degree> c) : c_(std::move(c)) {}

  static Cyclo zero() { return Cyclo(); }
  static Cyclo one() { return Cyclo(1); }

  // zeta^m for any integer m (m may be negative).
  static Cyclo zeta_pow(long m) {
    m %= 24;
    if (m < 0) m += 24;
    int sign = 1;
    if (m >= 12) {  // zeta^12 = -1
      m -= 12;
      sign = -1;
    }
    Cyclo r;
    if (m < degree) {
      r.c_[m] = sign;
      return r;
    }
    // zeta^8 = zeta^4 - 1 for the remaining exponents 8..11.
    std::array<Rational, 15> work{};
    work[m] = sign;
    reduce(work);
    for (int i = 0; i < degree; ++i) r.c_[i] = work[i];
    return r;
  }

  // Primitive n-th root of unity to the m-th power; n must divide 24.
  static Cyclo root_of_unity(int n, long m = 1) {
    if (n <= 0 || 24 % n != 0)
      throw UnsupportedType("root_of_unity: order must divide 24");
    return zeta_pow((24 / n) * m);
  }

  static Cyclo i() { return zeta_pow(6); }
  static Cyclo sqrt2() { return zeta_pow(3) + zeta_pow(-3); }
  static Cyclo sqrt3() { return zeta_pow(2) + zeta_pow(-2); }

  const Rational& coeff(int k) const { return c_[k]; }

  bool is_zero() const {
    for (const auto& v : c_)
      if (v != 0) return false;
    return true;
  }

  bool is_rational() const {
    for (int k = 1; k < degree; ++k)
      if (c_[k] != 0) return false;
    return true;
  }

  // Rational part; throws unless the value is rational.
  Rational as_rational() const {
    if (!is_rational()) throw ConventionMismatch("cyclotomic value is not rational");
    return c_[0];
  }

  Cyclo operator-() const {
    Cyclo r;
    for (int k = 0; k < degree; ++k) r.c_[k] = -c_[k];
    return r;
  }

  Cyclo& operator+=(const Cyclo& o) {
    for (int k = 0; k < degree; ++k) c_[k] += o.c_[k];
    return *this;
  }
  Cyclo& operator-=(const Cyclo& o) {
    for (int k = 0; k < degree; ++k) c_[k] -= o.c_[k];
    return *this;
  }
  Cyclo& operator*=(const Cyclo& o) {
    std::array<Rational, 15> work{};
    for (int a = 0; a < degree; ++a) {
      if (c_[a] == 0) continue;
      for (int b = 0; b < degree; ++b) {
        if (o.c_[b] == 0) continue;
        work[a + b] += c_[a] * o.c_[b];
      }
    }
    reduce(work);
    for (int k = 0; k < degree; ++k) c_[k] = work[k];
    return *this;
  }

  friend Cyclo operator+(Cyclo a, const Cyclo& b) { return a += b; }
  friend Cyclo operator-(Cyclo a, const Cyclo& b) { return a -= b; }
  friend Cyclo operator*(Cyclo a, const Cyclo& b) { return a *= b; }
  friend bool operator==(const Cyclo& a, const Cyclo& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Cyclo& a, const Cyclo& b) { return !(a == b); }

  // Field conjugation zeta -> zeta^{-1} (complex conjugation on the
  // standard embedding).
  Cyclo conj() const {
    Cyclo r;
    for (int k = 0; k < degree; ++k) {
      if (c_[k] == 0) continue;
      Cyclo t = zeta_pow(-k);
      for (int j = 0; j < degree; ++j) r.c_[j] += c_[k] * t.c_[j];
    }
    return r;
  }

  // Multiplicative inverse via an exact 8x8 solve against the
  // multiplication-by-*this matrix.
  Cyclo inverse() const {
    if (is_zero()) throw ConventionMismatch("division by zero in Q(zeta_24)");
    // Column j of m is (*this) * zeta^j.
    std::array<std::array<Rational, degree + 1>, degree> m{};
    for (int j = 0; j < degree; ++j) {
      Cyclo col = *this * zeta_pow(j);
      for (int r = 0; r < degree; ++r) m[r][j] = col.c_[r];
    }
    m[0][degree] = 1;  // target vector e_0
    for (int col = 0, row = 0; col < degree && row < degree; ++col) {
      int piv = -1;
      for (int r = row; r < degree; ++r)
        if (m[r][col] != 0) { piv = r; break; }
      if (piv < 0) continue;
      std::swap(m[piv], m[row]);
      Rational inv = m[row][col];
      for (int k = col; k <= degree; ++k) m[row][k] /= inv;
      for (int r = 0; r < degree; ++r) {
        if (r == row || m[r][col] == 0) continue;
        Rational f = m[r][col];
        for (int k = col; k <= degree; ++k) m[r][k] -= f * m[row][k];
      }
      ++row;
    }
    Cyclo r;
    for (int k = 0; k < degree; ++k) r.c_[k] = m[k][degree];
    return r;
  }

  Cyclo operator/(const Cyclo& o) const { return *this * o.inverse(); }

  std::string str() const {
    std::ostringstream os;
    bool first = true;
    for (int k = 0; k < degree; ++k) {
      if (c_[k] == 0) continue;
      if (!first) os << " + ";
      os << c_[k];
      if (k > 0) os << "*z^" << k;
      first = false;
    }
    if (first) os << "0";
    return os.str();
  }

 private:
  static void reduce(std::array<Rational, 15>& w) {
    for (int d = 14; d >= degree; --d) {
      if (w[d] == 0) continue;
      w[d - 4] += w[d];
      w[d - 8] -= w[d];
      w[d] = 0;
    }
  }

  std::array<Rational, degree> c_{};
};

}  // namespace vogan
