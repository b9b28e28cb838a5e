#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace skein {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/**
 * Sparse Laurent polynomial in the loop variable A with exact integer
 * coefficients.  Exponents may be negative; zero coefficients are never
 * stored.
 */
class LaurentPolynomial {
public:
  LaurentPolynomial() = default;

  static LaurentPolynomial from_int(const Int& c) {
    LaurentPolynomial p;
    if (c != 0) p.terms_[0] = c;
    return p;
  }

  /// c * A^k
  static LaurentPolynomial monomial(const Int& c, int k) {
    LaurentPolynomial p;
    if (c != 0) p.terms_[k] = c;
    return p;
  }

  /// A^k
  static LaurentPolynomial power_of_A(int k) { return monomial(1, k); }

  /// Value of a trivial loop: -A^2 - A^-2.
  static LaurentPolynomial loop_value() {
    LaurentPolynomial p;
    p.terms_[2] = -1;
    p.terms_[-2] = -1;
    return p;
  }

  bool is_zero() const { return terms_.empty(); }

  const std::map<int, Int>& terms() const { return terms_; }

  Int coefficient(int k) const {
    auto it = terms_.find(k);
    return it == terms_.end() ? Int(0) : it->second;
  }

  void add_term(int k, const Int& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(k, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  LaurentPolynomial& operator+=(const LaurentPolynomial& o) {
    for (const auto& [k, c] : o.terms_) add_term(k, c);
    return *this;
  }

  LaurentPolynomial& operator-=(const LaurentPolynomial& o) {
    for (const auto& [k, c] : o.terms_) add_term(k, -c);
    return *this;
  }

  friend LaurentPolynomial operator+(LaurentPolynomial a, const LaurentPolynomial& b) {
    a += b;
    return a;
  }

  friend LaurentPolynomial operator-(LaurentPolynomial a, const LaurentPolynomial& b) {
    a -= b;
    return a;
  }

  friend LaurentPolynomial operator-(const LaurentPolynomial& a) {
    LaurentPolynomial r;
    for (const auto& [k, c] : a.terms_) r.terms_[k] = -c;
    return r;
  }

  friend LaurentPolynomial operator*(const LaurentPolynomial& a, const LaurentPolynomial& b) {
    LaurentPolynomial r;
    for (const auto& [ka, ca] : a.terms_)
      for (const auto& [kb, cb] : b.terms_) r.add_term(ka + kb, ca * cb);
    return r;
  }

  LaurentPolynomial& operator*=(const LaurentPolynomial& o) {
    *this = *this * o;
    return *this;
  }

  friend bool operator==(const LaurentPolynomial& a, const LaurentPolynomial& b) {
    return a.terms_ == b.terms_;
  }

  LaurentPolynomial pow(int n) const {
    if (n < 0) throw std::invalid_argument("LaurentPolynomial::pow: negative exponent");
    LaurentPolynomial r = from_int(1);
    for (int i = 0; i < n; ++i) r *= *this;
    return r;
  }

  /// The image under A -> A^-1.
  LaurentPolynomial invert_variable() const {
    LaurentPolynomial r;
    for (const auto& [k, c] : terms_) r.terms_[-k] = c;
    return r;
  }

private:
  std::map<int, Int> terms_;
};

/// Valuation of a series known only modulo h^{N+1}.  When every stored
/// coefficient vanishes the valuation is only bounded below, never infinite.
struct SeriesValuation {
  bool exact = true;
  int value = 0;  // exact valuation, or lower bound N+1 when !exact

  friend bool operator==(const SeriesValuation&, const SeriesValuation&) = default;

  std::string to_string() const {
    return exact ? std::to_string(value) : ">= " + std::to_string(value);
  }
};

/**
 * Truncated power series in h over the exact rationals: an element of
 * Q[h]/(h^{N+1}).  All arithmetic is exact; operands must agree on the
 * truncation order N.
 */
class TruncatedSeries {
public:
  TruncatedSeries() : coeffs_(1) {}

  explicit TruncatedSeries(int order) : coeffs_(order + 1) {
    if (order < 0) throw std::invalid_argument("TruncatedSeries: negative order");
  }

  static TruncatedSeries from_rational(const Rational& c, int order) {
    TruncatedSeries s(order);
    s.coeffs_[0] = c;
    return s;
  }

  static TruncatedSeries monomial(const Rational& c, int power, int order) {
    TruncatedSeries s(order);
    if (power < 0) throw std::invalid_argument("TruncatedSeries::monomial: negative power");
    if (power <= order) s.coeffs_[power] = c;
    return s;
  }

  int order() const { return static_cast<int>(coeffs_.size()) - 1; }

  const Rational& operator[](int i) const { return coeffs_.at(i); }

  void set(int i, const Rational& c) { coeffs_.at(i) = c; }

  bool is_zero() const {
    for (const auto& c : coeffs_)
      if (c != 0) return false;
    return true;
  }

  SeriesValuation valuation() const {
    for (int i = 0; i <= order(); ++i)
      if (coeffs_[i] != 0) return {true, i};
    return {false, order() + 1};
  }

  TruncatedSeries& operator+=(const TruncatedSeries& o) {
    check_order(o);
    for (int i = 0; i <= order(); ++i) coeffs_[i] += o.coeffs_[i];
    return *this;
  }

  TruncatedSeries& operator-=(const TruncatedSeries& o) {
    check_order(o);
    for (int i = 0; i <= order(); ++i) coeffs_[i] -= o.coeffs_[i];
    return *this;
  }

  friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) {
    a += b;
    return a;
  }

  friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b) {
    a -= b;
    return a;
  }

  friend TruncatedSeries operator-(const TruncatedSeries& a) {
    TruncatedSeries r(a.order());
    for (int i = 0; i <= a.order(); ++i) r.coeffs_[i] = -a.coeffs_[i];
    return r;
  }

  friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
    a.check_order(b);
    TruncatedSeries r(a.order());
    for (int i = 0; i <= a.order(); ++i) {
      if (a.coeffs_[i] == 0) continue;
      for (int j = 0; i + j <= a.order(); ++j) {
        if (b.coeffs_[j] == 0) continue;
        r.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
      }
    }
    return r;
  }

  TruncatedSeries& operator*=(const TruncatedSeries& o) {
    *this = *this * o;
    return *this;
  }

  friend TruncatedSeries operator*(const Rational& c, const TruncatedSeries& a) {
    TruncatedSeries r(a.order());
    for (int i = 0; i <= a.order(); ++i) r.coeffs_[i] = c * a.coeffs_[i];
    return r;
  }

  friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
    return a.coeffs_ == b.coeffs_;
  }

  /// Exact division by h.  Requires vanishing constant term; the result is
  /// known one order lower.
  TruncatedSeries divide_by_h() const {
    if (order() < 1) throw std::domain_error("divide_by_h: order too low");
    if (coeffs_[0] != 0) throw std::domain_error("divide_by_h: nonzero constant term");
    TruncatedSeries r(order() - 1);
    for (int i = 0; i < order(); ++i) r.coeffs_[i] = coeffs_[i + 1];
    return r;
  }

  /// Multiplicative inverse; requires a unit (nonzero constant term).
  TruncatedSeries inverse() const {
    if (coeffs_[0] == 0) throw std::domain_error("TruncatedSeries::inverse: not a unit");
    TruncatedSeries r(order());
    r.coeffs_[0] = Rational(1) / coeffs_[0];
    for (int i = 1; i <= order(); ++i) {
      Rational acc = 0;
      for (int j = 1; j <= i; ++j) acc += coeffs_[j] * r.coeffs_[i - j];
      r.coeffs_[i] = -acc / coeffs_[0];
    }
    return r;
  }

  /// Drop the truncation order to `new_order` <= order().
  TruncatedSeries truncate(int new_order) const {
    if (new_order > order()) throw std::invalid_argument("truncate: order increase");
    TruncatedSeries r(new_order);
    for (int i = 0; i <= new_order; ++i) r.coeffs_[i] = coeffs_[i];
    return r;
  }

private:
  void check_order(const TruncatedSeries& o) const {
    if (order() != o.order())
      throw std::invalid_argument("TruncatedSeries: mismatched truncation orders");
  }

  std::vector<Rational> coeffs_;
};

/// exp(a*h) as a series of the given truncation order.
inline TruncatedSeries exp_series(const Rational& a, int order) {
  TruncatedSeries s(order);
  Rational term = 1;
  s.set(0, term);
  for (int i = 1; i <= order; ++i) {
    term = term * a / i;
    s.set(i, term);
  }
  return s;
}

/**
 * The expansion homomorphism: substitutes A = -exp(h/4), i.e. sends A^k to
 * (-1)^k exp(k*h/4), and truncates at the given order.
 */
inline TruncatedSeries expand_laurent(const LaurentPolynomial& p, int order) {
  TruncatedSeries s(order);
  for (const auto& [k, c] : p.terms()) {
    Rational sign = (k % 2 == 0) ? 1 : -1;
    TruncatedSeries e = exp_series(Rational(k) / 4, order);
    for (int i = 0; i <= order; ++i) s.set(i, s[i] + sign * Rational(c) * e[i]);
  }
  return s;
}

}  // namespace skein
