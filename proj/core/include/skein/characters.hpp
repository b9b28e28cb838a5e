#pragma once

#include <complex>
#include <cstdint>
#include <string>

#include "skein/skein_element.hpp"
#include "skein/surface.hpp"

namespace skein {

using Complex = std::complex<double>;

struct Matrix2 {
  Complex a{0}, b{0}, c{0}, d{0};  // [[a, b], [c, d]]

  static Matrix2 identity() { return {1, 0, 0, 1}; }

  Complex trace() const { return a + d; }
  Complex det() const { return a * d - b * c; }

  /// Inverse of a determinant-1 matrix (the adjugate).
  Matrix2 inverse_unimodular() const { return {d, -b, -c, a}; }

  friend Matrix2 operator*(const Matrix2& l, const Matrix2& r) {
    return {l.a * r.a + l.b * r.c, l.a * r.b + l.b * r.d, l.c * r.a + l.d * r.c,
            l.c * r.b + l.d * r.d};
  }
  friend Matrix2 operator+(const Matrix2& l, const Matrix2& r) {
    return {l.a + r.a, l.b + r.b, l.c + r.c, l.d + r.d};
  }
  friend Matrix2 operator-(const Matrix2& l, const Matrix2& r) {
    return {l.a - r.a, l.b - r.b, l.c - r.c, l.d - r.d};
  }
  friend Matrix2 operator*(Complex s, const Matrix2& m) {
    return {s * m.a, s * m.b, s * m.c, s * m.d};
  }

  /// m^k for any integer k; negative powers use the unimodular inverse.
  Matrix2 power(int k) const;

  double max_abs() const;
};

/// exp(m) by scaling and squaring with a truncated series.
Matrix2 mat_exp(const Matrix2& m);

/// An element of sl2 written in the basis
///   X = [[0,1],[0,0]],  H = [[1,0],[0,-1]],  Y = [[0,0],[1,0]].
struct LieVector {
  Complex x{0}, eta{0}, y{0};
};

Matrix2 lie_matrix(const LieVector& v);

/// The invariant pairing used to contract trace gradients:
///   B(u, v) = -u.x*v.y - u.y*v.x - 2*u.eta*v.eta.
Complex invariant_pairing(const LieVector& u, const LieVector& v);

/// Gradient of the trace function at a point A of SL(2,C): the unique vector
/// g with invariant_pairing(g, w) = tr(A * w) for all w in sl2.
LieVector trace_gradient(const Matrix2& m);

/// A point of the SL(2,C) character variety of the torus: a commuting pair.
struct TorusRep {
  Matrix2 a, b;

  /// Validates determinants and commutativity to within `tol`.
  static TorusRep make(const Matrix2& a, const Matrix2& b, double tol = 1e-9);

  /// Holonomy around the class (p,q): a^p * b^q.
  Matrix2 holonomy(int p, int q) const;
};

/// Deterministic pseudo-random commuting pair: a conjugated diagonal pair.
TorusRep random_torus_rep(std::uint64_t seed);

/// Parses the two-matrix text format:
///   matrix a
///   <re> <im> <re> <im>
///   <re> <im> <re> <im>
///   matrix b
///   ...
TorusRep parse_torus_rep(const std::string& text);

/// Value of one basis multicurve at a representation. A class (p,q) with
/// multiplicity m evaluates to (-tr(a^p b^q))^m; the empty curve to 1.
Complex curve_value(const Multicurve& m, const TorusRep& rep);

/// Evaluates a rational combination of multicurves at a representation.
Complex character_eval(const CharacterElement& e, const TorusRep& rep);

/// Poisson bracket of the two curve functions on the character variety:
/// (q*r - p*s) * B(grad tr(hol(alpha)), grad tr(hol(beta))) for primitive
/// classes, extended to multiplicities by the Leibniz rule.
Complex goldman_numeric(const Multicurve& alpha, const Multicurve& beta, const TorusRep& rep);

}  // namespace skein
