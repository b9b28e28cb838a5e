#pragma once

#include <map>
#include <stdexcept>
#include <utility>

#include "skein/rings.hpp"
#include "skein/surface.hpp"

namespace skein {

inline bool coeff_is_zero(const LaurentPolynomial& c) { return c.is_zero(); }
inline bool coeff_is_zero(const TruncatedSeries& c) { return c.is_zero(); }
inline bool coeff_is_zero(const Rational& c) { return c == 0; }

/// A finite combination of basis multicurves on one surface. Zero
/// coefficients are pruned, so equality is structural.
template <typename Coeff>
struct SkeinElementT {
  SurfaceKind surface = SurfaceKind::disk;
  std::map<Multicurve, Coeff> terms;

  static SkeinElementT zero(SurfaceKind s) {
    SkeinElementT e;
    e.surface = s;
    return e;
  }

  static SkeinElementT basis(const Multicurve& m, Coeff c) {
    SkeinElementT e;
    e.surface = m.surface;
    e.add_term(m, std::move(c));
    return e;
  }

  bool is_zero() const { return terms.empty(); }

  void add_term(const Multicurve& m, const Coeff& c) {
    if (m.surface != surface)
      throw std::invalid_argument("skein element: term from a different surface");
    auto it = terms.find(m);
    if (it == terms.end()) {
      if (!coeff_is_zero(c)) terms.emplace(m, c);
      return;
    }
    it->second = it->second + c;
    if (coeff_is_zero(it->second)) terms.erase(it);
  }

  const Coeff* coefficient(const Multicurve& m) const {
    auto it = terms.find(m);
    return it == terms.end() ? nullptr : &it->second;
  }

  SkeinElementT& operator+=(const SkeinElementT& o) {
    if (o.surface != surface)
      throw std::invalid_argument("skein element: mixing surfaces");
    for (const auto& [m, c] : o.terms) add_term(m, c);
    return *this;
  }

  friend SkeinElementT operator+(SkeinElementT a, const SkeinElementT& b) { return a += b; }

  friend SkeinElementT operator-(const SkeinElementT& a, const SkeinElementT& b) {
    SkeinElementT out = a;
    if (b.surface != out.surface)
      throw std::invalid_argument("skein element: mixing surfaces");
    for (const auto& [m, c] : b.terms) out.add_term(m, -c);
    return out;
  }

  friend SkeinElementT operator*(const Coeff& s, const SkeinElementT& e) {
    SkeinElementT out = SkeinElementT::zero(e.surface);
    for (const auto& [m, c] : e.terms) out.add_term(m, s * c);
    return out;
  }

  friend bool operator==(const SkeinElementT& a, const SkeinElementT& b) {
    return a.surface == b.surface && a.terms == b.terms;
  }
};

using SkeinElement = SkeinElementT<LaurentPolynomial>;
using SeriesElement = SkeinElementT<TruncatedSeries>;
using CharacterElement = SkeinElementT<Rational>;

}  // namespace skein
