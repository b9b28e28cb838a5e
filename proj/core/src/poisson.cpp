#include "skein/poisson.hpp"

#include <stdexcept>

#include "skein/builders.hpp"

namespace skein {

CharacterElement classical_limit(const SkeinElement& e) {
  CharacterElement out = CharacterElement::zero(e.surface);
  for (const auto& [curve, poly] : e.terms) {
    Rational value = 0;
    for (const auto& [k, c] : poly.terms()) {
      if (k & 1)
        value -= c;
      else
        value += c;
    }
    out.add_term(curve, value);
  }
  return out;
}

CharacterElement constant_term(const SeriesElement& e) {
  CharacterElement out = CharacterElement::zero(e.surface);
  for (const auto& [curve, series] : e.terms) out.add_term(curve, series[0]);
  return out;
}

CharacterElement character_mul(const CharacterElement& x, const CharacterElement& y,
                               const BracketOptions& opts, ProductCache* cache) {
  if (x.surface != y.surface)
    throw std::invalid_argument("character_mul: operands live on different surfaces");
  CharacterElement out = CharacterElement::zero(x.surface);
  for (const auto& [mx, cx] : x.terms) {
    for (const auto& [my, cy] : y.terms) {
      const SkeinElement prod =
          skein_mul(SkeinElement::basis(mx, LaurentPolynomial::from_int(1)), SkeinElement::basis(my, LaurentPolynomial::from_int(1)), opts, cache);
      const CharacterElement classical = classical_limit(prod);
      for (const auto& [curve, coeff] : classical.terms) out.add_term(curve, cx * cy * coeff);
    }
  }
  return out;
}

namespace {

Multicurve with_mult(const Multicurve& m, int k) {
  if (k == 0) return Multicurve::empty(m.surface);
  return {m.surface, m.p, m.q, k};
}

/// {x^m, y^n} = m*n * x^(m-1) * y^(n-1) * {x, y} for primitive x, y.
CharacterElement basis_poisson(const Multicurve& x, const Multicurve& y,
                               const BracketOptions& opts, ProductCache* cache) {
  if (x.surface != y.surface)
    throw std::invalid_argument("poisson_statesum: operands live on different surfaces");
  if (x.is_empty() || y.is_empty()) return CharacterElement::zero(x.surface);

  const Multicurve px = with_mult(x, 1);
  const Multicurve py = with_mult(y, 1);
  CharacterElement base = statesum_resolve(build_product_diagram(px, py), opts);
  if (x.mult == 1 && y.mult == 1) return base;

  const Multicurve x_rest = with_mult(x, x.mult - 1);
  const Multicurve y_rest = with_mult(y, y.mult - 1);
  const CharacterElement leading =
      character_mul(CharacterElement::basis(x_rest, Rational(1)), CharacterElement::basis(y_rest, Rational(1)), opts, cache);
  CharacterElement scaled = character_mul(leading, base, opts, cache);
  return Rational(x.mult) * Rational(y.mult) * scaled;
}

}  // namespace

CharacterElement poisson_statesum(const Multicurve& x, const Multicurve& y,
                                  const BracketOptions& opts, ProductCache* cache) {
  return basis_poisson(x, y, opts, cache);
}

CharacterElement poisson_statesum(const CharacterElement& x, const CharacterElement& y,
                                  const BracketOptions& opts, ProductCache* cache) {
  if (x.surface != y.surface)
    throw std::invalid_argument("poisson_statesum: operands live on different surfaces");
  CharacterElement out = CharacterElement::zero(x.surface);
  for (const auto& [mx, cx] : x.terms) {
    for (const auto& [my, cy] : y.terms) {
      const CharacterElement part = basis_poisson(mx, my, opts, cache);
      for (const auto& [curve, coeff] : part.terms) out.add_term(curve, cx * cy * coeff);
    }
  }
  return out;
}

CharacterElement poisson_commutator(const Multicurve& x, const Multicurve& y, int order,
                                    const BracketOptions& opts, ProductCache* cache) {
  return poisson_commutator(SkeinElement::basis(x, LaurentPolynomial::from_int(1)), SkeinElement::basis(y, LaurentPolynomial::from_int(1)), order, opts, cache);
}

CharacterElement poisson_commutator(const SkeinElement& x, const SkeinElement& y, int order,
                                    const BracketOptions& opts, ProductCache* cache) {
  return constant_term(skein_commutator(x, y, order, opts, cache));
}

}  // namespace skein
