#pragma once

#include "skein/skein.hpp"
#include "skein/skein_element.hpp"

namespace skein {

/// Specializes a Laurent-coefficient element at A = -1 (each A^k becomes
/// (-1)^k), the commutative limit in which curves multiply classically.
CharacterElement classical_limit(const SkeinElement& e);

/// Constant term of a series-coefficient element: keeps each curve whose
/// coefficient has a nonzero h^0 part.
CharacterElement constant_term(const SeriesElement& e);

/// Product of two curve-function combinations in the commutative limit,
/// resolved through the same diagram engine as the quantum product.
CharacterElement character_mul(const CharacterElement& x, const CharacterElement& y,
                               const BracketOptions& opts = {},
                               ProductCache* cache = &default_product_cache());

/// Poisson bracket of two basis curves computed as a state sum over the
/// crossings of their product diagram: each smoothing state contributes
/// (-1)^k * (#A - #B)/2 * (-2)^trivial times its multicurve class.
/// Multiplicities are handled by the Leibniz rule.
CharacterElement poisson_statesum(const Multicurve& x, const Multicurve& y,
                                  const BracketOptions& opts = {},
                                  ProductCache* cache = &default_product_cache());

/// Bilinear extension of the state-sum bracket to rational combinations.
CharacterElement poisson_statesum(const CharacterElement& x, const CharacterElement& y,
                                  const BracketOptions& opts = {},
                                  ProductCache* cache = &default_product_cache());

/// Poisson bracket recovered from the quantum commutator: the constant term
/// of (x*y - y*x)/h, expanded to the requested series order.
CharacterElement poisson_commutator(const Multicurve& x, const Multicurve& y, int order = 2,
                                    const BracketOptions& opts = {},
                                    ProductCache* cache = &default_product_cache());

CharacterElement poisson_commutator(const SkeinElement& x, const SkeinElement& y, int order = 2,
                                    const BracketOptions& opts = {},
                                    ProductCache* cache = &default_product_cache());

}  // namespace skein
