#pragma once

#include <string>

#include "skein/rings.hpp"
#include "skein/skein.hpp"
#include "skein/surface.hpp"

namespace skein {

/// "n" or "p/q", always in lowest terms.
std::string to_text(const Rational& r);

/// Terms in descending powers, e.g. "A^6 + A^2 + A^-2 + A^-6"; unit
/// coefficients are suppressed, other magnitudes print as "c*A^k".
std::string to_text(const LaurentPolynomial& p);

/// Ascending powers with an explicit remainder: "-2 - 1/4*h^2 + O(h^3)".
std::string to_text(const TruncatedSeries& s);

/// "empty", "z", "z^n", "(p,q)", or "(p,q)^m".
std::string to_text(const Multicurve& m);

/// One "<coefficient> * <multicurve>" line per basis term, or "0".
std::string to_text(const SkeinElement& e);
std::string to_text(const SeriesElement& e);
std::string to_text(const CharacterElement& e);

/// Inverses of the printers above. All throw std::invalid_argument with the
/// offending text on malformed input.
Rational parse_rational(const std::string& text);
LaurentPolynomial parse_laurent(const std::string& text);
TruncatedSeries parse_series(const std::string& text);

/// Accepts the to_text forms; "empty" alone carries no surface, so callers
/// pass the surface it should land on.
Multicurve parse_multicurve(const std::string& text, SurfaceKind empty_surface = SurfaceKind::disk);

}  // namespace skein
