#pragma once

#include <string>
#include <utility>
#include <vector>

#include "skein/diagram.hpp"
#include "skein/skein.hpp"

namespace skein {

/// A diagram with marked double points. Each marked crossing stands for a
/// rigid self-intersection; it resolves as the difference between the
/// crossing as drawn and the switched crossing, times the decoration sign.
struct SingularLink {
  Diagram base;
  /// (crossing index, decoration sign +1/-1), indices strictly increasing.
  std::vector<std::pair<int, int>> points;
};

/// Parses diagram statements plus `singular <crossing-index> [+|-]` lines.
SingularLink parse_singular_link(const std::string& text);

struct SignedDiagram {
  int sign = 1;
  Diagram diagram;
};

struct SingularOptions {
  int max_points = 12;
};

/// Expands every marked double point: 2^n signed diagrams, where switching
/// the crossings in a subset T contributes sign (-1)^|T| times the product
/// of decoration signs.
std::vector<SignedDiagram> resolve_singular(const SingularLink& s, const SingularOptions& sopts = {});

/// Normal form of the resolved combination, expanded to the given order.
SeriesElement singular_expansion(const SingularLink& s, int order, const BracketOptions& opts = {},
                                 const SingularOptions& sopts = {});

/// Minimum h-valuation across the basis coefficients of singular_expansion.
SeriesValuation fti_valuation(const SingularLink& s, int order, const BracketOptions& opts = {},
                              const SingularOptions& sopts = {});

/// Flat table of series coefficients by (order, basis multicurve); zero
/// entries are omitted.
struct CoefficientTable {
  int order = 0;
  std::vector<std::tuple<int, Multicurve, Rational>> rows;  // sorted by (order, curve)
};

CoefficientTable fti_coefficients(const SeriesElement& e);

/// Consistent flow direction for every arc: +1 keeps the arc's stored
/// tail->head direction, -1 reverses it. Each component is seeded by its
/// lowest-numbered arc as drawn.
std::vector<int> propagate_orientations(const Diagram& d);

/// Signed crossing count of an oriented disk diagram. The sign convention
/// pairs with the jones normalization below: a crossing whose kink scales
/// the bracket by -A^-3 counts +1, so t^{3w} * bracket is isotopy invariant.
int writhe(const Diagram& d);

/// Framing-independent normalization of the bracket of a disk diagram:
/// jones(d) = expand(t^{3 w(d)} * bracket(d)) with t = -A, reported as the
/// series coefficient of the empty multicurve. Normalized to 1 on the
/// empty diagram and to -2cosh(h/2) on the 0-framed unknot.
TruncatedSeries jones(const Diagram& d, int order, const BracketOptions& opts = {});

/// One cable factor: `count` parallel copies of a knot, either a trivial
/// circle (any surface) or an essential curve class with multiplicity 1.
struct CableComponent {
  bool trivial_circle = false;
  Multicurve curve{};
  int count = 0;
};

/// Blackboard-framed cable of a list of knots: parallel copies of each
/// component, multiplied together in list order. A count of zero
/// contributes the empty link (the unit).
SkeinElement cable(SurfaceKind surface, const std::vector<CableComponent>& components,
                   const BracketOptions& opts = {}, ProductCache* cache = &default_product_cache());

/// One witness term: the product of generators[i] over `word` in order,
/// scaled by a truncated-series coefficient.
struct SpanTerm {
  std::vector<int> word;
  TruncatedSeries coefficient;
};

struct SpanResult {
  bool success = false;
  std::vector<SpanTerm> witness;  // empty on failure
};

/// Tries to express the target basis curve as a series-coefficient
/// combination of products of the generators with at most degree_bound
/// factors, working in Q[h] truncated at the given order. Returns a
/// verified witness or failure. Words are searched in length-then-index
/// order, so witnesses are deterministic.
SpanResult span_check(const std::vector<Multicurve>& generators, const Multicurve& target,
                      int degree_bound, int order, const BracketOptions& opts = {},
                      ProductCache* cache = &default_product_cache());

}  // namespace skein
