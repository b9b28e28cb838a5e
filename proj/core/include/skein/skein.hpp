#pragma once

#include <cstdint>
#include <map>
#include <tuple>

#include "skein/diagram.hpp"
#include "skein/skein_element.hpp"

namespace skein {

struct BracketOptions {
  /// Hard cap on the number of crossings: a diagram with k crossings costs
  /// 2^k states. Raise this knowingly for big intermediate products.
  int max_crossings = 24;
};

/// Aggregated resolution of a diagram: for each (multicurve, trivial-loop
/// count, #A - #B balance) reached by some smoothing state, the number of
/// states landing there. Everything downstream (bracket, classical value,
/// state-sum pairing) is assembled from this one enumeration.
struct StateTable {
  SurfaceKind surface = SurfaceKind::disk;
  int num_crossings = 0;
  std::map<std::tuple<Multicurve, int, int>, std::int64_t> groups;
};

StateTable enumerate_states(const Diagram& d, const BracketOptions& opts = {});

/// Resolves every crossing and collects the result in the multicurve basis:
/// each state contributes A^(#A - #B) times (-A^2 - A^-2) per trivial loop.
/// This is the normal-form map; it is the identity on crossing-free diagrams
/// with no trivial loops.
SkeinElement bracket_resolve(const Diagram& d, const BracketOptions& opts = {});

/// The bracket specialized at A = -1 (each trivial loop contributes -2):
/// the image of the diagram in the commutative coordinate ring.
CharacterElement classical_resolve(const Diagram& d, const BracketOptions& opts = {});

/// Unoriented state-sum pairing of a diagram: each state is weighted by
/// (-1)^k * (#A - #B)/2 * (-2)^(trivial loops), k = number of crossings.
/// For a diagram stacking one curve over another this computes their
/// Poisson bracket on the character variety.
CharacterElement statesum_resolve(const Diagram& d, const BracketOptions& opts = {});

/// Memo for products of basis curves; results do not depend on options.
class ProductCache {
 public:
  const SkeinElement* find(const Multicurve& x, const Multicurve& y) const;
  void store(const Multicurve& x, const Multicurve& y, SkeinElement value);
  std::size_t size() const { return entries_.size(); }

 private:
  std::map<std::pair<Multicurve, Multicurve>, SkeinElement> entries_;
};

/// Process-wide cache shared by default across skein_mul calls.
ProductCache& default_product_cache();

/// The skein product: stacks x over y, resolves all crossings, and extends
/// bilinearly. Associative; the empty curve is the unit.
SkeinElement skein_mul(const SkeinElement& x, const SkeinElement& y,
                       const BracketOptions& opts = {},
                       ProductCache* cache = &default_product_cache());

/// Applies the A = -exp(h/4) expansion to every coefficient.
SeriesElement expand_element(const SkeinElement& e, int order);

/// (x*y - y*x)/h, expanded to the given order before dividing; the result
/// has order one less. The h^0 part of the difference always cancels, so
/// the division is exact.
SeriesElement skein_commutator(const SkeinElement& x, const SkeinElement& y, int order,
                               const BracketOptions& opts = {},
                               ProductCache* cache = &default_product_cache());

}  // namespace skein
