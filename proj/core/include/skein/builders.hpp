#pragma once

#include "skein/diagram.hpp"
#include "skein/surface.hpp"

namespace skein {

/// Builds a diagram presenting the product x*y: a copy of x stacked over a
/// copy of y. On the annulus the copies are disjoint. On the torus, distinct
/// classes are drawn as straight-line families on the unit square (x's family
/// crossing over y's), which yields exactly x.mult * y.mult * |det| crossings,
/// det = x.p*y.q - x.q*y.p. Parallel classes and empty factors produce
/// crossing-free diagrams.
///
/// offset_variant selects a different (still generic) set of line offsets;
/// diagrams for different variants are isotopic and must agree downstream.
Diagram build_product_diagram(const Multicurve& x, const Multicurve& y, int offset_variant = 0);

/// A crossing-free diagram carrying just this multicurve.
Diagram multicurve_diagram(const Multicurve& m);

}  // namespace skein
