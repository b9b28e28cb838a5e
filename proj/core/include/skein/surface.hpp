#pragma once

#include <compare>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>

namespace skein {

enum class SurfaceKind { disk, annulus, torus };

inline int counter_arity(SurfaceKind s) {
  switch (s) {
    case SurfaceKind::disk: return 0;
    case SurfaceKind::annulus: return 1;
    case SurfaceKind::torus: return 2;
  }
  throw std::logic_error("counter_arity: bad surface");
}

inline std::string surface_name(SurfaceKind s) {
  switch (s) {
    case SurfaceKind::disk: return "disk";
    case SurfaceKind::annulus: return "annulus";
    case SurfaceKind::torus: return "torus";
  }
  throw std::logic_error("surface_name: bad surface");
}

/// Thrown when traced curve data cannot describe embedded circles on the
/// surface (a bug in the caller's diagram, or an unrealizable input).
class TopologyError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Canonical representative of a primitive homology class: first nonzero
/// coordinate positive.  (0,0) is returned unchanged.
inline std::pair<int, int> canonical_class(int a, int b) {
  if (a < 0 || (a == 0 && b < 0)) return {-a, -b};
  return {a, b};
}

/**
 * A basis multicurve: a system of disjoint parallel essential circles.
 *
 *  - disk:    only the empty multicurve exists;
 *  - annulus: mult >= 1 parallel copies of the core (z^n), or empty;
 *  - torus:   mult >= 1 parallel copies of the primitive class (p,q),
 *             normalized so p > 0, or p == 0 and q > 0; or empty.
 */
struct Multicurve {
  SurfaceKind surface = SurfaceKind::disk;
  int p = 0, q = 0;  // primitive class; annulus stores (1,0), empty stores (0,0)
  int mult = 0;

  static Multicurve empty(SurfaceKind s) { return {s, 0, 0, 0}; }

  static Multicurve core(int n) {
    if (n < 0) throw std::invalid_argument("Multicurve::core: negative winding");
    if (n == 0) return empty(SurfaceKind::annulus);
    return {SurfaceKind::annulus, 1, 0, n};
  }

  static Multicurve torus_class(int p, int q, int mult) {
    if (mult < 0) throw std::invalid_argument("Multicurve::torus_class: negative multiplicity");
    if (mult == 0) return empty(SurfaceKind::torus);
    auto [cp, cq] = canonical_class(p, q);
    if (cp == 0 && cq == 0)
      throw std::invalid_argument("Multicurve::torus_class: null class");
    if (std::gcd(cp, cq) != 1)
      throw std::invalid_argument("Multicurve::torus_class: class not primitive");
    return {SurfaceKind::torus, cp, cq, mult};
  }

  bool is_empty() const { return mult == 0; }

  friend auto operator<=>(const Multicurve&, const Multicurve&) = default;
};

}  // namespace skein
