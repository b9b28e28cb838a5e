#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "skein/surface.hpp"

namespace skein {

/**
 * One end of an arc, attached to a crossing port.
 *
 * Ports are numbered 0..3 counterclockwise around the crossing; the
 * under-strand occupies ports 0 and 2, the over-strand ports 1 and 3.
 * The A-smoothing joins ports (0,1) and (2,3); the B-smoothing joins
 * (0,3) and (1,2).
 */
struct ArcEnd {
  int crossing = 0;
  int port = 0;

  friend bool operator==(const ArcEnd&, const ArcEnd&) = default;
};

/**
 * An arc: a strand segment between two crossing ports, or a crossing-free
 * closed loop (no ends).  `counters` records the signed number of times the
 * arc crosses each reference cut curve of the surface, measured along the
 * tail->head direction; traversing the arc backwards negates them.
 *
 * Torus counters are (meridian crossings, longitude crossings), so a loop in
 * class (p,q) carries counters (p,q).  The annulus has a single counter
 * against the radial cut.  Disk arcs carry none.
 */
struct Arc {
  std::optional<ArcEnd> tail;
  std::optional<ArcEnd> head;
  std::vector<int> counters;

  bool is_free_loop() const { return !tail.has_value(); }

  friend bool operator==(const Arc&, const Arc&) = default;
};

struct Diagram {
  SurfaceKind surface = SurfaceKind::disk;
  int num_crossings = 0;
  std::vector<Arc> arcs;

  friend bool operator==(const Diagram&, const Diagram&) = default;
};

class ParseError : public std::runtime_error {
public:
  ParseError(int line, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line) + ": " + msg), line_(line) {}
  int line() const { return line_; }

private:
  int line_;
};

/// Parse the diagram text format (see README).  Throws ParseError.
Diagram parse_diagram(const std::string& text);

/// Structural validation: every crossing port carries exactly one arc end,
/// counter arities match the surface.  Throws std::invalid_argument.
void validate_diagram(const Diagram& d);

/// Re-gauge each crossing so that of the two under-strand ports, port 0
/// carries the lexicographically smaller (arc, end).  Semantically a no-op;
/// makes encodings canonical so that mirror is an involution on the nose.
void normalize_ports(Diagram& d);

/// Swap over- and under-strands at every crossing.
Diagram mirror(const Diagram& d);

/// Swap over- and under-strand at one crossing.
Diagram switch_crossing(const Diagram& d, int crossing);

/// Smoothing choice per crossing: 0 = A, 1 = B.
using SmoothingChoice = std::vector<std::uint8_t>;

struct StateCurve {
  std::vector<int> counters;  // total, up to overall sign (traversal direction)
};

struct StateCurves {
  std::vector<StateCurve> components;
};

/// Replace every crossing by the chosen smoothing and trace the resulting
/// closed curves, accumulating homology counters.
StateCurves trace_state(const Diagram& d, const SmoothingChoice& choice);

/// Split a traced state into (number of trivial loops, basis multicurve).
/// Throws TopologyError if a component is not primitive or two essential
/// components are non-parallel -- impossible for states of an embedded
/// diagram, so it signals an unrealizable input or a bug.
std::pair<int, Multicurve> classify_state(SurfaceKind surface, const StateCurves& curves);

/// Homotopy content of the underlying curves: trace every strand straight
/// through each crossing (ignoring over/under) and return raw counter
/// totals, one per component.  Classes need not be primitive.
std::vector<std::vector<int>> underlying_loops(const Diagram& d);

}  // namespace skein
