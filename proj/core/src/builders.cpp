#include "skein/builders.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstdlib>
#include <stdexcept>
#include <utility>
#include <vector>

namespace skein {

namespace {

using Rat = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

struct Point {
  Rat x, y;
};

int floor_of(const Rat& r) {
  BigInt num = numerator(r), den = denominator(r);
  BigInt q = num / den;
  if (num % den != 0 && num < 0) --q;
  return static_cast<int>(q);
}

bool is_integer(const Rat& r) { return denominator(r) == 1; }

struct LineHit {
  Rat param;    // position along the line, in [0,1)
  int crossing;
};

struct FamilyLine {
  Point base;
  std::vector<LineHit> hits;
};

// Counters of the straight segment between consecutive hit parameters: the
// lift moves from base + t0*(dx,dy) to base + t1*(dx,dy), and each unit grid
// line crossed bumps the matching counter.
std::vector<int> segment_counters(const Point& base, int dx, int dy, const Rat& t0,
                                  const Rat& t1) {
  Rat x0 = base.x + t0 * dx, x1 = base.x + t1 * dx;
  Rat y0 = base.y + t0 * dy, y1 = base.y + t1 * dy;
  return {floor_of(x1) - floor_of(x0), floor_of(y1) - floor_of(y0)};
}

void append_line_arcs(Diagram& d, const FamilyLine& line, int dx, int dy, int in_port,
                      int out_port) {
  if (line.hits.empty()) {
    Arc loop;
    loop.counters = {dx, dy};
    d.arcs.push_back(std::move(loop));
    return;
  }
  std::vector<LineHit> hits = line.hits;
  std::sort(hits.begin(), hits.end(),
            [](const LineHit& a, const LineHit& b) { return a.param < b.param; });
  for (size_t k = 0; k + 1 < hits.size(); ++k)
    if (hits[k].param == hits[k + 1].param)
      throw std::logic_error("degenerate offsets: coincident crossings on one line");
  size_t K = hits.size();
  for (size_t k = 0; k < K; ++k) {
    const LineHit& from = hits[k];
    const LineHit& to = hits[(k + 1) % K];
    Rat t_end = (k + 1 < K) ? to.param : to.param + 1;
    Arc a;
    a.tail = ArcEnd{from.crossing, out_port};
    a.head = ArcEnd{to.crossing, in_port};
    a.counters = segment_counters(line.base, dx, dy, from.param, t_end);
    d.arcs.push_back(std::move(a));
  }
}

Diagram loops_only(SurfaceKind surface, const std::vector<std::vector<int>>& counters) {
  Diagram d;
  d.surface = surface;
  d.num_crossings = 0;
  for (const auto& c : counters) {
    Arc a;
    a.counters = c;
    d.arcs.push_back(std::move(a));
  }
  return d;
}

std::vector<std::vector<int>> loop_counters(const Multicurve& m) {
  std::vector<std::vector<int>> out;
  if (m.is_empty()) return out;
  for (int i = 0; i < m.mult; ++i) {
    if (m.surface == SurfaceKind::annulus) out.push_back({1});
    else out.push_back({m.p, m.q});
  }
  return out;
}

Diagram torus_arrangement(const Multicurve& x, const Multicurve& y, int offset_variant) {
  const int p = x.p, q = x.q, r = y.p, s = y.q;
  const int m = x.mult, n = y.mult;
  const int delta = p * s - q * r;  // nonzero: classes are distinct and primitive
  const int chi = r * q - s * p;    // = -delta; orientation of over vs under
  const int over_in = chi > 0 ? 1 : 3;
  const int over_out = chi > 0 ? 3 : 1;

  static const int kPrimes[] = {1009, 1013, 1019, 1021, 1031, 1033, 1039, 1049, 1051, 1061};
  const int num_primes = static_cast<int>(sizeof(kPrimes) / sizeof(kPrimes[0]));

  for (int attempt = 0; attempt < num_primes; ++attempt) {
    // distinct prime denominators per family: a degenerate coincidence would
    // need the 1/P and 1/Q parts to vanish separately
    const int P = kPrimes[(attempt + offset_variant) % num_primes];
    const int Q = kPrimes[(attempt + offset_variant + 3) % num_primes];
    const Rat mx_spread(1, m * (p * p + q * q) + 1);
    const Rat ny_spread(1, n * (r * r + s * s) + 1);

    std::vector<FamilyLine> xlines(m), ylines(n);
    for (int i = 0; i < m; ++i)
      xlines[i].base = {Rat(1, P) + Rat(i) * mx_spread * (-q), Rat(2, P) + Rat(i) * mx_spread * p};
    for (int j = 0; j < n; ++j)
      ylines[j].base = {Rat(3, Q) + Rat(j) * ny_spread * (-s), Rat(5, Q) + Rat(j) * ny_spread * r};

    Diagram d;
    d.surface = SurfaceKind::torus;
    d.num_crossings = 0;
    bool generic = true;

    // Crossings of x-line i with y-line j: solve t*(p,q) - u*(r,s) = base
    // difference + integer translate, keeping (t,u) in the unit box.
    for (int i = 0; i < m && generic; ++i) {
      for (int j = 0; j < n && generic; ++j) {
        Rat rx = ylines[j].base.x - xlines[i].base.x;
        Rat ry = ylines[j].base.y - xlines[i].base.y;
        int range_a = std::abs(p) + std::abs(r) + 3;
        int range_b = std::abs(q) + std::abs(s) + 3;
        int found = 0;
        for (int a = -range_a; a <= range_a && generic; ++a) {
          for (int b = -range_b; b <= range_b && generic; ++b) {
            Rat X = rx + a, Y = ry + b;
            Rat t = (Rat(-s) * X + Rat(r) * Y) / (-delta);
            Rat u = (Rat(-q) * X + Rat(p) * Y) / (-delta);
            if (t < 0 || t >= 1 || u < 0 || u >= 1) continue;
            Rat cx = xlines[i].base.x + t * p;
            Rat cy = xlines[i].base.y + t * q;
            if (is_integer(cx) || is_integer(cy)) {
              generic = false;
              break;
            }
            int id = d.num_crossings++;
            xlines[i].hits.push_back({t, id});
            ylines[j].hits.push_back({u, id});
            ++found;
          }
        }
        if (generic && found != std::abs(delta))
          throw std::logic_error("torus arrangement: wrong crossing count per line pair");
      }
    }
    if (!generic) continue;

    for (int i = 0; i < m; ++i) append_line_arcs(d, xlines[i], p, q, over_in, over_out);
    for (int j = 0; j < n; ++j) append_line_arcs(d, ylines[j], r, s, 0, 2);

    validate_diagram(d);
    normalize_ports(d);
    return d;
  }
  throw std::logic_error("torus arrangement: no generic offsets found");
}

}  // namespace

Diagram multicurve_diagram(const Multicurve& m) {
  return loops_only(m.surface, loop_counters(m));
}

Diagram build_product_diagram(const Multicurve& x, const Multicurve& y, int offset_variant) {
  if (x.surface != y.surface)
    throw std::invalid_argument("build_product_diagram: factors live on different surfaces");

  if (x.is_empty() || y.is_empty() || x.surface == SurfaceKind::annulus ||
      (x.surface == SurfaceKind::torus && x.p == y.p && x.q == y.q)) {
    auto counters = loop_counters(x);
    auto more = loop_counters(y);
    counters.insert(counters.end(), more.begin(), more.end());
    return loops_only(x.surface, counters);
  }

  return torus_arrangement(x, y, offset_variant);
}

}  // namespace skein
