#include "skein/skein.hpp"

#include <bit>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "skein/builders.hpp"

namespace skein {

namespace {

constexpr int kPartner[2][4] = {{1, 0, 3, 2}, {3, 2, 1, 0}};

// Flat-array form of a diagram for the per-state tracing loop.
struct CompiledDiagram {
  SurfaceKind surface;
  int k = 0;      // crossings
  int narcs = 0;  // arcs attached to crossings
  std::vector<int> slot_arc, slot_end;    // per slot = crossing*4 + port
  std::vector<int> tail_slot, head_slot;  // per arc
  std::vector<int> c0, c1;                // per arc counter contributions
  int free_trivial = 0;
  Multicurve free_class = Multicurve::empty(SurfaceKind::disk);
};

CompiledDiagram compile(const Diagram& d) {
  validate_diagram(d);
  CompiledDiagram cd;
  cd.surface = d.surface;
  cd.k = d.num_crossings;
  cd.slot_arc.assign(static_cast<size_t>(cd.k) * 4, -1);
  cd.slot_end.assign(static_cast<size_t>(cd.k) * 4, -1);

  StateCurves free_curves;
  for (const auto& arc : d.arcs) {
    if (arc.is_free_loop()) {
      free_curves.components.push_back({arc.counters});
      continue;
    }
    int idx = cd.narcs++;
    cd.c0.push_back(arc.counters.size() > 0 ? arc.counters[0] : 0);
    cd.c1.push_back(arc.counters.size() > 1 ? arc.counters[1] : 0);
    int ts = arc.tail->crossing * 4 + arc.tail->port;
    int hs = arc.head->crossing * 4 + arc.head->port;
    cd.tail_slot.push_back(ts);
    cd.head_slot.push_back(hs);
    cd.slot_arc[ts] = idx;
    cd.slot_end[ts] = 0;
    cd.slot_arc[hs] = idx;
    cd.slot_end[hs] = 1;
  }
  auto [triv, cls] = classify_state(d.surface, free_curves);
  cd.free_trivial = triv;
  cd.free_class = cls;
  return cd;
}

struct Fold {
  int trivial = 0;
  bool have = false;
  int p = 0, q = 0, mult = 0;
};

void fold_component(SurfaceKind surface, int a, int b, Fold& f) {
  if (a == 0 && b == 0) {
    ++f.trivial;
    return;
  }
  switch (surface) {
    case SurfaceKind::disk:
      throw TopologyError("state component with nonzero counters on the disk");
    case SurfaceKind::annulus:
      if (a != 1 && a != -1)
        throw TopologyError("state component winds " + std::to_string(a) +
                            " times around the annulus");
      a = 1;
      b = 0;
      break;
    case SurfaceKind::torus: {
      if (std::gcd(std::abs(a), std::abs(b)) != 1)
        throw TopologyError("state component with imprimitive torus class (" +
                            std::to_string(a) + "," + std::to_string(b) + ")");
      auto [na, nb] = canonical_class(a, b);
      a = na;
      b = nb;
      break;
    }
  }
  if (!f.have) {
    f.have = true;
    f.p = a;
    f.q = b;
    f.mult = 1;
  } else if (f.p == a && f.q == b) {
    ++f.mult;
  } else {
    throw TopologyError("state with non-parallel essential components");
  }
}

Multicurve fold_result(SurfaceKind surface, const Fold& f) {
  if (!f.have) return Multicurve::empty(surface);
  if (surface == SurfaceKind::annulus) return Multicurve::core(f.mult);
  return Multicurve::torus_class(f.p, f.q, f.mult);
}

}  // namespace

StateTable enumerate_states(const Diagram& d, const BracketOptions& opts) {
  if (d.num_crossings > opts.max_crossings)
    throw std::runtime_error("state sum over " + std::to_string(d.num_crossings) +
                             " crossings exceeds the limit of " +
                             std::to_string(opts.max_crossings) +
                             " (raise BracketOptions::max_crossings to allow 2^" +
                             std::to_string(d.num_crossings) + " states)");

  CompiledDiagram cd = compile(d);
  StateTable table;
  table.surface = cd.surface;
  table.num_crossings = cd.k;

  const std::uint64_t nstates = std::uint64_t{1} << cd.k;
  std::vector<std::uint32_t> stamp(cd.narcs, 0);
  std::uint32_t epoch = 0;

  for (std::uint64_t s = 0; s < nstates; ++s) {
    ++epoch;
    Fold f;
    f.trivial = cd.free_trivial;
    if (!cd.free_class.is_empty()) {
      f.have = true;
      f.p = cd.free_class.p;
      f.q = cd.free_class.q;
      f.mult = cd.free_class.mult;
    }

    for (int a0 = 0; a0 < cd.narcs; ++a0) {
      if (stamp[a0] == epoch) continue;
      int a = a0;
      bool fwd = true;
      int ca = 0, cb = 0;
      do {
        stamp[a] = epoch;
        if (fwd) {
          ca += cd.c0[a];
          cb += cd.c1[a];
        } else {
          ca -= cd.c0[a];
          cb -= cd.c1[a];
        }
        int slot = fwd ? cd.head_slot[a] : cd.tail_slot[a];
        int choice = static_cast<int>((s >> (slot >> 2)) & 1);
        int nslot = (slot & ~3) | kPartner[choice][slot & 3];
        a = cd.slot_arc[nslot];
        fwd = cd.slot_end[nslot] == 0;
      } while (!(a == a0 && fwd));
      fold_component(cd.surface, ca, cb, f);
    }

    int balance = cd.k - 2 * std::popcount(s);
    ++table.groups[{fold_result(cd.surface, f), f.trivial, balance}];
  }
  return table;
}

SkeinElement bracket_resolve(const Diagram& d, const BracketOptions& opts) {
  StateTable t = enumerate_states(d, opts);
  SkeinElement out = SkeinElement::zero(t.surface);
  std::vector<LaurentPolynomial> delta_pow{LaurentPolynomial::from_int(1)};
  for (const auto& [key, count] : t.groups) {
    const auto& [curve, triv, bal] = key;
    while (static_cast<int>(delta_pow.size()) <= triv)
      delta_pow.push_back(delta_pow.back() * LaurentPolynomial::loop_value());
    out.add_term(curve, LaurentPolynomial::monomial(Int(count), bal) * delta_pow[triv]);
  }
  return out;
}

namespace {

Rational pow_rational(const Rational& base, int n) {
  Rational r = 1;
  for (int i = 0; i < n; ++i) r *= base;
  return r;
}

}  // namespace

CharacterElement classical_resolve(const Diagram& d, const BracketOptions& opts) {
  StateTable t = enumerate_states(d, opts);
  CharacterElement out = CharacterElement::zero(t.surface);
  for (const auto& [key, count] : t.groups) {
    const auto& [curve, triv, bal] = key;
    Rational c = Rational(count) * (bal % 2 == 0 ? 1 : -1) * pow_rational(-2, triv);
    out.add_term(curve, c);
  }
  return out;
}

CharacterElement statesum_resolve(const Diagram& d, const BracketOptions& opts) {
  StateTable t = enumerate_states(d, opts);
  CharacterElement out = CharacterElement::zero(t.surface);
  int sign_k = t.num_crossings % 2 == 0 ? 1 : -1;
  for (const auto& [key, count] : t.groups) {
    const auto& [curve, triv, bal] = key;
    Rational c = Rational(count) * sign_k * Rational(bal, 2) * pow_rational(-2, triv);
    out.add_term(curve, c);
  }
  return out;
}

const SkeinElement* ProductCache::find(const Multicurve& x, const Multicurve& y) const {
  auto it = entries_.find({x, y});
  return it == entries_.end() ? nullptr : &it->second;
}

void ProductCache::store(const Multicurve& x, const Multicurve& y, SkeinElement value) {
  entries_.insert_or_assign({x, y}, std::move(value));
}

ProductCache& default_product_cache() {
  static ProductCache cache;
  return cache;
}

namespace {

const SkeinElement& basis_product(const Multicurve& x, const Multicurve& y,
                                  const BracketOptions& opts, ProductCache* cache) {
  static thread_local SkeinElement scratch = SkeinElement::zero(SurfaceKind::disk);
  if (cache) {
    if (const SkeinElement* hit = cache->find(x, y)) return *hit;
  }
  SkeinElement value = bracket_resolve(build_product_diagram(x, y), opts);
  if (cache) {
    cache->store(x, y, std::move(value));
    return *cache->find(x, y);
  }
  scratch = std::move(value);
  return scratch;
}

}  // namespace

SkeinElement skein_mul(const SkeinElement& x, const SkeinElement& y, const BracketOptions& opts,
                       ProductCache* cache) {
  if (x.surface != y.surface) throw std::invalid_argument("skein_mul: mixing surfaces");
  SkeinElement out = SkeinElement::zero(x.surface);
  for (const auto& [mx, cx] : x.terms) {
    for (const auto& [my, cy] : y.terms) {
      LaurentPolynomial c = cx * cy;
      if (mx.is_empty()) {
        out.add_term(my, c);
      } else if (my.is_empty()) {
        out.add_term(mx, c);
      } else {
        for (const auto& [m, pc] : basis_product(mx, my, opts, cache).terms)
          out.add_term(m, c * pc);
      }
    }
  }
  return out;
}

SeriesElement expand_element(const SkeinElement& e, int order) {
  SeriesElement out = SeriesElement::zero(e.surface);
  for (const auto& [m, c] : e.terms) out.add_term(m, expand_laurent(c, order));
  return out;
}

SeriesElement skein_commutator(const SkeinElement& x, const SkeinElement& y, int order,
                               const BracketOptions& opts, ProductCache* cache) {
  SkeinElement xy = skein_mul(x, y, opts, cache);
  SkeinElement yx = skein_mul(y, x, opts, cache);
  SeriesElement diff = expand_element(xy, order) - expand_element(yx, order);
  SeriesElement out = SeriesElement::zero(x.surface);
  for (const auto& [m, c] : diff.terms) out.add_term(m, c.divide_by_h());
  return out;
}

}  // namespace skein
