#include "skein/invariants.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cctype>
#include <map>
#include <optional>
#include <sstream>
#include <tuple>
#include <stdexcept>

namespace skein {

namespace {

constexpr int kThrough[4] = {2, 3, 0, 1};

std::string trimmed(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

}  // namespace

SingularLink parse_singular_link(const std::string& text) {
  std::istringstream in(text);
  std::string line, diagram_text;
  std::vector<std::pair<int, int>> points;
  std::vector<std::pair<int, int>> decl_lines;  // (crossing, source line) for range checks
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string t = trimmed(line);
    const auto hash = t.find('#');
    if (hash != std::string::npos) t = trimmed(t.substr(0, hash));
    if (t.rfind("singular", 0) == 0 &&
        (t.size() == 8 || std::isspace(static_cast<unsigned char>(t[8])))) {
      std::istringstream fields(t.substr(8));
      int crossing = -1;
      if (!(fields >> crossing) || crossing < 0)
        throw ParseError(line_no, "singular: expected a crossing index");
      int sign = 1;
      std::string tail;
      if (fields >> tail) {
        if (tail == "+")
          sign = 1;
        else if (tail == "-")
          sign = -1;
        else
          throw ParseError(line_no, "singular: decoration must be + or -");
        if (fields >> tail) throw ParseError(line_no, "singular: trailing input");
      }
      points.emplace_back(crossing, sign);
      decl_lines.emplace_back(crossing, line_no);
      diagram_text += '\n';  // keep diagram line numbers aligned
    } else {
      diagram_text += line;
      diagram_text += '\n';
    }
  }

  SingularLink s;
  s.base = parse_diagram(diagram_text);
  for (const auto& [crossing, at_line] : decl_lines)
    if (crossing >= s.base.num_crossings)
      throw ParseError(at_line, "singular: crossing index out of range");
  std::sort(points.begin(), points.end());
  for (size_t i = 1; i < points.size(); ++i)
    if (points[i].first == points[i - 1].first)
      throw ParseError(0, "singular: duplicate crossing index " + std::to_string(points[i].first));
  s.points = std::move(points);
  return s;
}

std::vector<SignedDiagram> resolve_singular(const SingularLink& s, const SingularOptions& sopts) {
  const int n = static_cast<int>(s.points.size());
  if (n > sopts.max_points)
    throw std::runtime_error("resolve_singular: " + std::to_string(n) +
                             " double points exceed the bound " + std::to_string(sopts.max_points) +
                             " (2^n diagrams)");
  int global = 1;
  for (const auto& [crossing, sign] : s.points) global *= sign;

  std::vector<SignedDiagram> out;
  out.reserve(size_t(1) << n);
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    Diagram d = s.base;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) d = switch_crossing(d, s.points[i].first);
    const int parity = std::popcount(mask) % 2 == 0 ? 1 : -1;
    out.push_back({global * parity, std::move(d)});
  }
  return out;
}

SeriesElement singular_expansion(const SingularLink& s, int order, const BracketOptions& opts,
                                 const SingularOptions& sopts) {
  SeriesElement sum = SeriesElement::zero(s.base.surface);
  for (const SignedDiagram& sd : resolve_singular(s, sopts)) {
    const SeriesElement e = expand_element(bracket_resolve(sd.diagram, opts), order);
    sum = sd.sign > 0 ? sum + e : sum - e;
  }
  return sum;
}

SeriesValuation fti_valuation(const SingularLink& s, int order, const BracketOptions& opts,
                              const SingularOptions& sopts) {
  const SeriesElement e = singular_expansion(s, order, opts, sopts);
  SeriesValuation best{false, order + 1};
  for (const auto& [curve, series] : e.terms) {
    const SeriesValuation v = series.valuation();
    if (v.value < best.value || (v.value == best.value && v.exact && !best.exact)) best = v;
  }
  return best;
}

CoefficientTable fti_coefficients(const SeriesElement& e) {
  CoefficientTable table;
  for (const auto& [curve, series] : e.terms) {
    table.order = series.order();
    for (int i = 0; i <= series.order(); ++i)
      if (series[i] != 0) table.rows.emplace_back(i, curve, series[i]);
  }
  std::sort(table.rows.begin(), table.rows.end(),
            [](const auto& a, const auto& b) {
              return std::tie(std::get<0>(a), std::get<1>(a)) <
                     std::tie(std::get<0>(b), std::get<1>(b));
            });
  return table;
}

namespace {

struct Slot {
  int arc = -1;
  int end = -1;  // 0 = tail, 1 = head
};

std::vector<std::array<Slot, 4>> slot_table(const Diagram& d) {
  std::vector<std::array<Slot, 4>> slots(d.num_crossings);
  for (size_t a = 0; a < d.arcs.size(); ++a) {
    if (d.arcs[a].tail) slots[d.arcs[a].tail->crossing][d.arcs[a].tail->port] = {int(a), 0};
    if (d.arcs[a].head) slots[d.arcs[a].head->crossing][d.arcs[a].head->port] = {int(a), 1};
  }
  return slots;
}

}  // namespace

std::vector<int> propagate_orientations(const Diagram& d) {
  const auto slots = slot_table(d);
  std::vector<int> dirs(d.arcs.size(), 0);
  for (size_t seed = 0; seed < d.arcs.size(); ++seed) {
    if (dirs[seed] != 0) continue;
    if (d.arcs[seed].is_free_loop()) {
      dirs[seed] = 1;
      continue;
    }
    dirs[seed] = 1;
    int cur = int(seed), cur_dir = 1;
    while (true) {
      const ArcEnd exit = cur_dir > 0 ? *d.arcs[cur].head : *d.arcs[cur].tail;
      const Slot next = slots[exit.crossing][kThrough[exit.port]];
      const int next_dir = next.end == 0 ? 1 : -1;  // tail slot: flow continues outward
      if (dirs[next.arc] != 0) break;               // component closed up
      dirs[next.arc] = next_dir;
      cur = next.arc;
      cur_dir = next_dir;
    }
  }
  return dirs;
}

int writhe(const Diagram& d) {
  if (d.surface != SurfaceKind::disk)
    throw std::invalid_argument("writhe: defined for disk diagrams only");
  const auto slots = slot_table(d);
  const std::vector<int> dirs = propagate_orientations(d);

  auto incoming = [&](int c, int p) {
    const Slot s = slots[c][p];
    return (s.end == 1) == (dirs[s.arc] > 0);  // arc flow ends here
  };

  int total = 0;
  for (int c = 0; c < d.num_crossings; ++c) {
    const int under_in = incoming(c, 0) ? 0 : 2;
    const int over_in = incoming(c, 1) ? 1 : 3;
    // A crossing whose kink carries the bracket factor -A^3 has under/over
    // entries (0,3) or (2,1); it counts -1 so that t^{3w} undoes the factor.
    const bool minus = (under_in == 0 && over_in == 3) || (under_in == 2 && over_in == 1);
    total += minus ? -1 : 1;
  }
  return total;
}

TruncatedSeries jones(const Diagram& d, int order, const BracketOptions& opts) {
  if (d.surface != SurfaceKind::disk)
    throw std::invalid_argument("jones: defined for disk diagrams only");
  const SkeinElement bracket = bracket_resolve(d, opts);
  const LaurentPolynomial* coeff = bracket.coefficient(Multicurve::empty(SurfaceKind::disk));
  if (coeff == nullptr) return TruncatedSeries(order);

  const int w = writhe(d);
  // t^{3w} with t = -A is the monomial (-1)^w A^{3w}.
  const LaurentPolynomial normalizer = LaurentPolynomial::monomial(w % 2 == 0 ? 1 : -1, 3 * w);
  return expand_laurent(*coeff * normalizer, order);
}

SkeinElement cable(SurfaceKind surface, const std::vector<CableComponent>& components,
                   const BracketOptions& opts, ProductCache* cache) {
  SkeinElement acc =
      SkeinElement::basis(Multicurve::empty(surface), LaurentPolynomial::from_int(1));
  for (const CableComponent& part : components) {
    if (part.count < 0) throw std::invalid_argument("cable: negative copy count");
    if (part.count == 0) continue;  // zero copies of any knot is the empty link
    if (part.trivial_circle) {
      acc = LaurentPolynomial::loop_value().pow(part.count) * acc;
      continue;
    }
    if (part.curve.surface != surface)
      throw std::invalid_argument("cable: component from a different surface");
    if (part.curve.is_empty() || part.curve.mult != 1)
      throw std::invalid_argument("cable: components must be knots (multiplicity 1)");
    Multicurve copies = part.curve;
    copies.mult = part.count;
    acc = skein_mul(acc, SkeinElement::basis(copies, LaurentPolynomial::from_int(1)), opts, cache);
  }
  return acc;
}

namespace {

using SeriesVector = std::map<Multicurve, TruncatedSeries>;

void vec_add_scaled(SeriesVector& v, const TruncatedSeries& scale, const SeriesVector& w,
                    int order) {
  for (const auto& [key, series] : w) {
    auto it = v.find(key);
    if (it == v.end()) it = v.emplace(key, TruncatedSeries(order)).first;
    it->second = it->second + scale * series;
    if (it->second.is_zero()) v.erase(it);
  }
}

SeriesVector to_vector(const SeriesElement& e) {
  SeriesVector v;
  for (const auto& [curve, series] : e.terms)
    if (!series.is_zero()) v.emplace(curve, series);
  return v;
}

struct PivotColumn {
  Multicurve row;
  SeriesVector column;                   // reduced column, unit entry at `row`
  std::map<int, TruncatedSeries> words;  // expression in original word indices
};

void expr_add_scaled(std::map<int, TruncatedSeries>& e, const TruncatedSeries& scale,
                     const std::map<int, TruncatedSeries>& w, int order) {
  for (const auto& [idx, series] : w) {
    auto it = e.find(idx);
    if (it == e.end()) it = e.emplace(idx, TruncatedSeries(order)).first;
    it->second = it->second + scale * series;
    if (it->second.is_zero()) e.erase(it);
  }
}

}  // namespace

SpanResult span_check(const std::vector<Multicurve>& generators, const Multicurve& target,
                      int degree_bound, int order, const BracketOptions& opts,
                      ProductCache* cache) {
  if (target.surface != SurfaceKind::torus)
    throw std::invalid_argument("span_check: torus targets only");
  for (const Multicurve& g : generators) {
    if (g.surface != SurfaceKind::torus || g.is_empty() || g.mult != 1)
      throw std::invalid_argument("span_check: generators must be torus knots (multiplicity 1)");
  }
  if (degree_bound < 0 || degree_bound > 6)
    throw std::invalid_argument("span_check: degree bound must lie in [0, 6]");

  const int g = static_cast<int>(generators.size());
  const SkeinElement unit =
      SkeinElement::basis(Multicurve::empty(SurfaceKind::torus), LaurentPolynomial::from_int(1));

  // Words over the generators in length-then-lexicographic order.
  std::vector<std::vector<int>> words;
  words.push_back({});
  for (int len = 1; len <= degree_bound && g > 0; ++len) {
    std::vector<int> word(len, 0);
    while (true) {
      words.push_back(word);
      int i = len - 1;
      while (i >= 0 && word[i] == g - 1) word[i--] = 0;
      if (i < 0) break;
      ++word[i];
    }
  }

  // Expand each word's product and run a column-echelon elimination with
  // unit pivots (constant term invertible in Q[h]/(h^{N+1})).
  std::vector<PivotColumn> pivots;
  const TruncatedSeries one = TruncatedSeries::from_rational(1, order);
  for (size_t wi = 0; wi < words.size(); ++wi) {
    SkeinElement product = unit;
    for (int idx : words[wi])
      product = skein_mul(
          product, SkeinElement::basis(generators[idx], LaurentPolynomial::from_int(1)), opts,
          cache);
    SeriesVector column = to_vector(expand_element(product, order));
    std::map<int, TruncatedSeries> expr;
    expr.emplace(int(wi), one);
    for (const PivotColumn& p : pivots) {
      auto it = column.find(p.row);
      if (it == column.end()) continue;
      const TruncatedSeries scale = -it->second;
      vec_add_scaled(column, scale, p.column, order);
      expr_add_scaled(expr, scale, p.words, order);
    }
    // Choose a row where the entry is a unit.
    auto pick = column.end();
    for (auto it = column.begin(); it != column.end(); ++it)
      if (it->second[0] != 0) {
        pick = it;
        break;
      }
    if (pick == column.end()) continue;
    const TruncatedSeries inv = pick->second.inverse();
    SeriesVector scaled;
    for (const auto& [key, series] : column) scaled.emplace(key, inv * series);
    std::map<int, TruncatedSeries> scaled_expr;
    for (const auto& [idx, series] : expr) scaled_expr.emplace(idx, inv * series);
    pivots.push_back({pick->first, std::move(scaled), std::move(scaled_expr)});
  }

  // Reduce the target against the pivot columns.
  SeriesVector residual =
      to_vector(expand_element(SkeinElement::basis(target, LaurentPolynomial::from_int(1)), order));
  std::map<int, TruncatedSeries> solution;
  for (const PivotColumn& p : pivots) {
    auto it = residual.find(p.row);
    if (it == residual.end()) continue;
    const TruncatedSeries c = it->second;
    vec_add_scaled(residual, -c, p.column, order);
    expr_add_scaled(solution, c, p.words, order);
  }
  if (!residual.empty()) return {};

  // Verify the witness by direct recomputation before reporting it.
  SeriesElement check = SeriesElement::zero(SurfaceKind::torus);
  SpanResult result;
  result.success = true;
  for (const auto& [wi, coeff] : solution) {
    if (coeff.is_zero()) continue;
    SkeinElement product = unit;
    for (int idx : words[wi])
      product = skein_mul(
          product, SkeinElement::basis(generators[idx], LaurentPolynomial::from_int(1)), opts,
          cache);
    const SeriesElement expanded = expand_element(product, order);
    for (const auto& [curve, series] : expanded.terms) check.add_term(curve, coeff * series);
    result.witness.push_back({words[wi], coeff});
  }
  const SeriesElement want =
      expand_element(SkeinElement::basis(target, LaurentPolynomial::from_int(1)), order);
  if (!(check == want))
    throw std::logic_error("span_check: witness failed verification");
  return result;
}

}  // namespace skein
