#include "skein/diagram.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <map>
#include <numeric>
#include <sstream>

namespace skein {

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

int parse_int(const std::string& s, int line) {
  try {
    size_t pos = 0;
    int v = std::stoi(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw ParseError(line, "expected an integer, got '" + s + "'");
  }
}

// "(a,b)" -> {a, b}; "()" -> {}
std::vector<int> parse_counters(const std::string& s, int line) {
  std::string t = trim(s);
  if (t.size() < 2 || t.front() != '(' || t.back() != ')')
    throw ParseError(line, "expected counters in parentheses, got '" + t + "'");
  std::string inner = trim(t.substr(1, t.size() - 2));
  std::vector<int> out;
  if (inner.empty()) return out;
  for (const auto& part : split(inner, ',')) out.push_back(parse_int(trim(part), line));
  return out;
}

bool is_label(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

struct LabelSet {
  std::map<std::string, std::string> parent;

  std::string find(const std::string& x) {
    auto it = parent.find(x);
    if (it == parent.end() || it->second == x) return x;
    std::string r = find(it->second);
    parent[x] = r;
    return r;
  }

  void unite(const std::string& a, const std::string& b) { parent[find(a)] = find(b); }
};

}  // namespace

Diagram parse_diagram(const std::string& text) {
  std::optional<SurfaceKind> surface;
  int num_crossings = 0;
  // label occurrences at crossing ports, in statement order
  std::map<std::string, std::vector<ArcEnd>> occurrences;
  std::vector<std::string> label_order;
  LabelSet aliases;
  std::vector<std::pair<std::string, std::vector<int>>> counter_decls;
  std::vector<int> counter_decl_lines;
  std::vector<std::vector<int>> loops;
  std::map<std::string, int> crossing_ids;

  auto note_label = [&](const std::string& lab, int crossing, int port, int line) {
    if (!is_label(lab)) throw ParseError(line, "bad arc label '" + lab + "'");
    if (occurrences.find(lab) == occurrences.end()) label_order.push_back(lab);
    occurrences[lab].push_back(ArcEnd{crossing, port});
  };

  auto add_crossing_ports = [&](const std::vector<std::string>& labels, int line) {
    if (labels.size() != 4) throw ParseError(line, "a crossing needs exactly 4 port labels");
    int c = num_crossings++;
    for (int port = 0; port < 4; ++port) note_label(trim(labels[port]), c, port, line);
    return c;
  };

  auto require_surface = [&](int line) -> SurfaceKind {
    if (!surface) throw ParseError(line, "the surface statement must come first");
    return *surface;
  };

  int line_no = 0;
  std::istringstream in(text);
  std::string raw;
  while (std::getline(in, raw)) {
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw = raw.substr(0, hash);
    for (const auto& piece : split(raw, ';')) {
      std::string stmt = trim(piece);
      if (stmt.empty()) continue;

      if (stmt.rfind("surface", 0) == 0) {
        std::string arg = trim(stmt.substr(7));
        if (surface) throw ParseError(line_no, "duplicate surface statement");
        if (arg == "disk") surface = SurfaceKind::disk;
        else if (arg == "annulus") surface = SurfaceKind::annulus;
        else if (arg == "torus") surface = SurfaceKind::torus;
        else throw ParseError(line_no, "unknown surface '" + arg + "'");
        continue;
      }

      if (stmt.rfind("crossing", 0) == 0) {
        require_surface(line_no);
        auto colon = stmt.find(':');
        if (colon == std::string::npos) throw ParseError(line_no, "crossing statement needs ':'");
        std::string id = trim(stmt.substr(8, colon - 8));
        if (!is_label(id)) throw ParseError(line_no, "bad crossing id '" + id + "'");
        if (crossing_ids.count(id)) throw ParseError(line_no, "duplicate crossing '" + id + "'");
        std::string rest = trim(stmt.substr(colon + 1));
        if (rest.rfind("ports", 0) != 0)
          throw ParseError(line_no, "crossing statement needs 'ports'");
        crossing_ids[id] = add_crossing_ports(split(trim(rest.substr(5)), ','), line_no);
        continue;
      }

      if (stmt.rfind("X[", 0) == 0) {
        if (require_surface(line_no) != SurfaceKind::disk)
          throw ParseError(line_no, "PD crossings are only supported on the disk");
        if (stmt.back() != ']') throw ParseError(line_no, "unterminated PD crossing");
        add_crossing_ports(split(stmt.substr(2, stmt.size() - 3), ','), line_no);
        continue;
      }

      if (stmt.rfind("arcs", 0) == 0) {
        for (const auto& item : split(trim(stmt.substr(4)), ',')) {
          std::string t = trim(item);
          auto sp = t.rfind(" joined");
          if (sp == std::string::npos || sp + 7 != t.size())
            throw ParseError(line_no, "expected '<a>-<b> joined'");
          auto pair = split(trim(t.substr(0, sp)), '-');
          if (pair.size() != 2) throw ParseError(line_no, "expected '<a>-<b> joined'");
          aliases.unite(trim(pair[0]), trim(pair[1]));
        }
        continue;
      }

      if (stmt.rfind("arc ", 0) == 0) {
        auto colon = stmt.find(':');
        if (colon == std::string::npos) throw ParseError(line_no, "arc statement needs ':'");
        std::string lab = trim(stmt.substr(4, colon - 4));
        std::string rest = trim(stmt.substr(colon + 1));
        if (rest.rfind("counters", 0) != 0)
          throw ParseError(line_no, "arc statement needs 'counters'");
        counter_decls.emplace_back(lab, parse_counters(trim(rest.substr(8)), line_no));
        counter_decl_lines.push_back(line_no);
        continue;
      }

      if (stmt == "loop" || stmt.rfind("loop:", 0) == 0 || stmt.rfind("loop ", 0) == 0) {
        SurfaceKind s = require_surface(line_no);
        std::vector<int> ctr(counter_arity(s), 0);
        auto colon = stmt.find(':');
        if (colon != std::string::npos) {
          std::string rest = trim(stmt.substr(colon + 1));
          if (rest.rfind("counters", 0) != 0)
            throw ParseError(line_no, "loop statement needs 'counters'");
          ctr = parse_counters(trim(rest.substr(8)), line_no);
        }
        if (static_cast<int>(ctr.size()) != counter_arity(s))
          throw ParseError(line_no, "loop counters do not match the surface");
        loops.push_back(ctr);
        continue;
      }

      if (stmt.rfind("curve", 0) == 0) {
        if (require_surface(line_no) != SurfaceKind::torus)
          throw ParseError(line_no, "curve shorthand is only supported on the torus");
        auto xpos = stmt.rfind('x');
        if (xpos == std::string::npos) throw ParseError(line_no, "expected 'curve (p,q) x<m>'");
        auto pq = parse_counters(trim(stmt.substr(5, xpos - 5)), line_no);
        if (pq.size() != 2) throw ParseError(line_no, "expected a torus class (p,q)");
        int m = parse_int(trim(stmt.substr(xpos + 1)), line_no);
        if (m < 1) throw ParseError(line_no, "curve multiplicity must be >= 1");
        if (pq[0] == 0 && pq[1] == 0) throw ParseError(line_no, "curve class must be nonzero");
        if (std::gcd(std::abs(pq[0]), std::abs(pq[1])) != 1)
          throw ParseError(line_no, "curve class must be primitive");
        for (int i = 0; i < m; ++i) loops.push_back(pq);
        continue;
      }

      if (stmt.rfind("core", 0) == 0) {
        if (require_surface(line_no) != SurfaceKind::annulus)
          throw ParseError(line_no, "core shorthand is only supported on the annulus");
        auto xpos = stmt.rfind('x');
        if (xpos == std::string::npos) throw ParseError(line_no, "expected 'core x<n>'");
        int n = parse_int(trim(stmt.substr(xpos + 1)), line_no);
        if (n < 1) throw ParseError(line_no, "core multiplicity must be >= 1");
        for (int i = 0; i < n; ++i) loops.push_back({1});
        continue;
      }

      throw ParseError(line_no, "unrecognized statement '" + stmt + "'");
    }
  }

  if (!surface) throw ParseError(line_no, "missing surface statement");

  Diagram d;
  d.surface = *surface;
  d.num_crossings = num_crossings;

  // Merge aliased labels, preserving first-occurrence order of the root.
  std::map<std::string, std::vector<ArcEnd>> merged;
  std::vector<std::string> root_order;
  for (const auto& lab : label_order) {
    std::string root = aliases.find(lab);
    if (merged.find(root) == merged.end()) root_order.push_back(root);
    auto& ends = merged[root];
    const auto& occ = occurrences[lab];
    ends.insert(ends.end(), occ.begin(), occ.end());
  }

  std::map<std::string, std::vector<int>> counters_by_root;
  for (size_t i = 0; i < counter_decls.size(); ++i) {
    std::string root = aliases.find(counter_decls[i].first);
    if (merged.find(root) == merged.end())
      throw ParseError(counter_decl_lines[i],
                       "arc '" + counter_decls[i].first + "' is not attached to any crossing");
    if (counters_by_root.count(root))
      throw ParseError(counter_decl_lines[i],
                       "duplicate counters for arc '" + counter_decls[i].first + "'");
    counters_by_root[root] = counter_decls[i].second;
  }

  int arity = counter_arity(d.surface);
  for (const auto& root : root_order) {
    const auto& ends = merged[root];
    if (ends.size() != 2)
      throw ParseError(line_no, "arc '" + root + "' must have exactly 2 ends, has " +
                                    std::to_string(ends.size()));
    Arc a;
    a.tail = ends[0];
    a.head = ends[1];
    auto it = counters_by_root.find(root);
    a.counters = (it != counters_by_root.end()) ? it->second : std::vector<int>(arity, 0);
    if (static_cast<int>(a.counters.size()) != arity)
      throw ParseError(line_no, "counters of arc '" + root + "' do not match the surface");
    d.arcs.push_back(std::move(a));
  }
  for (const auto& ctr : loops) {
    Arc a;
    a.counters = ctr;
    d.arcs.push_back(std::move(a));
  }

  validate_diagram(d);
  normalize_ports(d);
  return d;
}

void validate_diagram(const Diagram& d) {
  int arity = counter_arity(d.surface);
  std::vector<char> seen(static_cast<size_t>(d.num_crossings) * 4, 0);
  for (const auto& arc : d.arcs) {
    if (arc.tail.has_value() != arc.head.has_value())
      throw std::invalid_argument("arc with exactly one end");
    if (static_cast<int>(arc.counters.size()) != arity)
      throw std::invalid_argument("arc counters do not match the surface");
    for (const auto* e : {&arc.tail, &arc.head}) {
      if (!e->has_value()) continue;
      const ArcEnd& end = **e;
      if (end.crossing < 0 || end.crossing >= d.num_crossings || end.port < 0 || end.port > 3)
        throw std::invalid_argument("arc end out of range");
      auto& flag = seen[static_cast<size_t>(end.crossing) * 4 + end.port];
      if (flag) throw std::invalid_argument("two arc ends at one crossing port");
      flag = 1;
    }
  }
  for (char f : seen)
    if (!f) throw std::invalid_argument("unoccupied crossing port");
}

namespace {

// slot = crossing*4 + port  ->  (arc index, end: 0 tail / 1 head)
std::vector<std::pair<int, int>> slot_map(const Diagram& d) {
  std::vector<std::pair<int, int>> slots(static_cast<size_t>(d.num_crossings) * 4, {-1, -1});
  for (int i = 0; i < static_cast<int>(d.arcs.size()); ++i) {
    const Arc& a = d.arcs[i];
    if (a.is_free_loop()) continue;
    slots[static_cast<size_t>(a.tail->crossing) * 4 + a.tail->port] = {i, 0};
    slots[static_cast<size_t>(a.head->crossing) * 4 + a.head->port] = {i, 1};
  }
  return slots;
}

void rotate_crossing(Diagram& d, int crossing, int amount) {
  for (auto& arc : d.arcs) {
    for (auto* e : {&arc.tail, &arc.head}) {
      if (e->has_value() && (*e)->crossing == crossing)
        (*e)->port = ((*e)->port + amount) % 4;
    }
  }
}

}  // namespace

void normalize_ports(Diagram& d) {
  auto slots = slot_map(d);
  for (int c = 0; c < d.num_crossings; ++c) {
    auto p0 = slots[static_cast<size_t>(c) * 4 + 0];
    auto p2 = slots[static_cast<size_t>(c) * 4 + 2];
    if (p0.first < 0 || p2.first < 0) continue;
    if (p2 < p0) {
      rotate_crossing(d, c, 2);
      std::swap(slots[static_cast<size_t>(c) * 4 + 0], slots[static_cast<size_t>(c) * 4 + 2]);
      std::swap(slots[static_cast<size_t>(c) * 4 + 1], slots[static_cast<size_t>(c) * 4 + 3]);
    }
  }
}

Diagram mirror(const Diagram& d) {
  Diagram m = d;
  for (auto& arc : m.arcs)
    for (auto* e : {&arc.tail, &arc.head})
      if (e->has_value()) (*e)->port = ((*e)->port + 3) % 4;
  normalize_ports(m);
  return m;
}

Diagram switch_crossing(const Diagram& d, int crossing) {
  if (crossing < 0 || crossing >= d.num_crossings)
    throw std::invalid_argument("switch_crossing: no such crossing");
  Diagram m = d;
  rotate_crossing(m, crossing, 3);
  normalize_ports(m);
  return m;
}

namespace {

// partner[choice][port]: the port joined to `port` under the smoothing
constexpr int kPartner[2][4] = {{1, 0, 3, 2}, {3, 2, 1, 0}};
constexpr int kThrough[4] = {2, 3, 0, 1};

StateCurves trace_with(const Diagram& d, const int* partner_of_port_per_choice,
                       const SmoothingChoice* choice) {
  StateCurves out;
  auto slots = slot_map(d);
  std::vector<char> visited(d.arcs.size(), 0);
  int arity = counter_arity(d.surface);

  for (size_t i = 0; i < d.arcs.size(); ++i) {
    if (d.arcs[i].is_free_loop()) {
      visited[i] = 1;
      out.components.push_back({d.arcs[i].counters});
    }
  }

  for (size_t start = 0; start < d.arcs.size(); ++start) {
    if (visited[start]) continue;
    StateCurve comp;
    comp.counters.assign(arity, 0);
    size_t a = start;
    bool fwd = true;
    do {
      visited[a] = 1;
      const Arc& arc = d.arcs[a];
      for (int j = 0; j < arity; ++j) comp.counters[j] += fwd ? arc.counters[j] : -arc.counters[j];
      const ArcEnd& e = fwd ? *arc.head : *arc.tail;
      int pair;
      if (choice) {
        pair = kPartner[(*choice)[e.crossing]][e.port];
      } else {
        pair = partner_of_port_per_choice[e.port];
      }
      auto [a2, end2] = slots[static_cast<size_t>(e.crossing) * 4 + pair];
      a = static_cast<size_t>(a2);
      fwd = (end2 == 0);
    } while (!(a == start && fwd));
    out.components.push_back(std::move(comp));
  }
  return out;
}

}  // namespace

StateCurves trace_state(const Diagram& d, const SmoothingChoice& choice) {
  if (static_cast<int>(choice.size()) != d.num_crossings)
    throw std::invalid_argument("trace_state: one smoothing choice per crossing required");
  for (auto c : choice)
    if (c > 1) throw std::invalid_argument("trace_state: choices are 0 (A) or 1 (B)");
  return trace_with(d, nullptr, &choice);
}

std::pair<int, Multicurve> classify_state(SurfaceKind surface, const StateCurves& curves) {
  int trivial = 0;
  bool have_class = false;
  int cp = 0, cq = 0, mult = 0;

  for (const auto& comp : curves.components) {
    bool zero = std::all_of(comp.counters.begin(), comp.counters.end(),
                            [](int c) { return c == 0; });
    if (zero) {
      ++trivial;
      continue;
    }
    int a = comp.counters.size() > 0 ? comp.counters[0] : 0;
    int b = comp.counters.size() > 1 ? comp.counters[1] : 0;
    switch (surface) {
      case SurfaceKind::disk:
        throw TopologyError("classify_state: essential component on the disk");
      case SurfaceKind::annulus:
        if (a != 1 && a != -1)
          throw TopologyError("classify_state: annulus component winds " + std::to_string(a) +
                              " times, not embeddable");
        a = 1;
        b = 0;
        break;
      case SurfaceKind::torus: {
        if (std::gcd(std::abs(a), std::abs(b)) != 1)
          throw TopologyError("classify_state: torus component class (" + std::to_string(a) +
                              "," + std::to_string(b) + ") is not primitive");
        auto [na, nb] = canonical_class(a, b);
        a = na;
        b = nb;
        break;
      }
    }
    if (!have_class) {
      have_class = true;
      cp = a;
      cq = b;
      mult = 1;
    } else if (cp == a && cq == b) {
      ++mult;
    } else {
      throw TopologyError("classify_state: non-parallel essential components (" +
                          std::to_string(cp) + "," + std::to_string(cq) + ") vs (" +
                          std::to_string(a) + "," + std::to_string(b) + ")");
    }
  }

  if (!have_class) return {trivial, Multicurve::empty(surface)};
  if (surface == SurfaceKind::annulus) return {trivial, Multicurve::core(mult)};
  return {trivial, Multicurve::torus_class(cp, cq, mult)};
}

std::vector<std::vector<int>> underlying_loops(const Diagram& d) {
  StateCurves curves = trace_with(d, kThrough, nullptr);
  std::vector<std::vector<int>> out;
  out.reserve(curves.components.size());
  for (auto& c : curves.components) out.push_back(std::move(c.counters));
  return out;
}

}  // namespace skein
