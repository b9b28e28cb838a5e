#include <CLI11.hpp>

#include <complex>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "skein/characters.hpp"
#include "skein/invariants.hpp"
#include "skein/poisson.hpp"
#include "skein/serialize.hpp"
#include "skein/skein.hpp"

using namespace skein;

namespace {

constexpr double kNumericTol = 1e-8;

struct Common {
  int order = 8;
  std::string coeff = "laurent";
  std::string format = "text";
  int max_crossings = 24;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("-N,--order", c.order, "series truncation order")
      ->envname("SKEIN_ORDER")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--coeff", c.coeff, "coefficient display: laurent | hseries")
      ->check(CLI::IsMember({"laurent", "hseries"}));
  cmd->add_option("--format", c.format, "output format: text | machine")
      ->check(CLI::IsMember({"text", "machine"}));
  cmd->add_option("--max-crossings", c.max_crossings, "state-sum crossing bound")
      ->check(CLI::PositiveNumber);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

template <typename Element>
void print_element(const Element& e, const std::string& format) {
  if (format == "machine") {
    std::cout << "surface\t" << surface_name(e.surface) << "\n";
    for (const auto& [curve, coeff] : e.terms)
      std::cout << "term\t" << to_text(curve) << "\t" << to_text(coeff) << "\n";
    return;
  }
  std::cout << to_text(e) << "\n";
}

void print_skein(const SkeinElement& e, const Common& c) {
  if (c.coeff == "hseries") {
    print_element(expand_element(e, c.order), c.format);
    return;
  }
  print_element(e, c.format);
}

std::string complex_text(const std::complex<double>& z) {
  const double re = z.real() == 0 ? 0.0 : z.real();  // flush negative zero
  const double im = z.imag() == 0 ? 0.0 : z.imag();
  std::ostringstream out;
  out.precision(12);
  out << re << " " << im;
  return out.str();
}

// Splits on `sep`, ignoring separators nested inside parentheses.
std::vector<std::string> split_outside_parens(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char ch : s) {
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (ch == sep && depth == 0) {
      out.push_back(cur);
      cur.clear();
      continue;
    }
    cur += ch;
  }
  out.push_back(cur);
  return out;
}

std::string trimmed(const std::string& s) {
  std::size_t lo = 0, hi = s.size();
  while (lo < hi && std::isspace(static_cast<unsigned char>(s[lo]))) ++lo;
  while (hi > lo && std::isspace(static_cast<unsigned char>(s[hi - 1]))) --hi;
  return s.substr(lo, hi - lo);
}

// Combination files are diagram files whose blocks may be prefixed by
// `term <coefficient>` lines; a bare diagram file is one block with
// coefficient 1. Blanking the other blocks keeps global line numbers.
SeriesElement parse_combination(const std::string& text, int order, const BracketOptions& opts) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);

  std::vector<std::pair<std::string, std::vector<int>>> blocks;  // coeff text, line indices
  bool any_term = false;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::string t = trimmed(lines[i]);
    if (t.rfind("term", 0) == 0 && (t.size() == 4 || std::isspace(static_cast<unsigned char>(t[4])))) {
      any_term = true;
      blocks.emplace_back(trimmed(t.substr(4)), std::vector<int>{});
      continue;
    }
    if (blocks.empty()) blocks.emplace_back("1", std::vector<int>{});
    blocks.back().second.push_back(static_cast<int>(i));
  }
  if (!any_term) {
    Diagram d = parse_diagram(text);
    return expand_element(bracket_resolve(d, opts), order);
  }

  SeriesElement total = SeriesElement::zero(SurfaceKind::disk);
  bool first = true;
  for (const auto& [coeff_text, rows] : blocks) {
    if (coeff_text.empty()) throw std::invalid_argument("term: missing coefficient");
    TruncatedSeries coeff(order);
    if (coeff_text.find("O(") != std::string::npos) {
      TruncatedSeries parsed = parse_series(coeff_text);
      if (parsed.order() != order)
        throw std::invalid_argument("term: coefficient order " + std::to_string(parsed.order()) +
                                    " does not match -N " + std::to_string(order));
      coeff = parsed;
    } else if (coeff_text.find('/') != std::string::npos) {
      coeff = TruncatedSeries::from_rational(parse_rational(coeff_text), order);
    } else {
      coeff = expand_laurent(parse_laurent(coeff_text), order);
    }
    std::string block_text;
    std::size_t row = 0;
    for (std::size_t i = 0; i < lines.size(); ++i) {
      const bool mine = row < rows.size() && rows[row] == static_cast<int>(i);
      block_text += mine ? lines[i] : "";
      block_text += '\n';
      if (mine) ++row;
    }
    Diagram d = parse_diagram(block_text);
    SeriesElement piece = coeff * expand_element(bracket_resolve(d, opts), order);
    total = first ? piece : total + piece;
    first = false;
  }
  return total;
}

struct CableSpec {
  SurfaceKind surface = SurfaceKind::disk;
  bool surface_pinned = false;
  std::vector<CableComponent> components;
};

// Comma-separated list of `<knot>*<count>`; knot is `O` (trivial circle),
// `z` (annulus core), or `(p,q)` (torus class). Count defaults to 1.
CableSpec parse_cable_spec(const std::string& text) {
  CableSpec spec;
  for (const std::string& raw : split_outside_parens(text, ',')) {
    const std::string part = trimmed(raw);
    if (part.empty()) throw std::invalid_argument("cable: empty component in '" + text + "'");
    std::string knot = part;
    int count = 1;
    const std::size_t star = part.rfind('*');
    if (star != std::string::npos && part.find(')', star) == std::string::npos) {
      knot = trimmed(part.substr(0, star));
      const std::string count_text = trimmed(part.substr(star + 1));
      std::size_t used = 0;
      try {
        count = std::stoi(count_text, &used);
      } catch (const std::exception&) {
        throw std::invalid_argument("cable: bad count in '" + part + "'");
      }
      if (used != count_text.size() || count < 0)
        throw std::invalid_argument("cable: bad count in '" + part + "'");
    }
    CableComponent comp;
    comp.count = count;
    if (knot == "O") {
      comp.trivial_circle = true;
    } else {
      comp.curve = parse_multicurve(knot);
      if (comp.curve.is_empty() || comp.curve.mult != 1)
        throw std::invalid_argument("cable: components must be knots, got '" + knot + "'");
      if (spec.surface_pinned && spec.surface != comp.curve.surface)
        throw std::invalid_argument("cable: components live on different surfaces");
      spec.surface = comp.curve.surface;
      spec.surface_pinned = true;
    }
    spec.components.push_back(comp);
  }
  return spec;
}

std::string valuation_text(const SeriesValuation& v) { return v.to_string(); }

void print_table(const CoefficientTable& table, const std::string& format) {
  for (const auto& [order, curve, value] : table.rows) {
    if (format == "machine")
      std::cout << "row\t" << order << "\t" << to_text(curve) << "\t" << to_text(value) << "\n";
    else
      std::cout << "(" << order << ", " << to_text(curve) << ", " << to_text(value) << ")\n";
  }
}

std::string witness_expression(const SpanResult& r, const std::vector<Multicurve>& generators) {
  std::string out = "(+";
  for (const SpanTerm& term : r.witness) {
    out += " (* (" + to_text(term.coefficient) + ") (";
    if (term.word.empty()) out += "empty";
    for (std::size_t i = 0; i < term.word.size(); ++i)
      out += (i ? " " : "") + to_text(generators[term.word[i]]);
    out += "))";
  }
  out += ")";
  return out;
}

// Primitive torus classes with |p|, |q| <= bound, in canonical form.
std::vector<Multicurve> primitive_classes(int bound) {
  std::vector<Multicurve> out;
  for (int p = 0; p <= bound; ++p)
    for (int q = -bound; q <= bound; ++q) {
      if (p == 0 && q <= 0) continue;
      if (std::gcd(p, std::abs(q)) != 1) continue;
      out.push_back(Multicurve::torus_class(p, q, 1));
    }
  return out;
}

int run_quantize_check(int max_slope, std::uint64_t seed, int reps, const Common& c) {
  BracketOptions opts;
  opts.max_crossings = c.max_crossings;
  const std::vector<Multicurve> classes = primitive_classes(max_slope);
  const bool machine = c.format == "machine";

  long pair_count = 0;
  for (const Multicurve& x : classes)
    for (const Multicurve& y : classes) {
      CharacterElement lhs = poisson_statesum(x, y, opts);
      CharacterElement rhs = poisson_commutator(x, y, 2, opts);
      if (!(lhs == rhs)) {
        std::cout << (machine ? "check\tproduct-rule\tfail\t" : "product rule: FAIL at ")
                  << to_text(x) << (machine ? "\t" : " , ") << to_text(y) << "\n";
        return 1;
      }
      ++pair_count;
    }
  if (machine)
    std::cout << "check\tproduct-rule\tpass\t" << pair_count << "\n";
  else
    std::cout << "product rule: " << pair_count << " ordered pairs agree\n";

  long morphism_checks = 0, poisson_checks = 0;
  for (int r = 0; r < reps; ++r) {
    TorusRep rep = random_torus_rep(seed + static_cast<std::uint64_t>(r));
    for (const Multicurve& x : classes)
      for (const Multicurve& y : classes) {
        CharacterElement prod = character_mul(CharacterElement::basis(x, Rational(1)),
                                              CharacterElement::basis(y, Rational(1)), opts);
        const std::complex<double> lhs = character_eval(prod, rep);
        const std::complex<double> rhs = curve_value(x, rep) * curve_value(y, rep);
        if (std::abs(lhs - rhs) > kNumericTol) {
          std::cout << (machine ? "check\tmorphism\tfail\t" : "evaluation morphism: FAIL at ")
                    << to_text(x) << (machine ? "\t" : " , ") << to_text(y) << "\n";
          return 1;
        }
        ++morphism_checks;

        const std::complex<double> bracket_lhs =
            character_eval(poisson_statesum(x, y, opts), rep);
        const std::complex<double> bracket_rhs = goldman_numeric(x, y, rep);
        if (std::abs(bracket_lhs - bracket_rhs) > kNumericTol) {
          std::cout << (machine ? "check\tpoisson-map\tfail\t" : "poisson map: FAIL at ")
                    << to_text(x) << (machine ? "\t" : " , ") << to_text(y) << "\n";
          return 1;
        }
        ++poisson_checks;
      }
  }
  if (machine) {
    std::cout << "check\tmorphism\tpass\t" << morphism_checks << "\n";
    std::cout << "check\tpoisson-map\tpass\t" << poisson_checks << "\n";
  } else {
    std::cout << "evaluation morphism: " << morphism_checks << " checks within 1e-08\n";
    std::cout << "poisson map: " << poisson_checks << " checks within 1e-08\n";
    std::cout << "PASS\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kauffman bracket skein algebra calculator for the disk, annulus, and torus"};
  app.require_subcommand(1);

  Common c;

  // bracket <diagram>
  std::string bracket_path;
  CLI::App* cmd_bracket = app.add_subcommand("bracket", "normal form of a diagram's bracket");
  cmd_bracket->add_option("diagram", bracket_path, "diagram file (.dgm)")->required();
  add_common(cmd_bracket, c);

  // normal-form <combination>
  std::string nf_path;
  CLI::App* cmd_nf = app.add_subcommand("normal-form", "series normal form of a diagram combination");
  cmd_nf->add_option("combination", nf_path, "diagram or combination file")->required();
  add_common(cmd_nf, c);

  // product <mc> <mc>
  std::vector<std::string> product_args;
  CLI::App* cmd_product = app.add_subcommand("product", "skein product of two basis multicurves");
  cmd_product->add_option("multicurves", product_args, "two multicurves")->expected(2);
  add_common(cmd_product, c);

  // poisson <mc> <mc> [--method]
  std::vector<std::string> poisson_args;
  std::string method = "statesum";
  CLI::App* cmd_poisson = app.add_subcommand("poisson", "Poisson bracket of two basis multicurves");
  cmd_poisson->add_option("multicurves", poisson_args, "two multicurves")->expected(2);
  cmd_poisson->add_option("--method", method, "statesum | commutator | both")
      ->check(CLI::IsMember({"statesum", "commutator", "both"}));
  add_common(cmd_poisson, c);

  // quantize-check
  int max_slope = 3;
  std::uint64_t seed = 1;
  int reps = 5;
  CLI::App* cmd_quant = app.add_subcommand(
      "quantize-check", "verify the bracket deformation against its classical limit");
  cmd_quant->add_option("--max-slope", max_slope, "class bound")->check(CLI::PositiveNumber);
  cmd_quant->add_option("--seed", seed, "base seed for sampled representations");
  cmd_quant->add_option("--reps", reps, "number of sampled representations")
      ->check(CLI::PositiveNumber);
  add_common(cmd_quant, c);

  // goldman <mc> <mc> --rep <file>
  std::vector<std::string> goldman_args;
  std::string rep_path;
  CLI::App* cmd_goldman =
      app.add_subcommand("goldman", "numeric Poisson pairing on a representation");
  cmd_goldman->add_option("multicurves", goldman_args, "two multicurves")->expected(2);
  cmd_goldman->add_option("--rep", rep_path, "representation file (.rep)")->required();
  add_common(cmd_goldman, c);

  // fti <singular link>
  std::string fti_path;
  bool want_valuation = false, want_table = false;
  int max_double_points = 12;
  CLI::App* cmd_fti = app.add_subcommand("fti", "finite-type data of a singular link");
  cmd_fti->add_option("singular", fti_path, "singular link file (.sng)")->required();
  cmd_fti->add_flag("--valuation", want_valuation, "print only the h-valuation");
  cmd_fti->add_flag("--table", want_table, "print the coefficient table");
  cmd_fti->add_option("--max-double-points", max_double_points, "double point bound")
      ->check(CLI::PositiveNumber);
  add_common(cmd_fti, c);

  // jones <diagram>
  std::string jones_path;
  CLI::App* cmd_jones =
      app.add_subcommand("jones", "framing-normalized bracket series of a disk diagram");
  cmd_jones->add_option("diagram", jones_path, "diagram file (.dgm)")->required();
  add_common(cmd_jones, c);

  // cable <spec>
  std::string cable_text;
  CLI::App* cmd_cable = app.add_subcommand("cable", "parallel copies of knots, multiplied in order");
  cmd_cable->add_option("spec", cable_text, "e.g. \"(1,0)*2,(0,1)\" or \"O*3\"")->required();
  add_common(cmd_cable, c);

  // span --generators --target --degree
  std::string gens_text, target_text;
  int degree = 3;
  CLI::App* cmd_span = app.add_subcommand("span", "express a torus class in terms of generators");
  cmd_span->add_option("--generators", gens_text, "comma-separated torus knots")->required();
  cmd_span->add_option("--target", target_text, "target multicurve")->required();
  cmd_span->add_option("--degree", degree, "maximum product length");
  add_common(cmd_span, c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return 2;
  }

  BracketOptions opts;

  // Stage 1: interpret arguments and load inputs (usage errors exit 2).
  Diagram diagram;
  SingularLink singular;
  std::string combination_text;
  std::vector<Multicurve> curve_args;
  std::vector<Multicurve> generators;
  Multicurve target;
  CableSpec cable_spec;
  TorusRep rep = TorusRep::make(Matrix2::identity(), Matrix2::identity());
  try {
    opts.max_crossings = c.max_crossings;
    if (cmd_bracket->parsed()) diagram = parse_diagram(read_file(bracket_path));
    if (cmd_jones->parsed()) diagram = parse_diagram(read_file(jones_path));
    if (cmd_nf->parsed()) combination_text = read_file(nf_path);
    if (cmd_fti->parsed()) singular = parse_singular_link(read_file(fti_path));
    for (const std::string& arg : product_args)
      curve_args.push_back(parse_multicurve(arg, SurfaceKind::torus));
    for (const std::string& arg : poisson_args)
      curve_args.push_back(parse_multicurve(arg, SurfaceKind::torus));
    for (const std::string& arg : goldman_args)
      curve_args.push_back(parse_multicurve(arg, SurfaceKind::torus));
    if (cmd_goldman->parsed()) rep = parse_torus_rep(read_file(rep_path));
    if (cmd_cable->parsed()) cable_spec = parse_cable_spec(cable_text);
    if (cmd_span->parsed()) {
      for (const std::string& g : split_outside_parens(gens_text, ','))
        generators.push_back(parse_multicurve(trimmed(g), SurfaceKind::torus));
      target = parse_multicurve(target_text, SurfaceKind::torus);
    }
  } catch (const std::exception& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  }

  // Stage 2: compute and print (computation failures exit 1).
  try {
    if (cmd_bracket->parsed()) {
      print_skein(bracket_resolve(diagram, opts), c);
    } else if (cmd_nf->parsed()) {
      print_element(parse_combination(combination_text, c.order, opts), c.format);
    } else if (cmd_product->parsed()) {
      SkeinElement x = SkeinElement::basis(curve_args[0], LaurentPolynomial::from_int(1));
      SkeinElement y = SkeinElement::basis(curve_args[1], LaurentPolynomial::from_int(1));
      print_skein(skein_mul(x, y, opts), c);
    } else if (cmd_poisson->parsed()) {
      CharacterElement ss = CharacterElement::zero(curve_args[0].surface);
      CharacterElement cm = ss;
      if (method != "commutator") ss = poisson_statesum(curve_args[0], curve_args[1], opts);
      if (method != "statesum") cm = poisson_commutator(curve_args[0], curve_args[1], 2, opts);
      if (method == "statesum") {
        print_element(ss, c.format);
      } else if (method == "commutator") {
        print_element(cm, c.format);
      } else if (c.format == "machine") {
        std::cout << "surface\t" << surface_name(ss.surface) << "\n";
        for (const auto& [curve, coeff] : ss.terms)
          std::cout << "statesum\t" << to_text(curve) << "\t" << to_text(coeff) << "\n";
        for (const auto& [curve, coeff] : cm.terms)
          std::cout << "commutator\t" << to_text(curve) << "\t" << to_text(coeff) << "\n";
        std::cout << "verdict\t" << (ss == cm ? "AGREE" : "DISAGREE") << "\n";
        if (!(ss == cm)) return 1;
      } else {
        std::cout << "statesum:\n" << to_text(ss) << "\n";
        std::cout << "commutator:\n" << to_text(cm) << "\n";
        std::cout << (ss == cm ? "AGREE" : "DISAGREE") << "\n";
        if (!(ss == cm)) return 1;
      }
    } else if (cmd_quant->parsed()) {
      return run_quantize_check(max_slope, seed, reps, c);
    } else if (cmd_goldman->parsed()) {
      const std::complex<double> value = goldman_numeric(curve_args[0], curve_args[1], rep);
      if (c.format == "machine")
        std::cout << "value\t" << complex_text(value) << "\n";
      else
        std::cout << complex_text(value) << "\n";
    } else if (cmd_fti->parsed()) {
      SingularOptions sopts;
      sopts.max_points = max_double_points;
      if (want_valuation) {
        SeriesValuation v = fti_valuation(singular, c.order, opts, sopts);
        if (c.format == "machine")
          std::cout << "valuation\t" << (v.exact ? "exact" : "lower") << "\t" << v.value << "\n";
        else
          std::cout << valuation_text(v) << "\n";
      } else if (want_table || true) {
        print_table(fti_coefficients(singular_expansion(singular, c.order, opts, sopts)), c.format);
      }
    } else if (cmd_jones->parsed()) {
      TruncatedSeries series = jones(diagram, c.order, opts);
      if (c.format == "machine") {
        std::cout << "order\t" << series.order() << "\n";
        for (int k = 0; k <= series.order(); ++k)
          if (series[k] != 0) std::cout << "coeff\t" << k << "\t" << to_text(series[k]) << "\n";
      } else {
        std::cout << to_text(series) << "\n";
      }
    } else if (cmd_cable->parsed()) {
      print_skein(cable(cable_spec.surface, cable_spec.components, opts), c);
    } else if (cmd_span->parsed()) {
      SpanResult result = span_check(generators, target, degree, c.order, opts);
      if (!result.success) {
        if (c.format == "machine")
          std::cout << "witness\tnone\n";
        else
          std::cout << "FAILURE: " << to_text(target) << " not spanned at degree " << degree << "\n";
        return 1;
      }
      if (c.format == "machine") {
        std::cout << "witness\t" << result.witness.size() << "\n";
        for (const SpanTerm& term : result.witness) {
          std::cout << "term\t";
          for (std::size_t i = 0; i < term.word.size(); ++i)
            std::cout << (i ? "," : "") << term.word[i];
          if (term.word.empty()) std::cout << "-";
          std::cout << "\t" << to_text(term.coefficient) << "\n";
        }
        std::cout << "expr\t" << witness_expression(result, generators) << "\n";
      } else {
        std::cout << "SUCCESS\n" << witness_expression(result, generators) << "\n";
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
