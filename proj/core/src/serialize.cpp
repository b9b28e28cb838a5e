#include "skein/serialize.hpp"

#include <cctype>
#include <cstdlib>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace skein {

namespace {

std::string trimmed(const std::string& s) {
  std::size_t lo = 0, hi = s.size();
  while (lo < hi && std::isspace(static_cast<unsigned char>(s[lo]))) ++lo;
  while (hi > lo && std::isspace(static_cast<unsigned char>(s[hi - 1]))) --hi;
  return s.substr(lo, hi - lo);
}

std::string power_text(const std::string& var, int k) {
  if (k == 1) return var;
  return var + "^" + std::to_string(k);
}

// One signed monomial in a sum; `body` excludes the sign.
struct TermText {
  bool negative = false;
  std::string body;
};

std::string join_terms(const std::vector<TermText>& terms) {
  std::string out;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (i == 0)
      out += terms[i].negative ? "-" : "";
    else
      out += terms[i].negative ? " - " : " + ";
    out += terms[i].body;
  }
  return out;
}

// Splits "a + b - c" into signed chunks, honoring a leading attached sign.
std::vector<TermText> split_terms(const std::string& text) {
  std::vector<TermText> out;
  std::string t = trimmed(text);
  if (t.empty()) throw std::invalid_argument("empty expression");
  TermText cur;
  std::size_t i = 0;
  if (t[0] == '-') {
    cur.negative = true;
    ++i;
  } else if (t[0] == '+') {
    ++i;
  }
  for (; i < t.size(); ++i) {
    if (t[i] == ' ' && i + 2 < t.size() && (t[i + 1] == '+' || t[i + 1] == '-') && t[i + 2] == ' ') {
      out.push_back(cur);
      cur = {t[i + 1] == '-', ""};
      i += 2;
      continue;
    }
    cur.body += t[i];
  }
  out.push_back(cur);
  for (TermText& term : out) {
    term.body = trimmed(term.body);
    if (term.body.empty()) throw std::invalid_argument("malformed expression '" + text + "'");
  }
  return out;
}

// Splits a term into magnitude and variable-power parts: "3*A^-2", "A", "5".
struct MonomialText {
  std::string magnitude;  // empty means 1
  int power = 0;
};

MonomialText split_monomial(const std::string& body, char var, const std::string& context) {
  MonomialText m;
  std::string power_part;
  const std::size_t star = body.find('*');
  if (star != std::string::npos) {
    m.magnitude = trimmed(body.substr(0, star));
    power_part = trimmed(body.substr(star + 1));
    if (m.magnitude.empty() || power_part.empty())
      throw std::invalid_argument(context + ": malformed term '" + body + "'");
  } else if (!body.empty() && body[0] == var) {
    power_part = body;
  } else {
    m.magnitude = body;
  }
  if (power_part.empty()) {
    m.power = 0;
    return m;
  }
  if (power_part[0] != var)
    throw std::invalid_argument(context + ": malformed term '" + body + "'");
  if (power_part.size() == 1) {
    m.power = 1;
    return m;
  }
  if (power_part[1] != '^')
    throw std::invalid_argument(context + ": malformed term '" + body + "'");
  const std::string digits = power_part.substr(2);
  std::size_t used = 0;
  try {
    m.power = std::stoi(digits, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument(context + ": bad exponent in '" + body + "'");
  }
  if (used != digits.size())
    throw std::invalid_argument(context + ": bad exponent in '" + body + "'");
  return m;
}

Int parse_int(const std::string& text, const std::string& context) {
  const std::string t = trimmed(text);
  if (t.empty() || (t.size() == 1 && (t[0] == '+' || t[0] == '-')))
    throw std::invalid_argument(context + ": bad integer '" + text + "'");
  for (std::size_t i = (t[0] == '+' || t[0] == '-') ? 1 : 0; i < t.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(t[i])))
      throw std::invalid_argument(context + ": bad integer '" + text + "'");
  return Int(t);
}

template <typename Element>
std::string element_text(const Element& e) {
  if (e.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [curve, coeff] : e.terms) {
    if (!first) out += "\n";
    first = false;
    out += to_text(coeff) + " * " + to_text(curve);
  }
  return out;
}

}  // namespace

std::string to_text(const Rational& r) { return r.str(); }

std::string to_text(const LaurentPolynomial& p) {
  if (p.terms().empty()) return "0";
  std::vector<TermText> terms;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const auto& [k, c] = *it;
    TermText t;
    t.negative = c < 0;
    const Int mag = t.negative ? Int(-c) : c;
    if (k == 0)
      t.body = mag.str();
    else if (mag == 1)
      t.body = power_text("A", k);
    else
      t.body = mag.str() + "*" + power_text("A", k);
    terms.push_back(t);
  }
  return join_terms(terms);
}

std::string to_text(const TruncatedSeries& s) {
  std::vector<TermText> terms;
  for (int k = 0; k <= s.order(); ++k) {
    const Rational& c = s[k];
    if (c == 0) continue;
    TermText t;
    t.negative = c < 0;
    const Rational mag = t.negative ? Rational(-c) : c;
    if (k == 0)
      t.body = mag.str();
    else if (mag == 1)
      t.body = power_text("h", k);
    else
      t.body = mag.str() + "*" + power_text("h", k);
    terms.push_back(t);
  }
  if (terms.empty()) terms.push_back({false, "0"});
  terms.push_back({false, "O(h^" + std::to_string(s.order() + 1) + ")"});
  return join_terms(terms);
}

std::string to_text(const Multicurve& m) {
  if (m.is_empty()) return "empty";
  if (m.surface == SurfaceKind::annulus) return m.mult == 1 ? "z" : "z^" + std::to_string(m.mult);
  std::string out = "(" + std::to_string(m.p) + "," + std::to_string(m.q) + ")";
  if (m.mult > 1) out += "^" + std::to_string(m.mult);
  return out;
}

std::string to_text(const SkeinElement& e) { return element_text(e); }
std::string to_text(const SeriesElement& e) { return element_text(e); }
std::string to_text(const CharacterElement& e) { return element_text(e); }

Rational parse_rational(const std::string& text) {
  const std::string t = trimmed(text);
  const std::size_t slash = t.find('/');
  if (slash == std::string::npos) return Rational(parse_int(t, "rational"));
  const Int num = parse_int(t.substr(0, slash), "rational");
  const Int den = parse_int(t.substr(slash + 1), "rational");
  if (den == 0) throw std::invalid_argument("rational: zero denominator in '" + text + "'");
  return Rational(num) / Rational(den);
}

LaurentPolynomial parse_laurent(const std::string& text) {
  LaurentPolynomial out;
  for (const TermText& term : split_terms(text)) {
    const MonomialText m = split_monomial(term.body, 'A', "laurent");
    Int mag = m.magnitude.empty() ? Int(1) : parse_int(m.magnitude, "laurent");
    out.add_term(m.power, term.negative ? Int(-mag) : mag);
  }
  return out;
}

TruncatedSeries parse_series(const std::string& text) {
  std::vector<TermText> terms = split_terms(text);
  if (terms.empty() || terms.back().negative || terms.back().body.substr(0, 4) != "O(h^" ||
      terms.back().body.back() != ')')
    throw std::invalid_argument("series: missing remainder term in '" + text + "'");
  const std::string bound = terms.back().body.substr(4, terms.back().body.size() - 5);
  std::size_t used = 0;
  int order = 0;
  try {
    order = std::stoi(bound, &used) - 1;
  } catch (const std::exception&) {
    throw std::invalid_argument("series: bad remainder in '" + text + "'");
  }
  if (used != bound.size() || order < 0)
    throw std::invalid_argument("series: bad remainder in '" + text + "'");
  terms.pop_back();

  TruncatedSeries out(order);
  for (const TermText& term : terms) {
    const MonomialText m = split_monomial(term.body, 'h', "series");
    if (m.power < 0 || m.power > order)
      throw std::invalid_argument("series: power out of range in '" + text + "'");
    Rational mag = m.magnitude.empty() ? Rational(1) : parse_rational(m.magnitude);
    if (term.negative) mag = -mag;
    out.set(m.power, out[m.power] + mag);
  }
  return out;
}

Multicurve parse_multicurve(const std::string& text, SurfaceKind empty_surface) {
  const std::string t = trimmed(text);
  if (t == "empty") return Multicurve::empty(empty_surface);
  if (!t.empty() && t[0] == 'z') {
    if (t == "z") return Multicurve::core(1);
    if (t.size() > 2 && t[1] == '^') {
      std::size_t used = 0;
      int n = 0;
      try {
        n = std::stoi(t.substr(2), &used);
      } catch (const std::exception&) {
        throw std::invalid_argument("multicurve: bad winding in '" + text + "'");
      }
      if (used == t.size() - 2 && n >= 1) return Multicurve::core(n);
    }
    throw std::invalid_argument("multicurve: bad winding in '" + text + "'");
  }
  if (t.empty() || t[0] != '(')
    throw std::invalid_argument("multicurve: expected 'empty', 'z^n', or '(p,q)^m', got '" + text + "'");
  const std::size_t close = t.find(')');
  const std::size_t comma = t.find(',');
  if (close == std::string::npos || comma == std::string::npos || comma > close)
    throw std::invalid_argument("multicurve: malformed class in '" + text + "'");
  int p = 0, q = 0, mult = 1;
  try {
    std::size_t up = 0, uq = 0;
    const std::string ps = trimmed(t.substr(1, comma - 1));
    const std::string qs = trimmed(t.substr(comma + 1, close - comma - 1));
    p = std::stoi(ps, &up);
    q = std::stoi(qs, &uq);
    if (up != ps.size() || uq != qs.size())
      throw std::invalid_argument("");
  } catch (const std::exception&) {
    throw std::invalid_argument("multicurve: malformed class in '" + text + "'");
  }
  std::string rest = trimmed(t.substr(close + 1));
  if (!rest.empty()) {
    if (rest[0] != '^')
      throw std::invalid_argument("multicurve: malformed multiplicity in '" + text + "'");
    std::size_t used = 0;
    try {
      mult = std::stoi(rest.substr(1), &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("multicurve: malformed multiplicity in '" + text + "'");
    }
    if (used != rest.size() - 1 || mult < 1)
      throw std::invalid_argument("multicurve: malformed multiplicity in '" + text + "'");
  }
  try {
    return Multicurve::torus_class(p, q, mult);
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(std::string(e.what()) + " in '" + text + "'");
  }
}

}  // namespace skein
