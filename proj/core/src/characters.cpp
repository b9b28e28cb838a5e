#include "skein/characters.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <random>
#include <sstream>
#include <stdexcept>

namespace skein {

double Matrix2::max_abs() const {
  return std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(d)});
}

Matrix2 Matrix2::power(int k) const {
  Matrix2 base = *this;
  if (k < 0) {
    base = inverse_unimodular();
    k = -k;
  }
  Matrix2 acc = Matrix2::identity();
  while (k > 0) {
    if (k & 1) acc = acc * base;
    base = base * base;
    k >>= 1;
  }
  return acc;
}

Matrix2 mat_exp(const Matrix2& m) {
  int squarings = 0;
  double norm = m.max_abs();
  while (norm > 0.25) {
    norm /= 2;
    ++squarings;
  }
  const Complex scale = std::ldexp(1.0, -squarings);
  const Matrix2 small = scale * m;

  Matrix2 sum = Matrix2::identity();
  Matrix2 term = Matrix2::identity();
  for (int k = 1; k <= 24; ++k) {
    term = (Complex(1.0 / k) * term) * small;
    sum = sum + term;
    if (term.max_abs() < 1e-18) break;
  }
  for (int i = 0; i < squarings; ++i) sum = sum * sum;
  return sum;
}

Matrix2 lie_matrix(const LieVector& v) {
  return {v.eta, v.x, v.y, -v.eta};
}

Complex invariant_pairing(const LieVector& u, const LieVector& v) {
  return -u.x * v.y - u.y * v.x - 2.0 * u.eta * v.eta;
}

LieVector trace_gradient(const Matrix2& m) {
  // Solves B(g, w) = tr(m*w) for all w: tr(m*X) = c, tr(m*H) = a-d,
  // tr(m*Y) = b, so g = (-b, -(a-d)/2, -c).
  return {-m.b, -0.5 * (m.a - m.d), -m.c};
}

TorusRep TorusRep::make(const Matrix2& a, const Matrix2& b, double tol) {
  if (std::abs(a.det() - 1.0) > tol || std::abs(b.det() - 1.0) > tol)
    throw std::invalid_argument("torus representation: matrices must have determinant 1");
  if ((a * b - b * a).max_abs() > tol)
    throw std::invalid_argument("torus representation: matrices must commute");
  return {a, b};
}

Matrix2 TorusRep::holonomy(int p, int q) const {
  return a.power(p) * b.power(q);
}

TorusRep random_torus_rep(std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  auto rc = [&] { return Complex(unit(gen), unit(gen)); };

  // Diagonal commuting pair with eigenvalues bounded away from 0 and infinity.
  const Complex la = std::exp(0.7 * rc());
  const Complex mu = std::exp(0.7 * rc());
  const Matrix2 da{la, 0, 0, 1.0 / la};
  const Matrix2 db{mu, 0, 0, 1.0 / mu};

  // Unimodular conjugator g = [[s, u], [v, (1 + u*v)/s]].
  const Complex u = rc();
  const Complex v = rc();
  const Complex s = std::exp(0.5 * rc());
  const Matrix2 g{s, u, v, (1.0 + u * v) / s};
  const Matrix2 gi = g.inverse_unimodular();

  return TorusRep::make(g * da * gi, g * db * gi, 1e-9);
}

namespace {

double parse_real(const std::string& s, const std::string& where) {
  std::size_t used = 0;
  double value = 0;
  try {
    value = std::stod(s, &used);
  } catch (const std::exception&) {
    throw std::runtime_error("representation file: bad number '" + s + "' in " + where);
  }
  if (used != s.size())
    throw std::runtime_error("representation file: bad number '" + s + "' in " + where);
  return value;
}

// Entries are complex literals: "1.5", "2+0.25i", "3-1i", or "0.5i".
Complex parse_complex_token(const std::string& tok, const std::string& where) {
  std::string s = tok;
  if (!s.empty() && (s.back() == 'i' || s.back() == 'I')) {
    s.pop_back();
    if (s.empty()) throw std::runtime_error("representation file: bad entry '" + tok + "' in " + where);
    std::size_t split = std::string::npos;
    for (std::size_t j = s.size(); j-- > 1;) {
      if ((s[j] == '+' || s[j] == '-') && s[j - 1] != 'e' && s[j - 1] != 'E') {
        split = j;
        break;
      }
    }
    if (split == std::string::npos) return {0.0, parse_real(s, where)};
    return {parse_real(s.substr(0, split), where), parse_real(s.substr(split), where)};
  }
  return {parse_real(s, where), 0.0};
}

Matrix2 read_matrix_block(std::istringstream& in, const std::string& want_name) {
  std::string keyword, name;
  if (!(in >> keyword >> name) || keyword != "matrix" || name != want_name)
    throw std::runtime_error("representation file: expected 'matrix " + want_name + "'");
  const std::string where = "matrix " + want_name;
  Complex entry[4];
  for (int i = 0; i < 4; ++i) {
    std::string tok;
    if (!(in >> tok))
      throw std::runtime_error("representation file: " + where + " needs a 2x2 entry grid");
    entry[i] = parse_complex_token(tok, where);
  }
  return {entry[0], entry[1], entry[2], entry[3]};
}

}  // namespace

TorusRep parse_torus_rep(const std::string& text) {
  // Strip comments before tokenizing.
  std::string clean;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    clean += line;
    clean += '\n';
  }
  std::istringstream in(clean);
  const Matrix2 a = read_matrix_block(in, "a");
  const Matrix2 b = read_matrix_block(in, "b");
  std::string extra;
  if (in >> extra) throw std::runtime_error("representation file: trailing input '" + extra + "'");
  return TorusRep::make(a, b);
}

Complex curve_value(const Multicurve& m, const TorusRep& rep) {
  if (m.is_empty()) return 1.0;
  if (m.surface != SurfaceKind::torus)
    throw std::invalid_argument("curve_value: representation evaluation needs torus classes");
  const Complex base = -rep.holonomy(m.p, m.q).trace();
  Complex out = 1.0;
  for (int i = 0; i < m.mult; ++i) out *= base;
  return out;
}

Complex character_eval(const CharacterElement& e, const TorusRep& rep) {
  Complex sum = 0.0;
  for (const auto& [curve, coeff] : e.terms)
    sum += coeff.convert_to<double>() * curve_value(curve, rep);
  return sum;
}

Complex goldman_numeric(const Multicurve& alpha, const Multicurve& beta, const TorusRep& rep) {
  if (alpha.is_empty() || beta.is_empty()) return 0.0;
  if (alpha.surface != SurfaceKind::torus || beta.surface != SurfaceKind::torus)
    throw std::invalid_argument("goldman_numeric: needs torus classes");

  const Matrix2 ha = rep.holonomy(alpha.p, alpha.q);
  const Matrix2 hb = rep.holonomy(beta.p, beta.q);
  const double intersections = double(alpha.q) * beta.p - double(alpha.p) * beta.q;
  const Complex primitive =
      intersections * invariant_pairing(trace_gradient(ha), trace_gradient(hb));

  // Leibniz extension to powers of the primitive curve functions.
  Complex factor = double(alpha.mult) * double(beta.mult);
  const Complex xa = -ha.trace();
  const Complex xb = -hb.trace();
  for (int i = 1; i < alpha.mult; ++i) factor *= xa;
  for (int i = 1; i < beta.mult; ++i) factor *= xb;
  return factor * primitive;
}

}  // namespace skein
