#include "mbm/arith.hpp"

#include "mbm/errors.hpp"

#include <sstream>

namespace mbm {

IntMatrix int_matrix(std::size_t rows, std::size_t cols) {
  return IntMatrix(rows, std::vector<Int>(cols, 0));
}

RatMatrix rat_matrix(std::size_t rows, std::size_t cols) {
  return RatMatrix(rows, std::vector<Rat>(cols, 0));
}

Int content(const LatticeVector& v) {
  Int g = 0;
  for (const auto& x : v) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

LatticeVector primitive_part(const LatticeVector& v) {
  Int g = content(v);
  if (g == 0 || g == 1) return v;
  LatticeVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] / g;
  return out;
}

LatticeVector canonical_class(const LatticeVector& v) {
  LatticeVector p = primitive_part(v);
  for (const auto& x : p) {
    if (x == 0) continue;
    if (x < 0)
      for (auto& y : p) y = -y;
    break;
  }
  return p;
}

bool is_zero(const LatticeVector& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

bool is_zero(const RationalVector& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

RationalVector to_rational(const LatticeVector& v) {
  RationalVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i];
  return out;
}

LatticeVector clear_denominators(const RationalVector& v) {
  Int l = 1;
  for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  LatticeVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    Rat s = v[i] * l;
    out[i] = s.get_num();
  }
  return out;
}

bool is_integral(const RationalVector& v) {
  for (const auto& x : v)
    if (x.get_den() != 1) return false;
  return true;
}

LatticeVector to_integral(const RationalVector& v) {
  LatticeVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i].get_den() != 1) throw InternalError("to_integral: non-integral coordinate " + v[i].get_str());
    out[i] = v[i].get_num();
  }
  return out;
}

int sign(const Int& x) { return sgn(x); }
int sign(const Rat& x) { return sgn(x); }

Int isqrt(const Int& x) {
  Int r;
  mpz_sqrt(r.get_mpz_t(), x.get_mpz_t());
  return r;
}

bool rational_sqrt(const Rat& x, Rat& root) {
  if (x < 0) return false;
  if (!mpz_perfect_square_p(x.get_num_mpz_t()) || !mpz_perfect_square_p(x.get_den_mpz_t())) return false;
  root = Rat(isqrt(x.get_num()), isqrt(x.get_den()));
  root.canonicalize();
  return true;
}

Int floor_rat(const Rat& x) {
  Int r;
  mpz_fdiv_q(r.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return r;
}

Int ceil_rat(const Rat& x) {
  Int r;
  mpz_cdiv_q(r.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return r;
}

std::string to_string(const Int& x) { return x.get_str(); }
std::string to_string(const Rat& x) { return x.get_str(); }

std::string to_string(const LatticeVector& v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i].get_str();
  os << ')';
  return os.str();
}

std::string to_string(const RationalVector& v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i].get_str();
  os << ')';
  return os.str();
}

Rat parse_rational(const std::string& raw) {
  std::string text;
  for (char c : raw)
    if (c != ' ') text += c;
  if (text.empty()) throw ParseError("empty number");
  if (text[0] == '+') text.erase(0, 1);
  Rat out;
  if (out.set_str(text, 10) != 0) throw ParseError("malformed number '" + raw + "'");
  if (out.get_den() == 0) throw ParseError("zero denominator in '" + raw + "'");
  out.canonicalize();
  return out;
}

RationalVector parse_rational_list(const std::string& text) {
  RationalVector out;
  std::string item;
  std::istringstream is(text);
  while (std::getline(is, item, ',')) out.push_back(parse_rational(item));
  if (out.empty()) throw ParseError("empty vector");
  return out;
}

LatticeVector parse_integer_list(const std::string& text) {
  RationalVector r = parse_rational_list(text);
  if (!is_integral(r)) throw ParseError("expected integer coordinates in '" + text + "'");
  return to_integral(r);
}

}  // namespace mbm
