#include "kissing/rational.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace kissing {

Rational rational_from_double(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("non-finite double");
  if (x == 0.0) return Rational(0);
  int exp = 0;
  double m = std::frexp(x, &exp);  // x = m * 2^exp, |m| in [0.5, 1)
  // 53 doublings make the mantissa integral.
  long long mant = static_cast<long long>(std::ldexp(m, 53));
  exp -= 53;
  Rational r(mant);
  if (exp >= 0) {
    r *= Rational(BigInt(1) << exp);
  } else {
    r /= Rational(BigInt(1) << (-exp));
  }
  return r;
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

Rational parse_rational(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    Rational num = parse_rational(s.substr(0, slash));
    Rational den = parse_rational(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator");
    return num / den;
  }
  bool neg = false;
  size_t i = 0;
  if (s[0] == '+' || s[0] == '-') {
    neg = s[0] == '-';
    i = 1;
  }
  std::string digits;
  long long frac_digits = -1;
  long long exp10 = 0;
  for (; i < s.size(); ++i) {
    char ch = s[i];
    if (ch == '.') {
      if (frac_digits >= 0) throw std::invalid_argument("bad rational: " + text);
      frac_digits = 0;
    } else if (ch == 'e' || ch == 'E') {
      exp10 = std::strtoll(s.c_str() + i + 1, nullptr, 10);
      break;
    } else if (ch >= '0' && ch <= '9') {
      digits.push_back(ch);
      if (frac_digits >= 0) ++frac_digits;
    } else {
      throw std::invalid_argument("bad rational: " + text);
    }
  }
  if (digits.empty()) throw std::invalid_argument("bad rational: " + text);
  // cpp_int would read a leading zero as an octal prefix.
  size_t first = digits.find_first_not_of('0');
  digits = first == std::string::npos ? "0" : digits.substr(first);
  BigInt mant(digits);
  if (neg) mant = -mant;
  long long net = exp10 - (frac_digits > 0 ? frac_digits : 0);
  Rational r(mant);
  BigInt ten(10);
  if (net > 0) {
    BigInt p = 1;
    for (long long k = 0; k < net; ++k) p *= ten;
    r *= Rational(p);
  } else if (net < 0) {
    BigInt p = 1;
    for (long long k = 0; k < -net; ++k) p *= ten;
    r /= Rational(p);
  }
  return r;
}

int sign_of(const Rational& r) {
  if (r > 0) return 1;
  if (r < 0) return -1;
  return 0;
}

ExactPoly::ExactPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) {
  if (c_.empty()) c_.assign(1, Rational(0));
  trim();
}

ExactPoly ExactPoly::from_doubles(const std::vector<double>& coeffs) {
  std::vector<Rational> c;
  c.reserve(coeffs.size());
  for (double x : coeffs) c.push_back(rational_from_double(x));
  return ExactPoly(std::move(c));
}

bool ExactPoly::is_zero() const { return c_.size() == 1 && c_[0] == 0; }

void ExactPoly::trim() {
  while (c_.size() > 1 && c_.back() == 0) c_.pop_back();
}

Rational ExactPoly::eval(const Rational& t) const {
  Rational acc = c_.back();
  for (auto it = c_.rbegin() + 1; it != c_.rend(); ++it) acc = acc * t + *it;
  return acc;
}

ExactPoly ExactPoly::derivative() const {
  if (c_.size() == 1) return ExactPoly();
  std::vector<Rational> d(c_.size() - 1);
  for (size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * Rational(static_cast<int>(k));
  return ExactPoly(std::move(d));
}

ExactPoly ExactPoly::operator+(const ExactPoly& o) const {
  std::vector<Rational> r(std::max(c_.size(), o.c_.size()), Rational(0));
  for (size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
  for (size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
  return ExactPoly(std::move(r));
}

ExactPoly ExactPoly::operator-(const ExactPoly& o) const {
  std::vector<Rational> r(std::max(c_.size(), o.c_.size()), Rational(0));
  for (size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
  for (size_t i = 0; i < o.c_.size(); ++i) r[i] -= o.c_[i];
  return ExactPoly(std::move(r));
}

ExactPoly ExactPoly::operator*(const ExactPoly& o) const {
  if (is_zero() || o.is_zero()) return ExactPoly();
  std::vector<Rational> r(c_.size() + o.c_.size() - 1, Rational(0));
  for (size_t i = 0; i < c_.size(); ++i)
    for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  return ExactPoly(std::move(r));
}

ExactPoly ExactPoly::scaled(const Rational& s) const {
  std::vector<Rational> r(c_);
  for (auto& x : r) x *= s;
  return ExactPoly(std::move(r));
}

ExactPoly ExactPoly::primitive() const {
  if (is_zero()) return *this;
  BigInt num_gcd = 0, den_lcm = 1;
  for (const auto& x : c_) {
    if (x == 0) continue;
    BigInt n = boost::multiprecision::abs(numerator(x));
    BigInt d = denominator(x);
    num_gcd = num_gcd == 0 ? n : boost::multiprecision::gcd(num_gcd, n);
    den_lcm = den_lcm / boost::multiprecision::gcd(den_lcm, d) * d;
  }
  Rational scale = Rational(den_lcm) / Rational(num_gcd);
  return scaled(scale);
}

std::vector<double> ExactPoly::to_doubles() const {
  std::vector<double> r;
  r.reserve(c_.size());
  for (const auto& x : c_) r.push_back(to_double(x));
  return r;
}

namespace {

// Remainder of a by b (degree(b) <= degree(a)).
ExactPoly poly_remainder(const ExactPoly& a, const ExactPoly& b) {
  std::vector<Rational> r = a.coeffs();
  const std::vector<Rational>& d = b.coeffs();
  const int db = b.degree();
  const Rational& lead = d[db];
  for (int k = static_cast<int>(r.size()) - 1; k >= db; --k) {
    if (r[k] == 0) continue;
    Rational q = r[k] / lead;
    for (int j = 0; j <= db; ++j) r[k - db + j] -= q * d[j];
    r[k] = 0;
  }
  return ExactPoly(std::move(r));
}

}  // namespace

std::vector<ExactPoly> sturm_chain(const ExactPoly& p) {
  std::vector<ExactPoly> chain;
  chain.push_back(p.primitive());
  ExactPoly d = p.derivative();
  if (d.is_zero()) return chain;
  chain.push_back(d.primitive());
  while (true) {
    const ExactPoly& a = chain[chain.size() - 2];
    const ExactPoly& b = chain.back();
    ExactPoly rem = poly_remainder(a, b);
    if (rem.is_zero()) break;
    chain.push_back(rem.scaled(Rational(-1)).primitive());
    if (chain.back().degree() == 0) break;
  }
  return chain;
}

int sign_variations_at(const std::vector<ExactPoly>& chain, const Rational& x) {
  int vars = 0, prev = 0;
  for (const auto& q : chain) {
    int s = sign_of(q.eval(x));
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++vars;
    prev = s;
  }
  return vars;
}

int sturm_count(const std::vector<ExactPoly>& chain, const Rational& a,
                const Rational& b) {
  return sign_variations_at(chain, a) - sign_variations_at(chain, b);
}

}  // namespace kissing
