#include "voabranch/rational.hpp"

#include <cmath>
#include <stdexcept>

namespace voabranch {

Rational frac(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  Rational r(Integer(static_cast<long>(num)), Integer(static_cast<long>(den)));
  r.canonicalize();
  return r;
}

Rational parse_rational(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty rational");
  std::string s(text);
  auto slash = s.find('/');
  auto valid_int = [](std::string_view part) {
    std::size_t i = (!part.empty() && (part[0] == '-' || part[0] == '+')) ? 1 : 0;
    if (i == part.size()) return false;
    for (; i < part.size(); ++i)
      if (part[i] < '0' || part[i] > '9') return false;
    return true;
  };
  if (slash == std::string::npos) {
    if (!valid_int(s)) throw std::invalid_argument("malformed rational: " + s);
    if (s[0] == '+') s.erase(0, 1);
    return Rational(Integer(s));
  }
  std::string num = s.substr(0, slash);
  std::string den = s.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+')
    throw std::invalid_argument("malformed rational: " + s);
  if (num[0] == '+') num.erase(0, 1);
  Integer d(den);
  if (d == 0) throw std::invalid_argument("zero denominator: " + s);
  Rational r(Integer(num), d);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& value) {
  Rational v = value;
  v.canonicalize();
  return v.get_str();
}

Integer floor(const Rational& value) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return q;
}

Integer ceil(const Rational& value) {
  Integer q;
  mpz_cdiv_q(q.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return q;
}

bool is_integer(const Rational& value) { return value.get_den() == 1; }

std::optional<std::int64_t> exact_isqrt(std::int64_t value) {
  if (value < 0) return std::nullopt;
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<long double>(value)));
  while (r * r > value) --r;
  while ((r + 1) * (r + 1) <= value) ++r;
  if (r * r != value) return std::nullopt;
  return r;
}

std::optional<std::int64_t> quarter_square_root(const Rational& value) {
  Rational four = value * 4;
  if (!is_integer(four) || four < 0) return std::nullopt;
  Integer n = four.get_num();
  if (!n.fits_slong_p()) return std::nullopt;
  return exact_isqrt(n.get_si());
}

std::int64_t to_int64(const Integer& value) {
  if (!value.fits_slong_p()) throw std::overflow_error("integer does not fit in 64 bits");
  return value.get_si();
}

}  // namespace voabranch
