#include "voabranch/qseries.hpp"

#include <set>
#include <sstream>
#include <vector>

#include <nlohmann/json.hpp>

namespace voabranch {

QSeries::QSeries(Rational cutoff) : cutoff_(std::move(cutoff)) {
  cutoff_.canonicalize();
  if (cutoff_ < 0) throw DomainError("QSeries cutoff must be nonnegative");
}

QSeries QSeries::one(const Rational& cutoff) { return monomial(0, 1, cutoff); }

QSeries QSeries::monomial(const Rational& exponent, const Rational& coefficient,
                          const Rational& cutoff) {
  QSeries s(cutoff);
  s.add_term(exponent, coefficient);
  return s;
}

Rational QSeries::coefficient(const Rational& exponent) const {
  auto it = terms_.find(exponent);
  return it == terms_.end() ? Rational(0) : it->second;
}

std::optional<Rational> QSeries::lowest_exponent() const {
  if (terms_.empty()) return std::nullopt;
  return terms_.begin()->first;
}

void QSeries::add_term(const Rational& exponent, const Rational& coefficient) {
  if (exponent < 0) throw DomainError("negative exponent " + voabranch::to_string(exponent));
  if (exponent > cutoff_ || coefficient == 0) return;
  auto [it, inserted] = terms_.try_emplace(exponent, coefficient);
  if (inserted) return;
  it->second += coefficient;
  if (it->second == 0) terms_.erase(it);
}

QSeries QSeries::truncated(const Rational& cutoff) const {
  QSeries out(cutoff < cutoff_ ? cutoff : cutoff_);
  for (const auto& [e, c] : terms_) {
    if (e > out.cutoff_) break;
    out.terms_.emplace_hint(out.terms_.end(), e, c);
  }
  return out;
}

QSeries QSeries::scaled(const Rational& factor) const {
  QSeries out(cutoff_);
  if (factor == 0) return out;
  for (const auto& [e, c] : terms_) out.terms_.emplace_hint(out.terms_.end(), e, c * factor);
  return out;
}

QSeries QSeries::shifted(const Rational& shift) const {
  QSeries out(cutoff_);
  for (const auto& [e, c] : terms_) out.add_term(e + shift, c);
  return out;
}

QSeries& QSeries::operator+=(const QSeries& other) {
  if (other.cutoff_ < cutoff_) *this = truncated(other.cutoff_);
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

QSeries& QSeries::operator-=(const QSeries& other) {
  if (other.cutoff_ < cutoff_) *this = truncated(other.cutoff_);
  for (const auto& [e, c] : other.terms_) add_term(e, -c);
  return *this;
}

std::string QSeries::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    Rational mag = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    bool unit = (mag == 1);
    if (!unit || e == 0) os << voabranch::to_string(mag);
    if (e != 0) {
      os << "q";
      if (e != 1) {
        if (is_integer(e))
          os << "^" << voabranch::to_string(e);
        else
          os << "^(" << voabranch::to_string(e) << ")";
      }
    }
  }
  if (first) os << "0";
  os << " + O(q^(" << voabranch::to_string(cutoff_) << "+))";
  return os.str();
}

QSeries multiply(const QSeries& a, const QSeries& b) {
  QSeries out(a.cutoff() < b.cutoff() ? a.cutoff() : b.cutoff());
  const Rational& cut = out.cutoff();
  Rational e;
  Rational c;
  for (const auto& [ea, ca] : a.terms()) {
    if (ea > cut) break;
    for (const auto& [eb, cb] : b.terms()) {
      e = ea + eb;
      if (e > cut) break;
      c = ca * cb;
      out.add_term(e, c);
    }
  }
  return out;
}

QSeries invert_unit(const QSeries& a) {
  Rational a0 = a.coefficient(0);
  if (a0 == 0) throw DomainError("invert_unit: constant term is zero");
  const Rational& cut = a.cutoff();

  // Exponents of the inverse lie in the additive monoid generated by the
  // positive exponents of `a`.
  std::vector<Rational> generators;
  for (const auto& [e, c] : a.terms())
    if (e > 0) generators.push_back(e);
  std::set<Rational> support{Rational(0)};
  std::vector<Rational> frontier{Rational(0)};
  while (!frontier.empty()) {
    std::vector<Rational> next;
    for (const auto& s : frontier)
      for (const auto& g : generators) {
        Rational t = s + g;
        if (t > cut) break;
        if (support.insert(t).second) next.push_back(t);
      }
    frontier = std::move(next);
  }

  QSeries b(cut);
  std::map<Rational, Rational> coeffs;
  Rational inv0 = 1 / a0;
  for (const auto& e : support) {
    Rational acc = (e == 0) ? Rational(1) : Rational(0);
    for (const auto& g : generators) {
      if (g > e) break;
      auto it = coeffs.find(e - g);
      if (it != coeffs.end()) acc -= a.coefficient(g) * it->second;
    }
    acc *= inv0;
    if (acc != 0) coeffs.emplace(e, acc);
  }
  for (const auto& [e, c] : coeffs) b.add_term(e, c);
  return b;
}

QSeries power(const QSeries& a, int k) {
  if (k < 0) return power(invert_unit(a), -k);
  QSeries result = QSeries::one(a.cutoff());
  QSeries base = a;
  while (k > 0) {
    if (k & 1) result = multiply(result, base);
    k >>= 1;
    if (k > 0) base = multiply(base, base);
  }
  return result;
}

QSeries product_family(EulerKind kind, int power, const Rational& cutoff) {
  QSeries result = QSeries::one(cutoff);
  if (power == 0) return result;
  Integer jmax = floor(cutoff);
  const int sign = (kind == EulerKind::minus) ? -1 : 1;
  const int reps = power < 0 ? -power : power;
  for (long j = 1; j <= jmax.get_si(); ++j) {
    QSeries factor(cutoff);
    if (power > 0) {
      factor.add_term(0, 1);
      factor.add_term(j, sign);
    } else {
      // (1 -/+ q^j)^-1 as a geometric series.
      Rational coef = 1;
      for (long e = 0; e <= jmax.get_si(); e += j) {
        factor.add_term(e, coef);
        coef *= -sign;
      }
    }
    for (int r = 0; r < reps; ++r) result = multiply(result, factor);
  }
  return result;
}

nlohmann::json to_json(const QSeries& series) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [e, c] : series.terms())
    terms.push_back(nlohmann::json::array({to_string(e), to_string(c)}));
  return nlohmann::json{{"cutoff", to_string(series.cutoff())}, {"terms", std::move(terms)}};
}

QSeries qseries_from_json(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("cutoff") || !doc.contains("terms"))
    throw std::invalid_argument("QSeries JSON needs \"cutoff\" and \"terms\"");
  QSeries out(parse_rational(doc.at("cutoff").get<std::string>()));
  for (const auto& pair : doc.at("terms")) {
    if (!pair.is_array() || pair.size() != 2)
      throw std::invalid_argument("QSeries term must be a [exponent, coefficient] pair");
    Rational e = parse_rational(pair[0].get<std::string>());
    Rational c = parse_rational(pair[1].get<std::string>());
    if (c == 0) throw std::invalid_argument("QSeries term with zero coefficient");
    if (e > out.cutoff()) throw std::invalid_argument("QSeries term beyond cutoff");
    if (out.coefficient(e) != 0) throw std::invalid_argument("duplicate QSeries exponent");
    out.add_term(e, c);
  }
  return out;
}

}  // namespace voabranch
