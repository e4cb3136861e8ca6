#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "voabranch/rational.hpp"

namespace voabranch {

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Truncated formal power series in q with exact rational exponents and
/// coefficients. Terms with exponent above the cutoff are absent and undefined;
/// no stored coefficient is ever zero.
class QSeries {
 public:
  using Terms = std::map<Rational, Rational>;

  explicit QSeries(Rational cutoff);

  static QSeries zero(const Rational& cutoff) { return QSeries(cutoff); }
  static QSeries one(const Rational& cutoff);
  static QSeries monomial(const Rational& exponent, const Rational& coefficient,
                          const Rational& cutoff);

  const Rational& cutoff() const { return cutoff_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  Rational coefficient(const Rational& exponent) const;
  std::optional<Rational> lowest_exponent() const;

  /// Adds c*q^e; silently drops e > cutoff. Throws DomainError for e < 0.
  void add_term(const Rational& exponent, const Rational& coefficient);

  QSeries truncated(const Rational& cutoff) const;
  QSeries scaled(const Rational& factor) const;
  /// Multiplies by q^shift (shift >= 0 keeps exponents nonnegative).
  QSeries shifted(const Rational& shift) const;

  QSeries& operator+=(const QSeries& other);
  QSeries& operator-=(const QSeries& other);
  QSeries operator-() const { return scaled(-1); }

  friend QSeries operator+(QSeries a, const QSeries& b) { return a += b; }
  friend QSeries operator-(QSeries a, const QSeries& b) { return a -= b; }
  friend bool operator==(const QSeries& a, const QSeries& b) {
    return a.cutoff_ == b.cutoff_ && a.terms_ == b.terms_;
  }

  /// Human-readable form, e.g. "1 - q^2 + 3q^(7/2) + O(q^(8+))".
  std::string to_string() const;

 private:
  Rational cutoff_;
  Terms terms_;
};

/// Product truncated to min(a.cutoff, b.cutoff).
QSeries multiply(const QSeries& a, const QSeries& b);
inline QSeries operator*(const QSeries& a, const QSeries& b) { return multiply(a, b); }

/// Multiplicative inverse up to the cutoff; requires a nonzero constant term.
QSeries invert_unit(const QSeries& a);

/// a^k for k >= 0; negative k goes through invert_unit.
QSeries power(const QSeries& a, int k);

enum class EulerKind { minus, plus };

/// prod_{j>=1} (1 - q^j)^power (minus) or prod_{j>=1} (1 + q^j)^power (plus).
QSeries product_family(EulerKind kind, int power, const Rational& cutoff);

/// phi(q) = prod (1 - q^j).
inline QSeries euler_phi(const Rational& cutoff) {
  return product_family(EulerKind::minus, 1, cutoff);
}

/// {"cutoff": "N", "terms": [["e", "c"], ...]} with exponents ascending.
nlohmann::json to_json(const QSeries& series);
QSeries qseries_from_json(const nlohmann::json& doc);

}  // namespace voabranch
