#include "voabranch/chars.hpp"

namespace voabranch {

std::string to_string(Sign sign) {
  switch (sign) {
    case Sign::plus: return "plus";
    case Sign::minus: return "minus";
    case Sign::full: return "full";
  }
  return "?";
}

std::optional<std::pair<std::int64_t, std::int64_t>> minimal_model_of(const Rational& c) {
  if (c >= 1) return std::nullopt;
  for (std::int64_t m = 3; m < 10000; ++m) {
    Rational cm = 1 - frac(6, m * (m + 1));
    if (cm == c) return std::make_pair(m + 1, m);
    if (cm > c) return std::nullopt;
  }
  return std::nullopt;
}

namespace {

Rational kac_weight(std::int64_t p, std::int64_t pp, std::int64_t x) {
  return frac(x * x - (p - pp) * (p - pp), 4 * p * pp);
}

}  // namespace

KacLabel kac_label(const Rational& c, const Rational& h) {
  auto model = minimal_model_of(c);
  if (!model) throw DomainError("c = " + to_string(c) + " is not a unitary minimal-model charge");
  auto [p, pp] = *model;
  for (std::int64_t r = 1; r < pp; ++r)
    for (std::int64_t s = 1; s < p; ++s)
      if (kac_weight(p, pp, r * p - s * pp) == h) return KacLabel{p, pp, r, s};
  throw DomainError("h = " + to_string(h) + " is not in the Kac table for c = " + to_string(c));
}

QSeries char_c1(const Rational& h, const Rational& cutoff) {
  if (h < 0) throw DomainError("char_c1 needs h >= 0");
  QSeries numerator(cutoff);
  numerator.add_term(h, 1);
  if (auto m = quarter_square_root(h)) numerator.add_term(frac((*m + 2) * (*m + 2), 4), -1);
  return multiply(numerator, product_family(EulerKind::minus, -1, cutoff));
}

QSeries char_minimal(const Rational& c, const Rational& h, const Rational& cutoff) {
  const KacLabel k = kac_label(c, h);
  const std::int64_t p = k.p, pp = k.p_prime;
  const std::int64_t period = 2 * p * pp;
  QSeries numerator(cutoff);
  // Sum over k in Z; stop once both reflected weights exceed the cutoff on
  // both sides, with one guard step.
  for (int dir : {1, -1}) {
    int guard = 0;
    for (std::int64_t j = (dir == 1 ? 0 : -1);; j += dir) {
      Rational e1 = kac_weight(p, pp, period * j + k.r * p - k.s * pp);
      Rational e2 = kac_weight(p, pp, period * j + k.r * p + k.s * pp);
      if (e1 < h || e2 < h) throw std::logic_error("reflected weight below highest weight");
      numerator.add_term(e1, 1);
      numerator.add_term(e2, -1);
      if (e1 > cutoff && e2 > cutoff && ++guard > 1) break;
    }
  }
  return multiply(numerator, product_family(EulerKind::minus, -1, cutoff));
}

QSeries character(const ModuleLabel& label, const Rational& cutoff) {
  if (label.c == 1) return char_c1(label.h, cutoff);
  return char_minimal(label.c, label.h, cutoff);
}

QSeries oracle_lattice_char(const LatticeCoset& coset, Sign sign, const Rational& cutoff) {
  const int rank = static_cast<int>(coset.lattice.rank());
  QSeries full = multiply(theta_series(coset, cutoff),
                          product_family(EulerKind::minus, -rank, cutoff));
  if (sign == Sign::full) return full;
  if (!coset.negation_stable())
    throw DomainError("signed character requested for a coset with S+v != S-v");
  QSeries twisted(cutoff);
  if (coset.contains_zero()) twisted = product_family(EulerKind::plus, -rank, cutoff);
  QSeries out = (sign == Sign::plus) ? full + twisted : full - twisted;
  return out.scaled(frac(1, 2));
}

const QSeries& CharacterCache::get(const ModuleLabel& label) {
  auto key = std::make_pair(label.c, label.h);
  auto it = cache_.find(key);
  if (it == cache_.end()) it = cache_.emplace(key, character(label, cutoff_)).first;
  return it->second;
}

}  // namespace voabranch
