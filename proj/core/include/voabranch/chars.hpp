#pragma once

#include <map>
#include <utility>

#include "voabranch/lattice.hpp"
#include "voabranch/qseries.hpp"

namespace voabranch {

/// Eigenspace selector for the involution induced by b -> -b.
enum class Sign { plus, minus, full };
std::string to_string(Sign sign);

/// L(c, h): irreducible Virasoro highest-weight module.
struct ModuleLabel {
  Rational c;
  Rational h;
  friend bool operator==(const ModuleLabel&, const ModuleLabel&) = default;
};

/// (p, p', r, s) with h = ((r p - s p')^2 - (p - p')^2) / (4 p p'),
/// 1 <= r < p', 1 <= s < p.
struct KacLabel {
  std::int64_t p = 0;
  std::int64_t p_prime = 0;
  std::int64_t r = 0;
  std::int64_t s = 0;
};

/// Unitary minimal model (p, p') = (m + 1, m) with c = 1 - 6/(m(m+1)), if any.
std::optional<std::pair<std::int64_t, std::int64_t>> minimal_model_of(const Rational& c);

/// Kac label with the smallest r (then s) realizing h. Throws DomainError if c
/// is not a minimal-model charge or h is not in its Kac table.
KacLabel kac_label(const Rational& c, const Rational& h);

/// Graded dimension of L(1, h) (no q^{-c/24} prefactor).
QSeries char_c1(const Rational& h, const Rational& cutoff);

/// Graded dimension of the minimal-model module L(c, h) via the alternating
/// sum over the Kac reflection group.
QSeries char_minimal(const Rational& c, const Rational& h, const Rational& cutoff);

/// Dispatches on c: c = 1 uses char_c1, otherwise char_minimal.
QSeries character(const ModuleLabel& label, const Rational& cutoff);

/// Character of V_{S+v} (full) or of its +/- eigenspaces, computed from the
/// theta series: full = Theta/phi^rank, plus/minus = (full +/- T)/2 with
/// T = prod (1+q^j)^{-rank} when 0 lies in S+v and T = 0 otherwise.
/// Throws DomainError for a signed request on a coset with S+v != S-v.
QSeries oracle_lattice_char(const LatticeCoset& coset, Sign sign, const Rational& cutoff);

/// Memoizes characters for a fixed cutoff. Not thread-safe.
class CharacterCache {
 public:
  explicit CharacterCache(Rational cutoff) : cutoff_(std::move(cutoff)) {}
  const QSeries& get(const ModuleLabel& label);
  const Rational& cutoff() const { return cutoff_; }

 private:
  Rational cutoff_;
  std::map<std::pair<Rational, Rational>, QSeries> cache_;
};

}  // namespace voabranch
