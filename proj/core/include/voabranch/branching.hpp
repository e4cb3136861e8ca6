#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "voabranch/chars.hpp"

namespace voabranch {

/// V_{Zg + a x} with <g, g> = 2n and x = g / 2n, 0 <= a <= 2n - 1.
struct RankOneCoset {
  std::int64_t n = 1;
  std::int64_t a = 0;
};

/// L(1, h) content of a rank-one module, materialized up to a cutoff.
struct BranchList {
  std::map<Rational, Integer> entries;  // h -> multiplicity (colliding members merged)
  Rational cutoff;
  std::string case_tag;

  Integer multiplicity(const Rational& h) const;
  friend bool operator==(const BranchList& a, const BranchList& b) {
    return a.entries == b.entries && a.cutoff == b.cutoff;
  }
};

/// Branching of V_{Zg + a x}^{sign} into irreducible L(1, h) modules.
/// Signed requests are only valid for a in {0, n}; otherwise DomainError.
BranchList branch(const RankOneCoset& rc, Sign sign, const Rational& cutoff);

/// Signs for which branch() is defined on this coset.
std::vector<Sign> applicable_signs(const RankOneCoset& rc);

/// Compares sum mult * char_c1(h) against the theta-based oracle for every
/// applicable sign.
bool verify_branch(const RankOneCoset& rc, const Rational& cutoff);

/// Highest weights (h1, h2, h3) for central charges (1/2, 7/10, 4/5).
using ETableRow = std::array<Rational, 3>;

/// Central charges of the three E-lattice Virasoro factors.
std::array<Rational, 3> e_table_charges();

/// Irreducible summands of V_E^{+}, V_E^{-} (residue 0) or V_{E + k eta}
/// (residue 1, 2). Signed requests need residue 0.
std::vector<ETableRow> e_table(std::int64_t residue, Sign sign);

/// sum over e_table rows of triple products of minimal-model characters.
QSeries e_table_character(std::int64_t residue, Sign sign, const Rational& cutoff);

/// The E + k eta coset inside the rank-3 family, for the character oracle.
LatticeCoset e_coset(std::int64_t residue);

}  // namespace voabranch
