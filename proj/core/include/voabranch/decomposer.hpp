#pragma once

#include <map>
#include <string>
#include <vector>

#include "voabranch/branching.hpp"
#include "voabranch/chars.hpp"
#include "voabranch/lattice.hpp"

namespace voabranch {

/// L(c_1, h_1) (x) ... (x) L(c_{l+1}, h_{l+1}) with multiplicity, where the
/// charges are (1/2, 7/10, 4/5, 1, ..., 1).
struct Summand {
  std::vector<ModuleLabel> labels;
  Integer mult;
  Rational min_weight;
};

/// Central charges (1/2, 7/10, 4/5, 1, ..., 1) for rank l.
std::vector<Rational> summand_charges(int l);

/// Summand content of V_{D+lambda}^{sign} for one classified coset label, as
/// h-tuple -> multiplicity, restricted to min weight <= cutoff. Lambda1 labels
/// accept plus and minus; Lambda2 labels accept full only.
std::map<std::vector<Rational>, Integer> coset_content(const LatticeFamily& fam,
                                                       const CosetLabel& label, Sign sign,
                                                       const Rational& cutoff);

/// Irreducible summands of V_L^{parity} (parity plus or minus) with min weight
/// <= cutoff, ordered by min weight and then by the h-tuple.
std::vector<Summand> decompose(int l, Sign parity, const Rational& cutoff);

/// sum mult * prod character(label) over the given summands.
QSeries assemble(const std::vector<Summand>& summands, const Rational& cutoff);

struct CosetCheck {
  CosetLabel label;
  bool ok = false;
};

struct VerifyReport {
  QSeries residual;                   // oracle - assembled
  std::vector<CosetCheck> cosets;     // one entry per Lambda1 and Lambda2Pos label
  std::vector<Summand> summands;
  QSeries assembled;

  bool ok() const;
};

/// Checks the summand table against the theta-based oracle for V_L^{parity},
/// and each coset's assembled character against its own oracle.
VerifyReport verify(int l, Sign parity, const Rational& cutoff);

}  // namespace voabranch
