#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "voabranch/integer_lattice.hpp"
#include "voabranch/qseries.hpp"

namespace voabranch {

/// A cross-check inside the library disagreed with itself (formula vs brute
/// force). Never expected on valid input.
class InternalConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// <x, y> for the ambient Gram matrix 2*Identity.
std::int64_t inner(const IntVec& x, const IntVec& y);
Rational inner(const RatVec& x, const RatVec& y);
/// Half squared length <x, x>/2, i.e. the conformal weight of e^x.
Rational half_norm(const RatVec& x);

/// L = Z a_1 + ... + Z a_l with <a_i, a_j> = 2 delta_ij, together with the
/// sublattices N, E, D and the distinguished vectors built from it. All vectors
/// are coordinates in the a-basis.
struct LatticeFamily {
  int rank = 0;
  std::vector<IntVec> alpha;        // alpha[i] = a_{i+1}
  std::vector<IntVec> root_scaled;  // sqrt(2)*b_i for the D_l simple roots b_1..b_l
  std::vector<IntVec> gamma;        // gamma[r-1] = g_r, 1 <= r <= l
  std::vector<RatVec> xi;           // xi[r-1] = x_r
  RatVec eta;                       // -x_1 + x_2

  IntegerLattice L;
  IntegerLattice N;
  IntegerLattice E;
  IntegerLattice D;

  const IntVec& gamma_of(int r) const { return gamma.at(r - 1); }
  const RatVec& xi_of(int r) const { return xi.at(r - 1); }
  /// n_r = <g_r, g_r>/2: r(r+1) for r < l and l for r = l.
  std::int64_t gamma_half_norm(int r) const;
  IntVec zero() const { return IntVec(rank, 0); }
};

/// Throws DomainError for l < 3.
LatticeFamily build_family(int l);

/// |L : D| via the Hermite basis of D.
Integer coset_index(const LatticeFamily& fam);

enum class CosetClass { Lambda1, Lambda2Pos, Lambda2Neg };
std::string to_string(CosetClass cls);

/// lambda(m_3, ..., m_{l-2}, n) = sum m_r (a_r - a_{r+1}) + n a_2.
struct CosetLabel {
  std::vector<std::int64_t> m;  // m_3 .. m_{l-2}
  std::int64_t n = 0;
  CosetClass cls = CosetClass::Lambda1;
  std::size_t partner = 0;  // index of the label representing D - lambda

  /// "m3,m4,...;n"; the m-part may be empty (";6").
  std::string to_string() const;
  bool same_representative(const CosetLabel& other) const {
    return m == other.m && n == other.n;
  }
};

/// Parses "m3,...;n". Does not validate ranges.
CosetLabel parse_coset_label(std::string_view text);

IntVec label_vector(const LatticeFamily& fam, const CosetLabel& label);

/// Complete, pairwise incongruent representatives of L/D, ordered by (n, m).
/// Classes and partners are unset; call classify().
std::vector<CosetLabel> coset_reps(const LatticeFamily& fam);

/// Assigns class and partner. Self-paired cosets are found both by the
/// closed-form conditions and by testing 2*lambda in D; any disagreement
/// throws InternalConsistencyError.
std::vector<CosetLabel> classify(const LatticeFamily& fam, std::vector<CosetLabel> labels);

/// Closed-form test for D + lambda = D - lambda on a canonical label.
bool self_paired_by_formula(const LatticeFamily& fam, const CosetLabel& label);

/// Order of the class of a_2 in L/D.
std::int64_t order_of_alpha2(const LatticeFamily& fam);

struct CosetFactorization {
  std::int64_t e_residue = 0;       // coefficient of eta mod 3
  std::vector<std::int64_t> c;      // c[r-3] = coefficient of x_r, r = 3..l
  std::vector<std::int64_t> a;      // a[r-3] = 2 c_r mod 2 n_r
  std::vector<std::int64_t> n;      // n[r-3] = n_r
};

CosetFactorization factorize(const LatticeFamily& fam, const CosetLabel& label);

/// S + v for a sublattice S of the ambient Z^d (Gram 2*Identity) and a
/// rational shift v.
struct LatticeCoset {
  IntegerLattice lattice;
  RatVec shift;

  bool contains_zero() const;
  /// S + v = S - v, i.e. 2v in S.
  bool negation_stable() const;
};

LatticeCoset make_coset(const IntegerLattice& lattice, RatVec shift);
LatticeCoset make_coset(const IntegerLattice& lattice);

/// Z g with g in Z^4, sum g_i^2 = n (so <g, g> = 2n), shifted by a g / 2n.
LatticeCoset rank_one_coset(std::int64_t n, std::int64_t a);

/// sum_{b in S+v} q^{<b,b>/2} up to the cutoff, by exhaustive enumeration of
/// a-coordinate boxes pruned by the remaining norm budget.
QSeries theta_series(const LatticeCoset& coset, const Rational& cutoff);

/// Theta series of every D + lambda in one pass over L, indexed like `labels`.
std::vector<QSeries> theta_by_coset(const LatticeFamily& fam,
                                    const std::vector<CosetLabel>& labels,
                                    const Rational& cutoff);

}  // namespace voabranch
