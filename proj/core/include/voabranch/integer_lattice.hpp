#pragma once

#include <cstdint>
#include <vector>

#include "voabranch/rational.hpp"

namespace voabranch {

using IntVec = std::vector<std::int64_t>;
using RatVec = std::vector<Rational>;

/// A sublattice of Z^d given by generators, kept in row Hermite normal form.
/// Membership and coset reduction are exact integer computations.
class IntegerLattice {
 public:
  IntegerLattice() = default;
  IntegerLattice(std::size_t dim, const std::vector<IntVec>& generators);

  std::size_t dim() const { return dim_; }
  std::size_t rank() const { return basis_.size(); }
  const std::vector<IntVec>& generators() const { return generators_; }
  /// Echelon basis: row i has its first nonzero entry (positive) at pivot(i).
  const std::vector<IntVec>& hnf_basis() const { return basis_; }
  std::size_t pivot(std::size_t row) const { return pivots_[row]; }

  /// Canonical representative of x + S: the pivot coordinates are reduced into
  /// [0, pivot value). Two vectors are congruent iff their reductions agree.
  IntVec reduce(IntVec x) const;

  bool contains(const IntVec& x) const;
  /// False for non-integral vectors.
  bool contains(const RatVec& x) const;

  /// |Z^d : S| for a full-rank lattice (product of pivots); 0 if not full rank.
  Integer index_in_ambient() const;

  /// Coordinates where some generator is nonzero.
  std::vector<bool> support() const;

 private:
  std::size_t dim_ = 0;
  std::vector<IntVec> generators_;
  std::vector<IntVec> basis_;
  std::vector<std::size_t> pivots_;
};

IntVec operator+(const IntVec& a, const IntVec& b);
IntVec operator-(const IntVec& a, const IntVec& b);
IntVec operator*(std::int64_t k, const IntVec& a);
RatVec to_rational(const IntVec& v);
/// Integral vector if every entry has denominator 1.
std::optional<IntVec> to_integral(const RatVec& v);

}  // namespace voabranch
