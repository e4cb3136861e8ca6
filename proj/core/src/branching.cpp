#include "voabranch/branching.hpp"

namespace voabranch {

Integer BranchList::multiplicity(const Rational& h) const {
  auto it = entries.find(h);
  return it == entries.end() ? Integer(0) : it->second;
}

namespace {

void add(BranchList& out, const Rational& h, const Integer& mult) {
  if (h > out.cutoff || mult == 0) return;
  out.entries[h] += mult;
}

// L(1, j^2/4) + L(1, (j+2)^2/4) + ... : the content of M(1) x e^b when the
// weight of e^b is a quarter-square j^2/4.
void add_quarter_square_tower(BranchList& out, std::int64_t j, const Integer& mult) {
  for (std::int64_t t = j;; t += 2) {
    Rational h = frac(t * t, 4);
    if (h > out.cutoff) break;
    add(out, h, mult);
  }
}

// M(1)^+ = sum_p L(1, 4p^2), M(1)^- = sum_p L(1, (2p+1)^2).
void add_heisenberg_part(BranchList& out, bool even) {
  for (std::int64_t j = even ? 0 : 1;; j += 2) {
    Rational h = j * j;
    if (h > out.cutoff) break;
    add(out, h, 1);
  }
}

// One copy of sum_{m >= 1} M(1) x e^{m g}.
void add_lattice_part_zero(BranchList& out, std::int64_t n) {
  if (auto k = exact_isqrt(n)) {
    // multiplicity m for (mk + p)^2, 0 <= p < k
    for (std::int64_t m = 1;; ++m) {
      if (Rational(m * m * n) > out.cutoff) break;
      for (std::int64_t p = 0; p < *k; ++p) add(out, (m * *k + p) * (m * *k + p), m);
    }
  } else {
    for (std::int64_t m = 1;; ++m) {
      Rational h = m * m * n;
      if (h > out.cutoff) break;
      add(out, h, 1);
    }
  }
}

// One copy of sum_{m >= 0} M(1) x e^{(m + 1/2) g}.
void add_half_coset(BranchList& out, std::int64_t n) {
  auto k = exact_isqrt(n);
  for (std::int64_t m = 0;; ++m) {
    Rational h = frac(n * (2 * m + 1) * (2 * m + 1), 4);
    if (h > out.cutoff) break;
    if (k)
      add_quarter_square_tower(out, (2 * m + 1) * *k, 1);
    else
      add(out, h, 1);
  }
}

}  // namespace

std::vector<Sign> applicable_signs(const RankOneCoset& rc) {
  if (rc.a == 0 || rc.a == rc.n) return {Sign::plus, Sign::minus, Sign::full};
  return {Sign::full};
}

BranchList branch(const RankOneCoset& rc, Sign sign, const Rational& cutoff) {
  const std::int64_t n = rc.n, a = rc.a;
  if (n <= 0 || a < 0 || a >= 2 * n) throw DomainError("rank-one coset needs n > 0, 0 <= a < 2n");
  BranchList out{{}, cutoff, {}};
  const bool square = exact_isqrt(n).has_value();

  if (a == 0) {
    out.case_tag = square ? "5.1/5.2" : "5.4/5.5";
    if (sign != Sign::minus) add_heisenberg_part(out, true);
    if (sign != Sign::plus) add_heisenberg_part(out, false);
    const int copies = sign == Sign::full ? 2 : 1;
    for (int i = 0; i < copies; ++i) add_lattice_part_zero(out, n);
    return out;
  }
  if (a == n) {
    out.case_tag = square ? "5.3" : "5.6";
    const int copies = sign == Sign::full ? 2 : 1;
    for (int i = 0; i < copies; ++i) add_half_coset(out, n);
    return out;
  }
  if (sign != Sign::full)
    throw DomainError("signed branching requested on a coset with a not in {0, n}");
  out.case_tag = "5.7";
  // (2mn + a)^2 / 4n over m in Z; |2mn + a| grows from m = 0 upward and from
  // m = -1 downward since 0 < a < 2n.
  for (int dir : {1, -1}) {
    for (std::int64_t m = (dir == 1 ? 0 : -1);; m += dir) {
      const std::int64_t x = 2 * m * n + a;
      Rational h = frac(x * x, 4 * n);
      if (h > cutoff) break;
      if (auto j = quarter_square_root(h))
        add_quarter_square_tower(out, *j, 1);
      else
        add(out, h, 1);
    }
  }
  return out;
}

bool verify_branch(const RankOneCoset& rc, const Rational& cutoff) {
  const LatticeCoset coset = rank_one_coset(rc.n, rc.a);
  for (Sign sign : applicable_signs(rc)) {
    BranchList list = branch(rc, sign, cutoff);
    QSeries assembled(cutoff);
    for (const auto& [h, mult] : list.entries)
      assembled += char_c1(h, cutoff).scaled(Rational(mult));
    if (assembled != oracle_lattice_char(coset, sign, cutoff)) return false;
  }
  return true;
}

std::array<Rational, 3> e_table_charges() { return {frac(1, 2), frac(7, 10), frac(4, 5)}; }

std::vector<ETableRow> e_table(std::int64_t residue, Sign sign) {
  residue = ((residue % 3) + 3) % 3;
  const Rational zero = 0;
  const std::vector<ETableRow> plus_rows{
      {zero, zero, zero},
      {zero, frac(3, 5), frac(7, 5)},
      {frac(1, 2), frac(1, 10), frac(7, 5)},
      {frac(1, 2), frac(3, 2), zero},
  };
  const std::vector<ETableRow> minus_rows{
      {zero, frac(3, 5), frac(2, 5)},
      {frac(1, 2), frac(1, 10), frac(2, 5)},
      {zero, zero, Rational(3)},
      {frac(1, 2), frac(3, 2), Rational(3)},
  };
  const std::vector<ETableRow> eta_rows{
      {zero, zero, frac(2, 3)},
      {zero, frac(3, 5), frac(1, 15)},
      {frac(1, 2), frac(1, 10), frac(1, 15)},
      {frac(1, 2), frac(3, 2), frac(2, 3)},
  };
  if (residue != 0) {
    if (sign != Sign::full) throw DomainError("signed E-table requested for residue != 0");
    return eta_rows;
  }
  if (sign == Sign::plus) return plus_rows;
  if (sign == Sign::minus) return minus_rows;
  std::vector<ETableRow> all = plus_rows;
  all.insert(all.end(), minus_rows.begin(), minus_rows.end());
  return all;
}

QSeries e_table_character(std::int64_t residue, Sign sign, const Rational& cutoff) {
  const auto charges = e_table_charges();
  QSeries total(cutoff);
  for (const auto& row : e_table(residue, sign)) {
    QSeries term = QSeries::one(cutoff);
    for (int i = 0; i < 3; ++i) term = multiply(term, char_minimal(charges[i], row[i], cutoff));
    total += term;
  }
  return total;
}

LatticeCoset e_coset(std::int64_t residue) {
  const LatticeFamily fam = build_family(3);
  residue = ((residue % 3) + 3) % 3;
  RatVec shift = fam.eta;
  for (auto& v : shift) v *= residue;
  return make_coset(fam.E, shift);
}

}  // namespace voabranch
