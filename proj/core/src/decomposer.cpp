#include "voabranch/decomposer.hpp"

#include <algorithm>
#include <bit>

namespace voabranch {
namespace {

using Content = std::map<std::vector<Rational>, Integer>;

// Every tuple (row, h_3, ..., h_l) with total weight <= cutoff.
void expand(const std::vector<ETableRow>& rows, const std::vector<BranchList>& factors,
            const Rational& cutoff, Content& out) {
  std::vector<Rational> tuple(3 + factors.size());
  auto recurse = [&](auto&& self, std::size_t idx, const Rational& weight,
                     const Integer& mult) -> void {
    if (idx == factors.size()) {
      out[tuple] += mult;
      return;
    }
    for (const auto& [h, m] : factors[idx].entries) {
      if (weight + h > cutoff) break;
      tuple[3 + idx] = h;
      self(self, idx + 1, weight + h, mult * m);
    }
  };
  for (const auto& row : rows) {
    const Rational w = row[0] + row[1] + row[2];
    if (w > cutoff) continue;
    std::copy(row.begin(), row.end(), tuple.begin());
    recurse(recurse, 0, w, Integer(1));
  }
}

std::vector<RankOneCoset> rank_one_factors(const CosetFactorization& f) {
  std::vector<RankOneCoset> out;
  for (std::size_t i = 0; i < f.a.size(); ++i) out.push_back(RankOneCoset{f.n[i], f.a[i]});
  return out;
}

QSeries content_character(const Content& content, const std::vector<Rational>& charges,
                          const Rational& cutoff) {
  std::vector<Summand> summands;
  for (const auto& [h, mult] : content) {
    Summand s{{}, mult, 0};
    for (std::size_t i = 0; i < h.size(); ++i) s.labels.push_back(ModuleLabel{charges[i], h[i]});
    summands.push_back(std::move(s));
  }
  return assemble(summands, cutoff);
}

}  // namespace

std::vector<Rational> summand_charges(int l) {
  std::vector<Rational> c{frac(1, 2), frac(7, 10), frac(4, 5)};
  for (int i = 4; i <= l + 1; ++i) c.push_back(1);
  return c;
}

Content coset_content(const LatticeFamily& fam, const CosetLabel& label, Sign sign,
                      const Rational& cutoff) {
  const CosetFactorization f = factorize(fam, label);
  const auto factors = rank_one_factors(f);
  Content out;
  if (label.cls != CosetClass::Lambda1) {
    if (sign != Sign::full) throw DomainError("signed content requested for a Lambda2 coset");
    std::vector<BranchList> lists;
    for (const auto& rc : factors) lists.push_back(branch(rc, Sign::full, cutoff));
    expand(e_table(f.e_residue, Sign::full), lists, cutoff, out);
    return out;
  }
  if (sign == Sign::full) throw DomainError("full content requested for a Lambda1 coset");
  if (f.e_residue != 0) throw InternalConsistencyError("Lambda1 coset with nonzero E residue");
  for (const auto& rc : factors)
    if (rc.a != 0 && rc.a != rc.n)
      throw InternalConsistencyError("Lambda1 coset with a rank-one factor not in {0, n}");

  // sign tuples over the E factor and the l - 2 rank-one factors
  const std::size_t k = factors.size() + 1;
  const bool want_odd = sign == Sign::minus;
  for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
    if ((std::popcount(mask) % 2 == 1) != want_odd) continue;
    auto sign_of = [&](std::size_t i) { return (mask >> i) & 1 ? Sign::minus : Sign::plus; };
    std::vector<BranchList> lists;
    for (std::size_t i = 0; i < factors.size(); ++i)
      lists.push_back(branch(factors[i], sign_of(i + 1), cutoff));
    expand(e_table(0, sign_of(0)), lists, cutoff, out);
  }
  return out;
}

std::vector<Summand> decompose(int l, Sign parity, const Rational& cutoff) {
  if (parity == Sign::full) throw DomainError("decompose needs parity plus or minus");
  const LatticeFamily fam = build_family(l);
  const auto labels = classify(fam, coset_reps(fam));
  Content total;
  for (const auto& label : labels) {
    if (label.cls == CosetClass::Lambda2Neg) continue;
    const Sign s = label.cls == CosetClass::Lambda1 ? parity : Sign::full;
    for (auto& [h, mult] : coset_content(fam, label, s, cutoff)) total[h] += mult;
  }
  const auto charges = summand_charges(l);
  std::vector<Summand> out;
  for (const auto& [h, mult] : total) {
    Summand s{{}, mult, 0};
    for (std::size_t i = 0; i < h.size(); ++i) {
      s.labels.push_back(ModuleLabel{charges[i], h[i]});
      s.min_weight += h[i];
    }
    out.push_back(std::move(s));
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const Summand& a, const Summand& b) { return a.min_weight < b.min_weight; });
  return out;
}

QSeries assemble(const std::vector<Summand>& summands, const Rational& cutoff) {
  // Sorting by h-tuple lets consecutive summands share prefix products.
  std::vector<const Summand*> order;
  for (const auto& s : summands) order.push_back(&s);
  auto key = [](const Summand* s) {
    std::vector<std::pair<Rational, Rational>> k;
    for (const auto& lab : s->labels) k.emplace_back(lab.c, lab.h);
    return k;
  };
  std::sort(order.begin(), order.end(), [&](auto* a, auto* b) { return key(a) < key(b); });

  CharacterCache cache(cutoff);
  QSeries total(cutoff);
  std::vector<QSeries> prefix;  // prefix[i] = product of the first i + 1 characters
  const Summand* prev = nullptr;
  for (const Summand* s : order) {
    std::size_t keep = 0;
    if (prev && prev->labels.size() == s->labels.size())
      while (keep < s->labels.size() && prev->labels[keep] == s->labels[keep]) ++keep;
    if (keep < prefix.size()) prefix.erase(prefix.begin() + static_cast<std::ptrdiff_t>(keep), prefix.end());
    for (std::size_t i = prefix.size(); i < s->labels.size(); ++i) {
      const QSeries& ch = cache.get(s->labels[i]);
      prefix.push_back(i == 0 ? ch : multiply(prefix.back(), ch));
    }
    if (!prefix.empty()) total += prefix.back().scaled(Rational(s->mult));
    prev = s;
  }
  return total;
}

bool VerifyReport::ok() const {
  return residual.terms().empty() &&
         std::all_of(cosets.begin(), cosets.end(), [](const CosetCheck& c) { return c.ok; });
}

VerifyReport verify(int l, Sign parity, const Rational& cutoff) {
  if (parity == Sign::full) throw DomainError("verify needs parity plus or minus");
  const LatticeFamily fam = build_family(l);
  const auto labels = classify(fam, coset_reps(fam));
  const auto thetas = theta_by_coset(fam, labels, cutoff);
  const auto charges = summand_charges(l);
  const QSeries inv_phi = product_family(EulerKind::minus, -l, cutoff);
  const QSeries twisted = product_family(EulerKind::plus, -l, cutoff);

  std::vector<CosetCheck> checks;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const auto& label = labels[i];
    if (label.cls == CosetClass::Lambda2Neg) continue;
    const QSeries full = multiply(thetas[i], inv_phi);
    bool ok = false;
    if (label.cls == CosetClass::Lambda2Pos) {
      ok = content_character(coset_content(fam, label, Sign::full, cutoff), charges, cutoff) == full;
    } else {
      const QSeries plus =
          content_character(coset_content(fam, label, Sign::plus, cutoff), charges, cutoff);
      const QSeries minus =
          content_character(coset_content(fam, label, Sign::minus, cutoff), charges, cutoff);
      const bool is_zero_coset = label.n == 0 && std::all_of(label.m.begin(), label.m.end(),
                                                             [](auto x) { return x == 0; });
      ok = plus + minus == full &&
           plus - minus == (is_zero_coset ? twisted : QSeries::zero(cutoff));
    }
    checks.push_back(CosetCheck{label, ok});
  }

  auto summands = decompose(l, parity, cutoff);
  QSeries assembled = assemble(summands, cutoff);
  QSeries oracle = oracle_lattice_char(make_coset(fam.L), parity, cutoff);
  return VerifyReport{oracle - assembled, std::move(checks), std::move(summands),
                      std::move(assembled)};
}

}  // namespace voabranch
