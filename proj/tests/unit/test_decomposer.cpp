#include <doctest.h>

#include <set>

#include "voabranch/decomposer.hpp"

using namespace voabranch;

namespace {

std::vector<Rational> h_tuple(const Summand& s) {
  std::vector<Rational> h;
  for (const auto& lab : s.labels) h.push_back(lab.h);
  return h;
}

}  // namespace

TEST_SUITE("decomposer") {
  TEST_CASE("charges") {
    CHECK(summand_charges(3) == std::vector<Rational>{frac(1, 2), frac(7, 10), frac(4, 5), 1});
    CHECK(summand_charges(5).size() == 6);
  }

  TEST_CASE("l = 4 top level is assembled from Lambda1 and positive Lambda2 cosets") {
    const LatticeFamily fam = build_family(4);
    const auto labels = classify(fam, coset_reps(fam));
    std::map<std::vector<Rational>, Integer> expect;
    std::set<std::string> used;
    for (const auto& lab : labels) {
      if (lab.cls == CosetClass::Lambda2Neg) continue;
      used.insert(lab.to_string());
      const Sign s = lab.cls == CosetClass::Lambda1 ? Sign::plus : Sign::full;
      for (const auto& [h, m] : coset_content(fam, lab, s, 8)) expect[h] += m;
    }
    CHECK(used == std::set<std::string>{";0", ";1", ";2", ";3", ";4", ";5", ";6"});
    std::map<std::vector<Rational>, Integer> got;
    for (const auto& s : decompose(4, Sign::plus, 8)) got[h_tuple(s)] += s.mult;
    CHECK(got == expect);
  }

  TEST_CASE("vacuum and low weights") {
    for (int l = 3; l <= 6; ++l) {
      const auto summands = decompose(l, Sign::plus, 1);
      REQUIRE_FALSE(summands.empty());
      CHECK(summands.front().min_weight == 0);
      CHECK(summands.front().mult == 1);
      for (const auto& lab : summands.front().labels) CHECK(lab.h == 0);
      const QSeries dims = assemble(summands, 1);
      CHECK(dims.coefficient(0) == 1);
      CHECK(dims.coefficient(1) == l);
    }
    CHECK(assemble(decompose(4, Sign::plus, 1), 1).coefficient(1) == 4);
  }

  TEST_CASE("ordering, positivity and table membership") {
    std::set<ETableRow> rows;
    for (Sign s : {Sign::plus, Sign::minus})
      for (const auto& r : e_table(0, s)) rows.insert(r);
    for (const auto& r : e_table(1, Sign::full)) rows.insert(r);
    for (Sign parity : {Sign::plus, Sign::minus}) {
      const auto summands = decompose(5, parity, 6);
      for (std::size_t i = 0; i < summands.size(); ++i) {
        const auto& s = summands[i];
        CHECK(s.mult > 0);
        CHECK(s.min_weight <= 6);
        CHECK(s.labels.size() == 6);
        CHECK(rows.count(ETableRow{s.labels[0].h, s.labels[1].h, s.labels[2].h}) == 1);
        Rational w = 0;
        for (const auto& lab : s.labels) w += lab.h;
        CHECK(w == s.min_weight);
        if (i > 0) {
          const auto& p = summands[i - 1];
          CHECK((p.min_weight < s.min_weight || (p.min_weight == s.min_weight && h_tuple(p) < h_tuple(s))));
        }
      }
    }
  }

  TEST_CASE("V_L eigenspace decompositions verify with zero residual") {
    for (int l = 3; l <= 4; ++l)
      for (Sign parity : {Sign::plus, Sign::minus}) {
        const VerifyReport report = verify(l, parity, 8);
        CHECK(report.residual.is_zero());
        CHECK(report.ok());
        for (const auto& c : report.cosets) CHECK(c.ok);
      }
  }

  TEST_CASE("a tampered table is detected") {
    auto summands = decompose(4, Sign::plus, 6);
    const LatticeFamily fam = build_family(4);
    const QSeries oracle = oracle_lattice_char(make_coset(fam.L), Sign::plus, 6);
    CHECK(assemble(summands, 6) == oracle);
    summands.back().mult += 1;
    CHECK(assemble(summands, 6) != oracle);
    summands.pop_back();
    CHECK(assemble(summands, 6) != oracle);
  }

  TEST_CASE("preconditions") {
    CHECK_THROWS_AS(decompose(2, Sign::plus, 8), DomainError);
    CHECK_THROWS_AS(decompose(4, Sign::full, 8), DomainError);
    const LatticeFamily fam = build_family(4);
    const auto labels = classify(fam, coset_reps(fam));
    CHECK_THROWS_AS(coset_content(fam, labels[0], Sign::full, 8), DomainError);
    CHECK_THROWS_AS(coset_content(fam, labels[1], Sign::plus, 8), DomainError);
  }
}
