#include <doctest.h>

#include "voabranch/chars.hpp"

using namespace voabranch;

namespace {

// prod_{n>=1} (1 + sign q^{n - 1/2})
QSeries fermion_product(int sign, const Rational& cutoff) {
  QSeries p = QSeries::one(cutoff);
  for (int n = 1; Rational(n) - frac(1, 2) <= cutoff; ++n) {
    QSeries f = QSeries::one(cutoff);
    f.add_term(Rational(n) - frac(1, 2), sign);
    p = multiply(p, f);
  }
  return p;
}

bool nonnegative_integral(const QSeries& s) {
  for (const auto& [e, c] : s.terms())
    if (c < 0 || !is_integer(c)) return false;
  return true;
}

// Dimension of the psi_2-fixed subspace of V_L (L = Z^l, Gram 2I) at each
// integer weight <= top, by enumerating oscillator monomials times e^b.
std::vector<long> fixed_dims(int l, int top) {
  // number of oscillator monomials of weight w with k oscillators, l colours
  std::vector<std::vector<long>> osc(top + 1, std::vector<long>(top + 1, 0));
  osc[0][0] = 1;
  for (int mode = 1; mode <= top; ++mode)
    for (int colour = 0; colour < l; ++colour)
      for (int w = top; w >= 0; --w)
        for (int k = top; k >= 0; --k)
          for (int t = 1; w - t * mode >= 0 && k - t >= 0; ++t) osc[w][k] += osc[w - t * mode][k - t];
  std::vector<long> lattice(top + 1, 0);  // nonzero b with given weight sum b_i^2
  std::vector<int> c(l, -3);
  while (true) {
    int w = 0;
    bool zero = true;
    for (int x : c) {
      w += x * x;
      zero = zero && x == 0;
    }
    if (!zero && w <= top) ++lattice[w];
    std::size_t k = 0;
    while (k < c.size() && c[k] == 3) c[k++] = -3;
    if (k == c.size()) break;
    ++c[k];
  }
  std::vector<long> dims(top + 1, 0);
  for (int n = 0; n <= top; ++n) {
    for (int k = 0; k <= n; k += 2) dims[n] += osc[n][k];  // b = 0, even oscillator count
    for (int w = 1; w <= n; ++w)
      for (int k = 0; k <= n; ++k) dims[n] += osc[n - w][k] * lattice[w] / 2;  // pairs b, -b
  }
  return dims;
}

}  // namespace

TEST_SUITE("chars") {
  TEST_CASE("char_c1 examples") {
    const QSeries vac = char_c1(0, 4);
    const std::vector<int> expect{1, 0, 1, 1, 2};
    for (int i = 0; i <= 4; ++i) CHECK(vac.coefficient(i) == expect[i]);

    const QSeries inv_phi = product_family(EulerKind::minus, -1, 10);
    QSeries h1(10);
    h1.add_term(1, 1);
    h1.add_term(4, -1);
    CHECK(char_c1(1, 10) == multiply(h1, inv_phi));

    CHECK(char_c1(frac(1, 12), 10) == multiply(QSeries::monomial(frac(1, 12), 1, 10), inv_phi));
  }

  TEST_CASE("Heisenberg and A1 sums of char_c1") {
    const Rational cutoff = 30;
    const QSeries inv_phi = product_family(EulerKind::minus, -1, cutoff);
    QSeries heis(cutoff), a1(cutoff), theta(cutoff);
    for (int p = 0; p * p <= 30; ++p) {
      heis += char_c1(p * p, cutoff);
      a1 += char_c1(p * p, cutoff).scaled(2 * p + 1);
    }
    for (int k = -6; k <= 6; ++k) theta.add_term(k * k, 1);
    CHECK(heis == inv_phi);
    CHECK(a1 == multiply(theta, inv_phi));
  }

  TEST_CASE("Ising characters against free fermions") {
    const Rational cutoff = 12;
    const QSeries plus = fermion_product(1, cutoff), minus = fermion_product(-1, cutoff);
    CHECK(char_minimal(frac(1, 2), 0, cutoff) == (plus + minus).scaled(frac(1, 2)));
    CHECK(char_minimal(frac(1, 2), frac(1, 2), cutoff) == (plus - minus).scaled(frac(1, 2)));
    const QSeries vac = char_minimal(frac(1, 2), 0, cutoff);
    const std::vector<int> expect{1, 0, 1, 1, 2, 2};
    for (int i = 0; i <= 5; ++i) CHECK(vac.coefficient(i) == expect[i]);
    // h = 1/16: q^{1/16} prod (1 + q^n)
    QSeries sigma = product_family(EulerKind::plus, 1, cutoff);
    CHECK(char_minimal(frac(1, 2), frac(1, 16), cutoff) == sigma.shifted(frac(1, 16)));
  }

  TEST_CASE("first singular vectors of every Kac module") {
    // Below the second generation of singular vectors the character is
    // q^h (1 - q^{rs} - q^{(p'-r)(p-s)}) / phi.
    for (auto [p, pp] : std::vector<std::pair<int, int>>{{4, 3}, {5, 4}, {6, 5}}) {
      const Rational c = 1 - frac(6 * (p - pp) * (p - pp), p * pp);
      CHECK(minimal_model_of(c) == std::pair<std::int64_t, std::int64_t>{p, pp});
      for (int r = 1; r < pp; ++r)
        for (int s = 1; s < p; ++s) {
          const Rational h = frac((r * p - s * pp) * (r * p - s * pp) - (p - pp) * (p - pp), 4 * p * pp);
          const int a = r * s, b = (pp - r) * (p - s);
          const Rational cutoff = h + std::max(a, b);
          QSeries num(cutoff);
          num.add_term(h, 1);
          num.add_term(h + a, -1);
          num.add_term(h + b, -1);
          CHECK(char_minimal(c, h, cutoff) ==
                multiply(num, product_family(EulerKind::minus, -1, cutoff)));
        }
    }
  }

  TEST_CASE("normalization and labels") {
    CHECK(char_minimal(frac(4, 5), 3, 10).lowest_exponent() == Rational(3));
    CHECK(char_minimal(frac(4, 5), 3, 10).coefficient(3) == 1);
    CHECK(char_minimal(frac(7, 10), frac(3, 2), 10).lowest_exponent() == frac(3, 2));
    CHECK(char_minimal(frac(7, 10), frac(3, 2), 10).coefficient(frac(3, 2)) == 1);
    const KacLabel k = kac_label(frac(1, 2), 0);
    CHECK(k.p == 4);
    CHECK(k.p_prime == 3);
    CHECK(k.r == 1);
    CHECK(k.s == 1);
    CHECK_THROWS_AS(kac_label(frac(1, 2), frac(1, 3)), DomainError);
    CHECK_THROWS_AS(char_minimal(frac(1, 2), frac(1, 3), 5), DomainError);
    CHECK_THROWS_AS(char_minimal(1, 0, 5), DomainError);
    CHECK_FALSE(minimal_model_of(1).has_value());
    CHECK(character(ModuleLabel{1, frac(1, 12)}, 6) == char_c1(frac(1, 12), 6));
    CHECK(character(ModuleLabel{frac(4, 5), frac(2, 3)}, 6) == char_minimal(frac(4, 5), frac(2, 3), 6));
    CharacterCache cache(6);
    CHECK(cache.get(ModuleLabel{frac(7, 10), frac(3, 5)}) == char_minimal(frac(7, 10), frac(3, 5), 6));
  }

  TEST_CASE("coefficients are nonnegative integers") {
    for (auto h : {frac(0, 1), frac(1, 10), frac(3, 5), frac(3, 2), frac(7, 16), frac(3, 80)})
      CHECK(nonnegative_integral(char_minimal(frac(7, 10), h, 12)));
    for (auto h : {frac(0, 1), frac(1, 15), frac(2, 5), frac(2, 3), frac(7, 5), frac(3, 1)})
      CHECK(nonnegative_integral(char_minimal(frac(4, 5), h, 12)));
    for (auto h : {frac(0, 1), frac(1, 4), frac(1, 12), frac(9, 4)}) CHECK(nonnegative_integral(char_c1(h, 12)));
  }

  TEST_CASE("lattice oracle characters") {
    const LatticeFamily three = build_family(3);
    const QSeries plus = oracle_lattice_char(make_coset(three.L), Sign::plus, 6);
    CHECK(plus.coefficient(0) == 1);
    CHECK(plus.coefficient(1) == 3);
    const auto dims = fixed_dims(3, 6);
    for (int n = 0; n <= 6; ++n) CHECK(plus.coefficient(n) == dims[n]);
    const auto dims4 = fixed_dims(4, 5);
    const QSeries plus4 = oracle_lattice_char(make_coset(build_family(4).L), Sign::plus, 5);
    for (int n = 0; n <= 5; ++n) CHECK(plus4.coefficient(n) == dims4[n]);

    for (std::int64_t n : {1, 3, 4, 6}) {
      const LatticeCoset c = rank_one_coset(n, 0);
      CHECK(oracle_lattice_char(c, Sign::plus, 8).coefficient(0) == 1);
      CHECK(oracle_lattice_char(c, Sign::plus, 8) + oracle_lattice_char(c, Sign::minus, 8) ==
            oracle_lattice_char(c, Sign::full, 8));
    }

    const LatticeFamily four = build_family(4);
    const LatticeCoset six = make_coset(four.D, to_rational(6 * four.alpha[1]));
    const QSeries full = multiply(theta_series(six, 8), product_family(EulerKind::minus, -4, 8));
    CHECK(oracle_lattice_char(six, Sign::plus, 8) == full.scaled(frac(1, 2)));
    CHECK(oracle_lattice_char(six, Sign::minus, 8) == full.scaled(frac(1, 2)));
    CHECK(oracle_lattice_char(six, Sign::full, 8) == full);

    const LatticeCoset one = make_coset(four.D, to_rational(four.alpha[1]));
    CHECK_THROWS_AS(oracle_lattice_char(one, Sign::plus, 8), DomainError);
  }
}
