#pragma once

#include <compare>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "voabranch/lattice.hpp"

namespace voabranch::voa {

/// Request outside the supported product window (wt u <= 2, result wt <= 4).
class UnsupportedRangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// State outside the finite span on which tau is tabulated.
class UnsupportedSpanError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// a_{index+1}(-mode) with mode >= 1.
struct Oscillator {
  int mode = 1;
  int index = 0;
  auto operator<=>(const Oscillator&) const = default;
};

/// Basis vector a_{i1}(-k1)...a_{ir}(-kr) (x) e^b of V_L. The oscillator
/// multiset is kept sorted so equal states compare equal.
struct Monomial {
  std::vector<Oscillator> oscillators;
  IntVec lattice;

  std::int64_t weight() const;
  auto operator<=>(const Monomial&) const = default;
};

/// Finite rational combination of monomials of V_L for L = Z^l with Gram
/// 2*Identity. The 2-cocycle is trivial: every inner product in L is even.
class VoaState {
 public:
  explicit VoaState(int rank) : rank_(rank) {}

  static VoaState vacuum(int rank);
  /// e^b.
  static VoaState exponential(const IntVec& beta);
  /// h_1(-k_1) ... h_r(-k_r) (x) e^b with rational directions h in a-coordinates,
  /// expanded multilinearly.
  static VoaState oscillators(const std::vector<std::pair<RatVec, int>>& factors,
                              const IntVec& beta);
  /// h(-1)^2 1.
  static VoaState square(const RatVec& h);
  static VoaState square(const IntVec& h) { return square(to_rational(h)); }

  int rank() const { return rank_; }
  const std::map<Monomial, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Rational coefficient(const Monomial& m) const;

  void add_term(const Monomial& m, const Rational& coefficient);
  /// Weight if every monomial has the same weight.
  std::optional<std::int64_t> homogeneous_weight() const;
  /// Components of weight exactly w.
  VoaState weight_component(std::int64_t w) const;

  VoaState& operator+=(const VoaState& other);
  VoaState& operator-=(const VoaState& other);
  VoaState& operator*=(const Rational& k);
  friend VoaState operator+(VoaState a, const VoaState& b) { return a += b; }
  friend VoaState operator-(VoaState a, const VoaState& b) { return a -= b; }
  friend VoaState operator*(const Rational& k, VoaState a) { return a *= k; }
  friend bool operator==(const VoaState& a, const VoaState& b) {
    return a.rank_ == b.rank_ && a.terms_ == b.terms_;
  }

  /// One line per monomial: "coef * a1(-1)a2(-2) e[c1,...,cl]", sorted.
  std::string to_string() const;

 private:
  int rank_;
  std::map<Monomial, Rational> terms_;
};

/// u_(n) v, where Y(u, z) = sum_n u_(n) z^{-n-1}. Every monomial of u must
/// have weight <= 2 and every result weight wt(u) + wt(v) - n - 1 must be
/// <= 4; otherwise UnsupportedRangeError.
VoaState vertex_coeff(const VoaState& u, int n, const VoaState& v);

/// Coefficient of z^j in exp(sum_{k>=1} b(-k) z^k / k) acting on the vacuum
/// (lattice part zero). P_0 = 1, P_j = 0 for j < 0.
VoaState schur_polynomial(const IntVec& beta, int j);

/// Virasoro element (1/4) sum a_i(-1)^2 of V_L.
VoaState lattice_virasoro(int rank);

enum class Automorphism { psi1, psi2, phi };

/// psi1: e^b -> (-1)^{<a_1+...+a_l, b>/2} e^b; psi2: induced by b -> -b;
/// phi: e^b -> (-1)^{<a_2+a_3, b>/2} e^b. All fix M(1) except psi2, which
/// negates every oscillator.
VoaState apply_diag(Automorphism which, const VoaState& v);

/// tau on the span of {h(-1)h'(-1) 1, e^g + e^{-g} : <g,g> = 4}; anything else
/// throws UnsupportedSpanError.
VoaState tau_on_span(const VoaState& v);

/// rho = phi o tau on the same span.
VoaState rho_on_span(const VoaState& v);

/// Named low-weight vectors built from the D_l data of a lattice family.
enum class NamedKind { w_plus, w_minus, s, omega, omega_i, omega_tilde_i, virasoro_gamma };

struct NamedVector {
  NamedKind kind = NamedKind::omega;
  int index = 0;     // r for s^r and gamma_r; i for omega^i
  IntVec root;       // sqrt(2)*b for w^{+/-}(b), <root, root> = 4
};

/// Accepts "w+(c1,...,cl)", "w-(...)", "s3", "omega", "omega1", "omegatilde4",
/// "vir3" (Virasoro element of Z gamma_3).
NamedVector parse_named(std::string_view text);
std::string to_string(const NamedVector& name);

/// w^{+/-}(b) = (1/2) b(-1)^2 +/- (e^{sqrt2 b} + e^{-sqrt2 b}) with root = sqrt2 b.
VoaState w_vector(const IntVec& root, bool plus);

VoaState build_named(const LatticeFamily& fam, const NamedVector& name);

struct ConformalReport {
  bool is_conformal = false;
  std::optional<Rational> central_charge;
  std::vector<std::string> failures;
};

/// Checks v_(1)v = 2v, v_(2)v = 0, v_(3)v = (c/2) 1 and v_(0)v = w_(0)v for the
/// Virasoro element w of V_L. Throws DomainError unless v is homogeneous of
/// weight 2.
ConformalReport conformal_check(const VoaState& v);

}  // namespace voabranch::voa
