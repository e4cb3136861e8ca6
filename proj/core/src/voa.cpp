#include "voabranch/voa.hpp"

#include <algorithm>
#include <sstream>

namespace voabranch::voa {
namespace {

constexpr std::int64_t kMaxInputWeight = 2;
constexpr std::int64_t kMaxResultWeight = 4;
constexpr int kMaxSchurDegree = 6;

std::int64_t lattice_weight(const IntVec& beta) {
  std::int64_t s = 0;
  for (auto b : beta) s += b * b;
  return s;
}

Rational binomial(std::int64_t top, std::int64_t k) {
  if (k < 0) return 0;
  Rational r = 1;
  for (std::int64_t i = 0; i < k; ++i) r *= frac(top - i, i + 1);
  return r;
}

void insert_oscillator(Monomial& m, Oscillator o) {
  m.oscillators.insert(std::upper_bound(m.oscillators.begin(), m.oscillators.end(), o), o);
}

// Commuting product of two Fock states; the lattice part comes from `b`.
VoaState multiply_fock(const VoaState& a_vac, const VoaState& b) {
  VoaState out(b.rank());
  for (const auto& [ma, ca] : a_vac.terms())
    for (const auto& [mb, cb] : b.terms()) {
      Monomial m = mb;
      for (const auto& o : ma.oscillators) insert_oscillator(m, o);
      out.add_term(m, ca * cb);
    }
  return out;
}

// a_{index+1}(-mode) s, mode >= 1.
VoaState create(const VoaState& s, int index, int mode) {
  VoaState out(s.rank());
  for (const auto& [m, c] : s.terms()) {
    Monomial t = m;
    insert_oscillator(t, Oscillator{mode, index});
    out.add_term(t, c);
  }
  return out;
}

// a_{index+1}(mode) s for mode >= 0.
VoaState annihilate(const VoaState& s, int index, int mode) {
  VoaState out(s.rank());
  for (const auto& [m, c] : s.terms()) {
    if (mode == 0) {
      out.add_term(m, c * 2 * m.lattice[index]);
      continue;
    }
    const Oscillator target{mode, index};
    auto it = std::lower_bound(m.oscillators.begin(), m.oscillators.end(), target);
    if (it == m.oscillators.end() || *it != target) continue;
    auto count = std::count(it, m.oscillators.end(), target);
    Monomial t = m;
    t.oscillators.erase(t.oscillators.begin() + (it - m.oscillators.begin()));
    out.add_term(t, c * static_cast<long>(count) * 2 * mode);
  }
  return out;
}

// h(mode) for a direction h in a-coordinates.
VoaState annihilate_direction(const VoaState& s, const IntVec& h, int mode) {
  VoaState out(s.rank());
  for (std::size_t i = 0; i < h.size(); ++i)
    if (h[i] != 0) out += Rational(static_cast<long>(h[i])) * annihilate(s, static_cast<int>(i), mode);
  return out;
}

int max_mode(const VoaState& s) {
  int k = 0;
  for (const auto& [m, c] : s.terms())
    for (const auto& o : m.oscillators) k = std::max(k, o.mode);
  return k;
}

using Graded = std::map<std::int64_t, VoaState>;  // power of z -> coefficient

void accumulate(Graded& g, std::int64_t power, const VoaState& s) {
  if (s.is_zero()) return;
  auto it = g.find(power);
  if (it == g.end())
    g.emplace(power, s);
  else
    it->second += s;
}

// Annihilation half of d^{k-1}/(k-1)! a_i(z): sum_{m>=0} C(-m-1, k-1) a_i(m) z^{-m-k}.
Graded apply_annihilation_field(const Graded& in, const Oscillator& f) {
  Graded out;
  for (const auto& [p, st] : in) {
    const int top = max_mode(st);
    for (int m = 0; m <= top; ++m) {
      VoaState t = annihilate(st, f.index, m);
      if (t.is_zero()) continue;
      t *= binomial(-m - 1, f.mode - 1);
      accumulate(out, p - m - f.mode, t);
    }
  }
  return out;
}

// E^+(-b, z) = exp(-sum_{k>=1} b(k) z^{-k} / k).
Graded apply_e_plus(Graded in, const IntVec& beta) {
  int top = 0;
  for (const auto& [p, st] : in) top = std::max(top, max_mode(st));
  for (int k = 1; k <= top; ++k) {
    Graded out;
    for (const auto& [p, st] : in) {
      VoaState power = st;
      Rational coef = 1;
      for (int t = 0; !power.is_zero(); ++t) {
        accumulate(out, p - static_cast<std::int64_t>(k) * t, coef * power);
        power = annihilate_direction(power, beta, k);
        coef *= frac(-1, static_cast<std::int64_t>(k) * (t + 1));
      }
    }
    in = std::move(out);
  }
  return in;
}

// Coefficient of z^target in Y(mu, z) mv, for single monomials.
VoaState monomial_product(const Monomial& mu, std::int64_t target, const Monomial& mv, int rank) {
  VoaState result(rank);
  const auto& factors = mu.oscillators;
  const IntVec& beta = mu.lattice;
  const std::size_t r = factors.size();
  VoaState start(rank);
  start.add_term(mv, 1);

  for (std::size_t mask = 0; mask < (std::size_t{1} << r); ++mask) {
    Graded cur{{0, start}};
    for (std::size_t a = 0; a < r; ++a)
      if (!(mask & (std::size_t{1} << a))) cur = apply_annihilation_field(cur, factors[a]);
    cur = apply_e_plus(std::move(cur), beta);

    // e^b z^{b(0)}
    Graded shifted;
    for (const auto& [p, st] : cur) {
      for (const auto& [m, c] : st.terms()) {
        Monomial t = m;
        const std::int64_t pairing = inner(beta, m.lattice);
        for (std::size_t i = 0; i < t.lattice.size(); ++i) t.lattice[i] += beta[i];
        VoaState single(rank);
        single.add_term(t, c);
        accumulate(shifted, p + pairing, single);
      }
    }

    std::vector<Oscillator> creators;
    for (std::size_t a = 0; a < r; ++a)
      if (mask & (std::size_t{1} << a)) creators.push_back(factors[a]);

    for (const auto& [p, st] : shifted) {
      const std::int64_t budget = target - p;
      if (budget < 0) continue;
      // split budget among creation fields (d_a >= 0 each) and P_j(b)
      std::vector<std::int64_t> d(creators.size(), 0);
      auto recurse = [&](auto&& self, std::size_t idx, std::int64_t left) -> void {
        if (idx == creators.size()) {
          VoaState term = multiply_fock(schur_polynomial(beta, static_cast<int>(left)), st);
          for (std::size_t a = 0; a < creators.size(); ++a) {
            const int k = creators[a].mode;
            term = create(term, creators[a].index, static_cast<int>(d[a]) + k);
            term *= binomial(d[a] + k - 1, k - 1);
          }
          result += term;
          return;
        }
        for (std::int64_t x = 0; x <= left; ++x) {
          d[idx] = x;
          self(self, idx + 1, left - x);
        }
      };
      recurse(recurse, 0, budget);
    }
  }
  return result;
}

}  // namespace

std::int64_t Monomial::weight() const {
  std::int64_t w = lattice_weight(lattice);
  for (const auto& o : oscillators) w += o.mode;
  return w;
}

VoaState VoaState::vacuum(int rank) { return exponential(IntVec(rank, 0)); }

VoaState VoaState::exponential(const IntVec& beta) {
  VoaState s(static_cast<int>(beta.size()));
  s.add_term(Monomial{{}, beta}, 1);
  return s;
}

VoaState VoaState::oscillators(const std::vector<std::pair<RatVec, int>>& factors,
                               const IntVec& beta) {
  VoaState s = exponential(beta);
  for (const auto& [dir, mode] : factors) {
    if (mode < 1) throw std::invalid_argument("oscillator mode must be >= 1");
    VoaState next(s.rank());
    for (std::size_t i = 0; i < dir.size(); ++i)
      if (dir[i] != 0) next += dir[i] * create(s, static_cast<int>(i), mode);
    s = std::move(next);
  }
  return s;
}

VoaState VoaState::square(const RatVec& h) {
  return oscillators({{h, 1}, {h, 1}}, IntVec(h.size(), 0));
}

Rational VoaState::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

void VoaState::add_term(const Monomial& m, const Rational& coefficient) {
  if (coefficient == 0) return;
  if (static_cast<int>(m.lattice.size()) != rank_)
    throw std::invalid_argument("monomial rank mismatch");
  auto [it, inserted] = terms_.try_emplace(m, coefficient);
  if (inserted) return;
  it->second += coefficient;
  if (it->second == 0) terms_.erase(it);
}

std::optional<std::int64_t> VoaState::homogeneous_weight() const {
  std::optional<std::int64_t> w;
  for (const auto& [m, c] : terms_) {
    if (w && *w != m.weight()) return std::nullopt;
    w = m.weight();
  }
  return w;
}

VoaState VoaState::weight_component(std::int64_t w) const {
  VoaState out(rank_);
  for (const auto& [m, c] : terms_)
    if (m.weight() == w) out.add_term(m, c);
  return out;
}

VoaState& VoaState::operator+=(const VoaState& other) {
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

VoaState& VoaState::operator-=(const VoaState& other) {
  for (const auto& [m, c] : other.terms_) add_term(m, -c);
  return *this;
}

VoaState& VoaState::operator*=(const Rational& k) {
  if (k == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, c] : terms_) c *= k;
  return *this;
}

std::string VoaState::to_string() const {
  std::ostringstream os;
  for (const auto& [m, c] : terms_) {
    os << voabranch::to_string(c) << " * ";
    for (const auto& o : m.oscillators) os << 'a' << (o.index + 1) << "(-" << o.mode << ')';
    if (!m.oscillators.empty()) os << ' ';
    os << "e[";
    for (std::size_t i = 0; i < m.lattice.size(); ++i) os << (i ? "," : "") << m.lattice[i];
    os << "]\n";
  }
  return os.str();
}

VoaState schur_polynomial(const IntVec& beta, int j) {
  const int rank = static_cast<int>(beta.size());
  if (j < 0) return VoaState(rank);
  if (j > kMaxSchurDegree)
    throw UnsupportedRangeError("Schur polynomial degree beyond " + std::to_string(kMaxSchurDegree));
  // j P_j = sum_{k=1}^{j} b(-k) P_{j-k}
  std::vector<VoaState> p{VoaState::vacuum(rank)};
  for (int d = 1; d <= j; ++d) {
    VoaState next(rank);
    for (int k = 1; k <= d; ++k)
      for (int i = 0; i < rank; ++i)
        if (beta[i] != 0) next += Rational(static_cast<long>(beta[i])) * create(p[d - k], i, k);
    next *= frac(1, d);
    p.push_back(std::move(next));
  }
  return p[j];
}

VoaState vertex_coeff(const VoaState& u, int n, const VoaState& v) {
  if (u.rank() != v.rank()) throw std::invalid_argument("rank mismatch in vertex_coeff");
  VoaState result(u.rank());
  for (const auto& [mu, cu] : u.terms()) {
    const std::int64_t wu = mu.weight();
    if (wu > kMaxInputWeight)
      throw UnsupportedRangeError("vertex_coeff: left argument has weight " + std::to_string(wu));
    for (const auto& [mv, cv] : v.terms()) {
      const std::int64_t wr = wu + mv.weight() - n - 1;
      if (wr > kMaxResultWeight)
        throw UnsupportedRangeError("vertex_coeff: result weight " + std::to_string(wr) +
                                    " outside the supported window");
      if (wr < 0) continue;
      IntVec sum = mu.lattice + mv.lattice;
      if (lattice_weight(sum) > wr) continue;
      VoaState term = monomial_product(mu, -static_cast<std::int64_t>(n) - 1, mv, u.rank());
      term *= cu * cv;
      result += term;
    }
  }
  return result;
}

VoaState lattice_virasoro(int rank) {
  VoaState w(rank);
  for (int i = 0; i < rank; ++i) {
    IntVec e(rank, 0);
    e[i] = 1;
    w += frac(1, 4) * VoaState::square(e);
  }
  return w;
}

VoaState apply_diag(Automorphism which, const VoaState& v) {
  VoaState out(v.rank());
  for (const auto& [m, c] : v.terms()) {
    Monomial t = m;
    Rational coef = c;
    switch (which) {
      case Automorphism::psi1: {
        std::int64_t s = 0;
        for (auto b : m.lattice) s += b;  // <a_1 + ... + a_l, b> / 2
        if (s % 2 != 0) coef = -coef;
        break;
      }
      case Automorphism::psi2:
        if (m.oscillators.size() % 2 != 0) coef = -coef;
        for (auto& b : t.lattice) b = -b;
        break;
      case Automorphism::phi: {
        if (m.lattice.size() < 3) throw std::invalid_argument("phi needs rank >= 3");
        if ((m.lattice[1] + m.lattice[2]) % 2 != 0) coef = -coef;
        break;
      }
    }
    out.add_term(t, coef);
  }
  return out;
}

VoaState tau_on_span(const VoaState& v) {
  const int rank = v.rank();
  auto unit = [&](int i, std::int64_t s) {
    IntVec e(rank, 0);
    e[i] = s;
    return e;
  };
  VoaState out(rank);
  for (const auto& [m, c] : v.terms()) {
    const bool no_lattice = std::all_of(m.lattice.begin(), m.lattice.end(),
                                        [](auto b) { return b == 0; });
    if (no_lattice && m.oscillators.size() == 2 && m.oscillators[0].mode == 1 &&
        m.oscillators[1].mode == 1) {
      const int i = m.oscillators[0].index, j = m.oscillators[1].index;
      if (i == j) {
        out.add_term(m, c);  // sigma fixes a(-1)^2
      } else {
        // a_i(-1) a_j(-1) -> (e^{a_i} + e^{-a_i})(e^{a_j} + e^{-a_j})
        for (std::int64_t si : {1, -1})
          for (std::int64_t sj : {1, -1}) out.add_term(Monomial{{}, unit(i, si) + unit(j, sj)}, c);
      }
      continue;
    }
    if (m.oscillators.empty() && lattice_weight(m.lattice) == 2) {
      std::vector<int> idx;
      for (int i = 0; i < rank; ++i)
        if (m.lattice[i] != 0) idx.push_back(i);
      if (idx.size() != 2)
        throw UnsupportedSpanError("tau_on_span: e^" + VoaState::exponential(m.lattice).to_string());
      IntVec neg = m.lattice;
      for (auto& b : neg) b = -b;
      if (v.coefficient(Monomial{{}, neg}) != c)
        throw UnsupportedSpanError("tau_on_span: exponential without its symmetric partner");
      // Each pair e^g + e^{-g} is visited twice; count half each time.
      const int i = idx[0], j = idx[1];
      const std::int64_t pm = m.lattice[i] * m.lattice[j];  // +1 for a_i + a_j, -1 for a_i - a_j
      const Rational half = c / 2;
      // tau(e^{a_i +/- a_j} + e^{-(a_i +/- a_j)})
      //   = 1/2 (a_i(-1)a_j(-1) +/- e^{a_i+a_j} -/+ e^{a_i-a_j} -/+ e^{-a_i+a_j} +/- e^{-a_i-a_j})
      VoaState img = VoaState::oscillators({{to_rational(unit(i, 1)), 1}, {to_rational(unit(j, 1)), 1}},
                                           IntVec(rank, 0));
      for (std::int64_t si : {1, -1})
        for (std::int64_t sj : {1, -1}) {
          Rational sign = (si * sj == 1) ? Rational(pm) : Rational(-pm);
          img.add_term(Monomial{{}, unit(i, si) + unit(j, sj)}, sign);
        }
      img *= half / 2;
      out += img;
      continue;
    }
    throw UnsupportedSpanError("tau_on_span: unsupported monomial " +
                               [&] {
                                 VoaState single(rank);
                                 single.add_term(m, 1);
                                 return single.to_string();
                               }());
  }
  return out;
}

VoaState rho_on_span(const VoaState& v) { return apply_diag(Automorphism::phi, tau_on_span(v)); }

VoaState w_vector(const IntVec& root, bool plus) {
  if (inner(root, root) != 4) throw DomainError("w-vector root must satisfy <root, root> = 4");
  IntVec neg = root;
  for (auto& b : neg) b = -b;
  VoaState w = frac(1, 4) * VoaState::square(root);
  VoaState exps = VoaState::exponential(root) + VoaState::exponential(neg);
  if (plus)
    w += exps;
  else
    w -= exps;
  return w;
}

namespace {

VoaState s_vector(const LatticeFamily& fam, int r) {
  const int l = fam.rank;
  if (r < 1 || r > l) throw DomainError("s^r needs 1 <= r <= l");
  const auto& a = fam.alpha;
  const auto& b = fam.root_scaled;
  if (r == 1) return frac(1, 4) * w_vector(b[0], false);
  if (r == 2)
    return frac(1, 5) * (w_vector(b[0], false) + w_vector(b[1], false) +
                         w_vector(b[0] + b[1], false));
  VoaState s(l);
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j) {
      s += w_vector(a[i] + a[j], false);
      s += w_vector(a[j] - a[i], false);
    }
  return frac(1, 2 * r) * s;
}

VoaState omega_vector(const LatticeFamily& fam) {
  const int l = fam.rank;
  const auto& a = fam.alpha;
  // sum over positive roots b of b(-1)^2 = (1/2) (sqrt2 b)(-1)^2
  VoaState s(l);
  for (int i = 0; i < l; ++i)
    for (int j = i + 1; j < l; ++j) {
      s += frac(1, 2) * VoaState::square(a[i] + a[j]);
      s += frac(1, 2) * VoaState::square(a[j] - a[i]);
    }
  return frac(1, 4 * (l - 1)) * s;
}

// rho(s^r) in closed form.
VoaState rho_s_closed(const LatticeFamily& fam, int r) {
  const auto& a = fam.alpha;
  const auto& b = fam.root_scaled;  // b[1] = sqrt2 b_2, b[2] = sqrt2 b_3
  if (r == 1) return frac(1, 4) * w_vector(b[2], false);
  if (r == 2)
    return frac(1, 5) * (w_vector(b[2], false) + w_vector(b[1], false) +
                         w_vector(b[1] + b[2], false));
  VoaState s(fam.rank);
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j) s += VoaState::square(a[i] - a[j]);
  return frac(1, 4 * r) * s;
}

VoaState gamma_virasoro(const LatticeFamily& fam, int r) {
  const IntVec& g = fam.gamma_of(r);
  return frac(1, 2 * inner(g, g)) * VoaState::square(g);
}

}  // namespace

VoaState build_named(const LatticeFamily& fam, const NamedVector& name) {
  const int l = fam.rank;
  switch (name.kind) {
    case NamedKind::w_plus:
    case NamedKind::w_minus:
      if (static_cast<int>(name.root.size()) != l) throw DomainError("w-vector root has wrong rank");
      return w_vector(name.root, name.kind == NamedKind::w_plus);
    case NamedKind::s:
      return s_vector(fam, name.index);
    case NamedKind::omega:
      return omega_vector(fam);
    case NamedKind::omega_i: {
      const int i = name.index;
      if (i < 1 || i > l + 1) throw DomainError("omega^i needs 1 <= i <= l+1");
      if (i == 1) return s_vector(fam, 1);
      if (i <= l) return s_vector(fam, i) - s_vector(fam, i - 1);
      return omega_vector(fam) - s_vector(fam, l);
    }
    case NamedKind::omega_tilde_i: {
      const int i = name.index;
      if (i < 1 || i > l + 1) throw DomainError("omega-tilde^i needs 1 <= i <= l+1");
      if (i == 1) return rho_s_closed(fam, 1);
      if (i <= 3) return rho_s_closed(fam, i) - rho_s_closed(fam, i - 1);
      const int r = i - 1;
      const IntVec& g = fam.gamma_of(r);
      const std::int64_t denom = r < l ? 4 * static_cast<std::int64_t>(r) * (r + 1) : 4 * l;
      return frac(1, denom) * VoaState::square(g);
    }
    case NamedKind::virasoro_gamma:
      if (name.index < 1 || name.index > l) throw DomainError("gamma_r needs 1 <= r <= l");
      return gamma_virasoro(fam, name.index);
  }
  throw DomainError("unknown named vector");
}

NamedVector parse_named(std::string_view text) {
  auto parse_index = [&](std::string_view digits) {
    if (digits.empty()) throw DomainError("missing index in named vector");
    for (char ch : digits)
      if (ch < '0' || ch > '9') throw DomainError("bad index in named vector");
    return std::stoi(std::string(digits));
  };
  if (text.starts_with("w+(") || text.starts_with("w-(")) {
    if (!text.ends_with(")")) throw DomainError("unterminated w-vector root");
    NamedVector nv{text[1] == '+' ? NamedKind::w_plus : NamedKind::w_minus, 0, {}};
    std::string_view body = text.substr(3, text.size() - 4);
    while (!body.empty()) {
      auto comma = body.find(',');
      Rational x = parse_rational(body.substr(0, comma));
      if (!is_integer(x)) throw DomainError("w-vector root must be integral");
      nv.root.push_back(to_int64(x.get_num()));
      if (comma == std::string_view::npos) break;
      body.remove_prefix(comma + 1);
    }
    return nv;
  }
  if (text == "omega") return NamedVector{NamedKind::omega, 0, {}};
  if (text.starts_with("omegatilde"))
    return NamedVector{NamedKind::omega_tilde_i, parse_index(text.substr(10)), {}};
  if (text.starts_with("omega")) return NamedVector{NamedKind::omega_i, parse_index(text.substr(5)), {}};
  if (text.starts_with("vir")) return NamedVector{NamedKind::virasoro_gamma, parse_index(text.substr(3)), {}};
  if (text.starts_with("s")) return NamedVector{NamedKind::s, parse_index(text.substr(1)), {}};
  throw DomainError("unknown named vector \"" + std::string(text) + "\"");
}

std::string to_string(const NamedVector& name) {
  switch (name.kind) {
    case NamedKind::w_plus:
    case NamedKind::w_minus: {
      std::string s = name.kind == NamedKind::w_plus ? "w+(" : "w-(";
      for (std::size_t i = 0; i < name.root.size(); ++i)
        s += (i ? "," : "") + std::to_string(name.root[i]);
      return s + ")";
    }
    case NamedKind::s: return "s" + std::to_string(name.index);
    case NamedKind::omega: return "omega";
    case NamedKind::omega_i: return "omega" + std::to_string(name.index);
    case NamedKind::omega_tilde_i: return "omegatilde" + std::to_string(name.index);
    case NamedKind::virasoro_gamma: return "vir" + std::to_string(name.index);
  }
  return "?";
}

ConformalReport conformal_check(const VoaState& v) {
  if (v.homogeneous_weight() != std::optional<std::int64_t>(2))
    throw DomainError("conformal_check needs a nonzero state homogeneous of weight 2");
  ConformalReport report;
  const int rank = v.rank();
  if (vertex_coeff(v, 1, v) != Rational(2) * v) report.failures.push_back("v(1)v = 2v");
  if (!vertex_coeff(v, 2, v).is_zero()) report.failures.push_back("v(2)v = 0");
  VoaState top = vertex_coeff(v, 3, v);
  VoaState vac = VoaState::vacuum(rank);
  Rational k = top.coefficient(vac.terms().begin()->first);
  if (top == k * vac && k != 0)
    report.central_charge = 2 * k;
  else
    report.failures.push_back("v(3)v = (c/2) 1");
  if (vertex_coeff(v, 0, v) != vertex_coeff(lattice_virasoro(rank), 0, v))
    report.failures.push_back("v(0)v = L(-1)v");
  report.is_conformal = report.failures.empty();
  return report;
}

}  // namespace voabranch::voa
