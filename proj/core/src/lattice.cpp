#include "voabranch/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

namespace voabranch {

std::int64_t inner(const IntVec& x, const IntVec& y) {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return 2 * s;
}

Rational inner(const RatVec& x, const RatVec& y) {
  Rational s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return 2 * s;
}

Rational half_norm(const RatVec& x) { return inner(x, x) / 2; }

std::int64_t LatticeFamily::gamma_half_norm(int r) const {
  if (r < 1 || r > rank) throw std::out_of_range("gamma index out of range");
  return r < rank ? static_cast<std::int64_t>(r) * (r + 1) : rank;
}

LatticeFamily build_family(int l) {
  if (l < 3) throw DomainError("lattice family needs rank l >= 3");
  LatticeFamily fam;
  fam.rank = l;
  for (int i = 0; i < l; ++i) {
    IntVec a(l, 0);
    a[i] = 1;
    fam.alpha.push_back(std::move(a));
  }
  const auto& a = fam.alpha;
  fam.root_scaled.push_back(a[0] + a[1]);
  fam.root_scaled.push_back(a[2] - a[1]);
  fam.root_scaled.push_back(a[1] - a[0]);
  for (int i = 3; i < l; ++i) fam.root_scaled.push_back(a[i] - a[i - 1]);

  for (int r = 1; r <= l; ++r) {
    IntVec g(l, 0);
    for (int i = 0; i < r; ++i) g[i] = 1;
    if (r < l) g[r] = -r;
    std::int64_t denom = r < l ? static_cast<std::int64_t>(r) * (r + 1) : l;
    RatVec x;
    for (auto v : g) x.push_back(frac(v, denom));
    fam.gamma.push_back(std::move(g));
    fam.xi.push_back(std::move(x));
  }
  fam.eta.resize(l);
  for (int i = 0; i < l; ++i) fam.eta[i] = fam.xi[1][i] - fam.xi[0][i];

  std::vector<IntVec> n_gens;
  for (int i = 0; i < l; ++i)
    for (int j = i + 1; j < l; ++j) {
      n_gens.push_back(a[i] + a[j]);
      n_gens.push_back(a[i] - a[j]);
    }
  std::vector<IntVec> e_gens{a[0] - a[1], a[1] - a[2]};
  std::vector<IntVec> d_gens = e_gens;
  for (int r = 3; r <= l; ++r) d_gens.push_back(fam.gamma_of(r));

  fam.L = IntegerLattice(l, fam.alpha);
  fam.N = IntegerLattice(l, n_gens);
  fam.E = IntegerLattice(l, e_gens);
  fam.D = IntegerLattice(l, d_gens);
  return fam;
}

Integer coset_index(const LatticeFamily& fam) { return fam.D.index_in_ambient(); }

std::string to_string(CosetClass cls) {
  switch (cls) {
    case CosetClass::Lambda1: return "Lambda1";
    case CosetClass::Lambda2Pos: return "Lambda2+";
    case CosetClass::Lambda2Neg: return "Lambda2-";
  }
  return "?";
}

std::string CosetLabel::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < m.size(); ++i) os << (i ? "," : "") << m[i];
  os << ';' << n;
  return os.str();
}

CosetLabel parse_coset_label(std::string_view text) {
  auto semi = text.find(';');
  if (semi == std::string_view::npos)
    throw std::invalid_argument("coset label must look like \"m3,...;n\"");
  auto parse_int = [&](std::string_view s) {
    if (s.empty()) throw std::invalid_argument("empty integer in coset label");
    Rational r = parse_rational(s);
    if (!is_integer(r)) throw std::invalid_argument("non-integer in coset label");
    return to_int64(r.get_num());
  };
  CosetLabel label;
  std::string_view mpart = text.substr(0, semi);
  while (!mpart.empty()) {
    auto comma = mpart.find(',');
    label.m.push_back(parse_int(mpart.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    mpart.remove_prefix(comma + 1);
    if (mpart.empty()) throw std::invalid_argument("trailing comma in coset label");
  }
  label.n = parse_int(text.substr(semi + 1));
  return label;
}

IntVec label_vector(const LatticeFamily& fam, const CosetLabel& label) {
  const int l = fam.rank;
  const std::size_t expected = l >= 5 ? static_cast<std::size_t>(l - 4) : 0;
  if (label.m.size() != expected)
    throw std::invalid_argument("coset label for rank " + std::to_string(l) + " needs " +
                                std::to_string(expected) + " m-entries");
  IntVec v = label.n * fam.alpha[1];
  for (std::size_t k = 0; k < label.m.size(); ++k) {
    int r = static_cast<int>(k) + 3;
    v = v + label.m[k] * (fam.alpha[r - 1] - fam.alpha[r]);
  }
  return v;
}

std::vector<CosetLabel> coset_reps(const LatticeFamily& fam) {
  const int l = fam.rank;
  std::vector<CosetLabel> out;
  if (l == 3) {
    for (std::int64_t n = 0; n < 3; ++n) out.push_back(CosetLabel{{}, n});
  } else {
    std::vector<std::int64_t> m(l >= 5 ? l - 4 : 0, 0);
    const std::int64_t nmax = static_cast<std::int64_t>(l) * (l - 1);
    for (std::int64_t n = 0; n < nmax; ++n) {
      std::fill(m.begin(), m.end(), 0);
      // odometer over 0 <= m_r <= r - 1 (m[k] is m_{k+3}), last entry fastest
      bool wrapped = false;
      while (!wrapped) {
        out.push_back(CosetLabel{m, n});
        wrapped = true;
        for (std::size_t k = m.size(); k-- > 0;) {
          if (++m[k] <= static_cast<std::int64_t>(k) + 2) {
            wrapped = false;
            break;
          }
          m[k] = 0;
        }
      }
    }
  }

  std::map<IntVec, std::size_t> seen;
  for (std::size_t i = 0; i < out.size(); ++i) {
    auto key = fam.D.reduce(label_vector(fam, out[i]));
    if (!seen.emplace(key, i).second)
      throw InternalConsistencyError("coset representatives " + out[i].to_string() + " and " +
                                     out[seen[key]].to_string() + " are congruent mod D");
  }
  if (Integer(static_cast<long>(out.size())) != coset_index(fam))
    throw InternalConsistencyError("coset representative count differs from |L:D|");
  return out;
}

bool self_paired_by_formula(const LatticeFamily& fam, const CosetLabel& label) {
  const std::int64_t l = fam.rank;
  if (label.n == 0) {
    for (std::size_t k = 0; k < label.m.size(); ++k) {
      std::int64_t r = static_cast<std::int64_t>(k) + 3;
      std::int64_t m = label.m[k];
      bool ok = (r % 2 == 1) ? (m == 0) : (m == 0 || m == r / 2);
      if (!ok) return false;
    }
    return true;
  }
  if (label.n == l * (l - 1) / 2) {
    for (std::size_t k = 0; k < label.m.size(); ++k) {
      std::int64_t r = static_cast<std::int64_t>(k) + 3;
      if ((2 * label.m[k] + l * (l - 1)) % r != 0) return false;
    }
    return true;
  }
  return false;
}

std::vector<CosetLabel> classify(const LatticeFamily& fam, std::vector<CosetLabel> labels) {
  std::map<IntVec, std::size_t> index;
  std::vector<IntVec> vecs;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    vecs.push_back(label_vector(fam, labels[i]));
    index.emplace(fam.D.reduce(vecs.back()), i);
  }
  for (std::size_t i = 0; i < labels.size(); ++i) {
    auto& lab = labels[i];
    const bool brute = fam.D.contains(2 * vecs[i]);
    const bool formula = self_paired_by_formula(fam, lab);
    if (brute != formula)
      throw InternalConsistencyError("self-pairing disagreement at " + lab.to_string() +
                                     ": 2*lambda in D is " + (brute ? "true" : "false"));
    auto it = index.find(fam.D.reduce(-1 * vecs[i]));
    if (it == index.end())
      throw InternalConsistencyError("no representative for -(" + lab.to_string() + ")");
    lab.partner = it->second;
    if (brute) {
      if (lab.partner != i) throw InternalConsistencyError("self-paired label has a partner");
      lab.cls = CosetClass::Lambda1;
    } else {
      const auto& other = labels[lab.partner];
      bool smaller = std::tie(lab.n, lab.m) < std::tie(other.n, other.m);
      lab.cls = smaller ? CosetClass::Lambda2Pos : CosetClass::Lambda2Neg;
    }
  }
  return labels;
}

std::int64_t order_of_alpha2(const LatticeFamily& fam) {
  IntVec v = fam.alpha[1];
  for (std::int64_t k = 1;; ++k) {
    if (fam.D.contains(v)) return k;
    v = v + fam.alpha[1];
  }
}

CosetFactorization factorize(const LatticeFamily& fam, const CosetLabel& label) {
  const int l = fam.rank;
  auto m = [&](int r) -> std::int64_t {
    if (r < 3 || r > l - 2) return 0;
    return label.m.at(r - 3);
  };
  CosetFactorization f;
  f.e_residue = ((m(3) + label.n) % 3 + 3) % 3;
  for (int r = 3; r <= l; ++r) {
    std::int64_t c;
    if (r <= l - 3)
      c = (r + 1) * m(r) - r * m(r + 1) + label.n;
    else if (r == l - 2)
      c = (l - 1) * m(r) + label.n;
    else
      c = label.n;
    std::int64_t nr = fam.gamma_half_norm(r);
    f.c.push_back(c);
    f.n.push_back(nr);
    f.a.push_back(((2 * c) % (2 * nr) + 2 * nr) % (2 * nr));
  }

  RatVec lam = to_rational(label_vector(fam, label));
  for (int i = 0; i < l; ++i) {
    Rational v = (m(3) + label.n) * fam.eta[i];
    for (int r = 3; r <= l; ++r) v += f.c[r - 3] * fam.xi_of(r)[i];
    lam[i] -= v;
  }
  if (!fam.D.contains(lam))
    throw InternalConsistencyError("factorization of " + label.to_string() +
                                   " is not congruent to lambda mod D");
  return f;
}

bool LatticeCoset::contains_zero() const { return lattice.contains(shift); }

bool LatticeCoset::negation_stable() const {
  RatVec twice = shift;
  for (auto& v : twice) v *= 2;
  return lattice.contains(twice);
}

LatticeCoset make_coset(const IntegerLattice& lattice, RatVec shift) {
  if (shift.size() != lattice.dim()) throw std::invalid_argument("shift dimension mismatch");
  for (auto& v : shift) v.canonicalize();
  return LatticeCoset{lattice, std::move(shift)};
}

LatticeCoset make_coset(const IntegerLattice& lattice) {
  return make_coset(lattice, RatVec(lattice.dim(), Rational(0)));
}

LatticeCoset rank_one_coset(std::int64_t n, std::int64_t a) {
  if (n <= 0) throw DomainError("rank-one lattice needs n > 0");
  IntVec g;
  for (std::int64_t x = 0; x * x <= n && g.empty(); ++x)
    for (std::int64_t y = 0; y <= x && x * x + y * y <= n && g.empty(); ++y)
      for (std::int64_t z = 0; z <= y && x * x + y * y + z * z <= n && g.empty(); ++z) {
        auto w = exact_isqrt(n - x * x - y * y - z * z);
        if (w && *w <= z) g = {x, y, z, *w};
      }
  RatVec shift;
  for (auto v : g) {
    shift.push_back(frac(a * v, 2 * n));
  }
  return LatticeCoset{IntegerLattice(4, {g}), std::move(shift)};
}

namespace {

// Enumerates b = shift + x (x integral, zero off the support) with
// sum b_j^2 <= cutoff, calling visit(x, scaled_norm) where
// scaled_norm = den^2 * sum b_j^2.
template <class Visit>
void enumerate_box(const LatticeCoset& coset, const Rational& cutoff, std::int64_t& den,
                   Visit&& visit) {
  const std::size_t d = coset.shift.size();
  den = 1;
  for (const auto& s : coset.shift) {
    Integer q = s.get_den();
    den = std::lcm(den, to_int64(q));
  }
  std::vector<std::int64_t> shift_scaled(d);
  for (std::size_t j = 0; j < d; ++j) {
    Rational t = coset.shift[j] * den;
    shift_scaled[j] = to_int64(t.get_num());
  }
  const std::int64_t budget = to_int64(floor(cutoff * den * den));
  auto support = coset.lattice.support();
  std::vector<std::size_t> free;
  std::int64_t fixed = 0;
  for (std::size_t j = 0; j < d; ++j) {
    if (support[j])
      free.push_back(j);
    else
      fixed += shift_scaled[j] * shift_scaled[j];
  }
  if (fixed > budget) return;

  IntVec x(d, 0);
  auto recurse = [&](auto&& self, std::size_t k, std::int64_t used) -> void {
    if (k == free.size()) {
      visit(x, used);
      return;
    }
    const std::size_t j = free[k];
    const std::int64_t rem = budget - used;
    // Need (s + den*x)^2 <= rem.
    const double root = std::sqrt(static_cast<double>(rem));
    const std::int64_t s = shift_scaled[j];
    std::int64_t lo = static_cast<std::int64_t>(std::floor((-root - s) / den)) - 1;
    std::int64_t hi = static_cast<std::int64_t>(std::ceil((root - s) / den)) + 1;
    for (std::int64_t xv = lo; xv <= hi; ++xv) {
      std::int64_t b = s + den * xv;
      std::int64_t sq = b * b;
      if (sq > rem) continue;
      x[j] = xv;
      self(self, k + 1, used + sq);
    }
    x[j] = 0;
  };
  recurse(recurse, 0, fixed);
}

}  // namespace

QSeries theta_series(const LatticeCoset& coset, const Rational& cutoff) {
  std::map<std::int64_t, std::int64_t> counts;
  std::int64_t den = 1;
  enumerate_box(coset, cutoff, den, [&](const IntVec& x, std::int64_t scaled_norm) {
    if (coset.lattice.contains(x)) ++counts[scaled_norm];
  });
  QSeries out(cutoff);
  const std::int64_t den2 = den * den;
  for (const auto& [norm, count] : counts) {
    out.add_term(frac(norm, den2), static_cast<long>(count));
  }
  return out;
}

std::vector<QSeries> theta_by_coset(const LatticeFamily& fam,
                                    const std::vector<CosetLabel>& labels,
                                    const Rational& cutoff) {
  std::map<IntVec, std::size_t> index;
  for (std::size_t i = 0; i < labels.size(); ++i)
    index.emplace(fam.D.reduce(label_vector(fam, labels[i])), i);
  std::vector<std::map<std::int64_t, std::int64_t>> counts(labels.size());
  std::int64_t den = 1;
  auto whole = make_coset(fam.L);
  enumerate_box(whole, cutoff, den, [&](const IntVec& x, std::int64_t norm) {
    auto it = index.find(fam.D.reduce(x));
    if (it == index.end())
      throw InternalConsistencyError("lattice vector outside every listed coset");
    ++counts[it->second][norm];
  });
  std::vector<QSeries> out;
  for (const auto& c : counts) {
    QSeries s(cutoff);
    for (const auto& [norm, count] : c) s.add_term(static_cast<long>(norm), static_cast<long>(count));
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace voabranch
