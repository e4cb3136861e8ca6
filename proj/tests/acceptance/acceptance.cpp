#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <string>

#include "../unit/oracles.hpp"
#include "voabranch/decomposer.hpp"
#include "voabranch/voa.hpp"

using namespace voabranch;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

Outcome coset_census() {
  Outcome o;
  for (int l = 3; l <= 8; ++l) {
    const LatticeFamily fam = build_family(l);
    const std::int64_t index = std::llabs(oracle::bareiss_det(fam.D.generators()));
    const auto labels = coset_reps(fam);
    o.require(static_cast<std::int64_t>(labels.size()) == index,
              "l=" + std::to_string(l) + ": label count differs from determinant index");
    const std::int64_t order = l == 3 ? 3 : oracle::lcm_range(3, l);
    o.require(order_of_alpha2(fam) == order, "l=" + std::to_string(l) + ": order of a_2");
    std::int64_t brute = 1;
    while (!fam.D.contains(brute * fam.alpha[1])) ++brute;
    o.require(brute == order, "l=" + std::to_string(l) + ": brute-force order of a_2");
  }
  return o;
}

Outcome lambda1_agreement() {
  Outcome o;
  for (int l = 3; l <= 8; ++l) {
    const LatticeFamily fam = build_family(l);
    const auto labels = classify(fam, coset_reps(fam));
    for (const auto& lab : labels) {
      const bool brute = fam.D.contains(2 * label_vector(fam, lab));
      o.require(self_paired_by_formula(fam, lab) == brute,
                "l=" + std::to_string(l) + ": formula disagrees at " + lab.to_string());
      o.require((lab.cls == CosetClass::Lambda1) == brute, "class tag at " + lab.to_string());
    }
  }
  const LatticeFamily four = build_family(4);
  std::set<std::string> names;
  for (const auto& lab : classify(four, coset_reps(four)))
    if (lab.cls == CosetClass::Lambda1) names.insert(lab.to_string());
  o.require(names == std::set<std::string>{";0", ";6"}, "l=4 Lambda1 is not {0, 6 a_2}");
  return o;
}

Outcome branching_suite() {
  Outcome o;
  std::set<std::string> cases;
  for (std::int64_t n = 1; n <= 12; ++n)
    for (std::int64_t a = 0; a < 2 * n; ++a) {
      o.require(verify_branch({n, a}, 20),
                "n=" + std::to_string(n) + ", a=" + std::to_string(a) + " disagrees with the oracle");
      cases.insert(branch({n, a}, Sign::full, 20).case_tag);
    }
  o.require(cases == std::set<std::string>{"5.1/5.2", "5.3", "5.4/5.5", "5.6", "5.7"},
            "not every branching case was exercised");
  for (std::int64_t n : {1, 4, 9}) {
    const BranchList list = branch({n, 0}, Sign::plus, 20);
    bool grows = false;
    for (const auto& [h, m] : list.entries) grows = grows || m >= 2;
    o.require(grows, "no growing multiplicity for n=" + std::to_string(n));
  }
  return o;
}

Outcome e_tables() {
  Outcome o;
  o.require(e_table_character(0, Sign::plus, 10) == oracle_lattice_char(e_coset(0), Sign::plus, 10),
            "V_E^+ identity");
  o.require(e_table_character(0, Sign::minus, 10) == oracle_lattice_char(e_coset(0), Sign::minus, 10),
            "V_E^- identity");
  o.require(e_table_character(1, Sign::full, 10) == oracle_lattice_char(e_coset(1), Sign::full, 10),
            "V_{E+eta} identity");
  return o;
}

Outcome conformal_suite() {
  using namespace voa;
  Outcome o;
  for (int l = 3; l <= 6; ++l) {
    const std::string tag = "l=" + std::to_string(l) + ": ";
    const LatticeFamily fam = build_family(l);
    const VoaState omega = build_named(fam, NamedVector{NamedKind::omega, 0, {}});
    std::vector<Rational> charges{frac(1, 2), frac(7, 10), frac(4, 5)};
    for (int i = 4; i <= l + 1; ++i) charges.push_back(1);
    std::vector<VoaState> plain;
    for (NamedKind kind : {NamedKind::omega_i, NamedKind::omega_tilde_i}) {
      std::vector<VoaState> vs;
      VoaState sum(l);
      for (int i = 1; i <= l + 1; ++i) {
        vs.push_back(build_named(fam, NamedVector{kind, i, {}}));
        const auto report = conformal_check(vs.back());
        o.require(report.is_conformal && report.central_charge == charges[i - 1],
                  tag + "vector " + std::to_string(i) + " is not conformal with the expected charge");
        sum += vs.back();
      }
      o.require(sum == omega, tag + "family does not sum to omega");
      for (std::size_t i = 0; i < vs.size(); ++i)
        for (std::size_t j = i + 1; j < vs.size(); ++j)
          o.require(vertex_coeff(vs[i], 1, vs[j]).is_zero() && vertex_coeff(vs[i], 3, vs[j]).is_zero(),
                    tag + "pair not orthogonal");
      if (kind == NamedKind::omega_i) plain = vs;
    }
    for (int i = 1; i <= l + 1; ++i)
      o.require(rho_on_span(plain[i - 1]) == build_named(fam, NamedVector{NamedKind::omega_tilde_i, i, {}}),
                tag + "rho image differs from the closed form");
    o.require(tau_on_span(omega) == omega, tag + "tau(omega) != omega");
  }
  return o;
}

Outcome grand_identity() {
  Outcome o;
  for (int l = 3; l <= 6; ++l)
    for (Sign parity : {Sign::plus, Sign::minus}) {
      const std::string tag = "l=" + std::to_string(l) + " " + to_string(parity) + ": ";
      const VerifyReport report = verify(l, parity, 8);
      o.require(report.residual.is_zero(), tag + "nonzero residual " + report.residual.to_string());
      for (const auto& c : report.cosets) o.require(c.ok, tag + "coset " + c.label.to_string());
      if (parity == Sign::plus) {
        o.require(report.assembled.coefficient(0) == 1, tag + "dim of weight 0");
        o.require(report.assembled.coefficient(1) == l, tag + "dim of weight 1");
      }
    }
  return o;
}

std::pair<int, std::string> capture(const std::string& command) {
  std::string out;
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) return {-1, out};
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  return {pclose(pipe), out};
}

Outcome determinism(const std::string& exe) {
  Outcome o;
  const std::string cmd = "'" + exe + "' decompose --rank 4 --order 8 --format json";
  const auto first = capture(cmd), second = capture(cmd);
  o.require(first.first == 0 && second.first == 0, "decompose did not exit 0");
  o.require(!first.second.empty(), "empty output");
  o.require(first.second == second.second, "outputs differ");
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: voabranch_acceptance <path-to-voabranch>\n";
    return 2;
  }
  const std::string exe = argv[1];
  struct Criterion {
    int id;
    const char* name;
    double limit_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "coset census", 5, coset_census},
      {2, "Lambda1 agreement", 5, lambda1_agreement},
      {3, "branching suite", 60, branching_suite},
      {4, "E-table identities", 30, e_tables},
      {5, "conformal suite", 10, conformal_suite},
      {6, "grand identity", 300, grand_identity},
      {7, "determinism", 60, [&] { return determinism(exe); }},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (o.ok && secs >= c.limit_s) {
      o.ok = false;
      o.detail = "over the time limit";
    }
    std::printf("%s criterion %d (%s): %.2f s of %.0f s%s%s\n", o.ok ? "PASS" : "FAIL", c.id, c.name, secs,
                c.limit_s, o.ok ? "" : " -- ", o.detail.c_str());
    failures += o.ok ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}
