#include "commands.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <nlohmann/json.hpp>
#include <optional>

#include "voabranch/decomposer.hpp"
#include "voabranch/voa.hpp"

namespace voabranch::cli {
namespace {

using nlohmann::json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  int rank = 0;
  std::string order;
  std::string parity = "plus";
  std::string format = "json";
  bool no_verify = false;
  std::string coset;
  std::int64_t halfnorm = 0;
  std::int64_t coset_index = 0;
};

Rational resolve_order(const std::string& flag) {
  std::string text = flag;
  if (text.empty()) {
    const char* env = std::getenv("VOABRANCH_ORDER");
    text = env && *env ? env : "8";
  }
  Rational order;
  try {
    order = parse_rational(text);
  } catch (const std::invalid_argument&) {
    throw UsageError("order must be a rational \"p\" or \"p/q\", got \"" + text + "\"");
  }
  if (order <= 0) throw UsageError("order must be positive");
  return order;
}

void require_rank(int rank) {
  if (rank < 3) throw UsageError("rank must be at least 3");
}

json rational_list(const std::vector<Rational>& values) {
  json out = json::array();
  for (const auto& v : values) out.push_back(to_string(v));
  return out;
}

json integer_json(const Integer& value) {
  if (value.fits_slong_p()) return value.get_si();
  return value.get_str();
}

std::string join(const std::vector<std::string>& parts, const char* sep) {
  std::string s;
  for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? sep : "") + parts[i];
  return s;
}

void emit(std::ostream& out, const json& doc) { out << doc.dump(2) << '\n'; }

int cmd_decompose(const Options& o, std::ostream& out, std::ostream& err) {
  require_rank(o.rank);
  const Rational cutoff = resolve_order(o.order);
  const Sign parity = o.parity == "plus" ? Sign::plus : Sign::minus;

  std::vector<Summand> summands;
  std::optional<VerifyReport> report;
  if (o.no_verify) {
    summands = decompose(o.rank, parity, cutoff);
  } else {
    report = verify(o.rank, parity, cutoff);
    summands = report->summands;
  }
  const bool failed = report && !report->ok();

  if (o.format == "tsv") {
    std::vector<std::string> header{"min_weight", "mult"};
    for (int i = 1; i <= o.rank + 1; ++i) header.push_back("h" + std::to_string(i));
    out << join(header, "\t") << '\n';
    for (const auto& s : summands) {
      std::vector<std::string> row{to_string(s.min_weight), s.mult.get_str()};
      for (const auto& lab : s.labels) row.push_back(to_string(lab.h));
      out << join(row, "\t") << '\n';
    }
  } else {
    json doc;
    doc["rank"] = o.rank;
    doc["parity"] = o.parity;
    doc["cutoff"] = to_string(cutoff);
    json list = json::array();
    for (const auto& s : summands) {
      std::vector<Rational> c, h;
      for (const auto& lab : s.labels) {
        c.push_back(lab.c);
        h.push_back(lab.h);
      }
      list.push_back({{"c", rational_list(c)},
                      {"h", rational_list(h)},
                      {"mult", integer_json(s.mult)},
                      {"min_weight", to_string(s.min_weight)}});
    }
    doc["summands"] = std::move(list);
    doc["verified"] = report ? json(report->ok()) : json(nullptr);
    if (failed) {
      doc["residual"] = to_json(report->residual);
      json bad = json::array();
      for (const auto& c : report->cosets)
        if (!c.ok) bad.push_back(c.label.to_string());
      doc["failed_cosets"] = std::move(bad);
    }
    emit(out, doc);
  }
  if (failed) {
    err << "verification failed; residual: " << report->residual.to_string() << '\n';
    return kVerificationFailed;
  }
  return kSuccess;
}

int cmd_cosets(const Options& o, std::ostream& out) {
  require_rank(o.rank);
  const LatticeFamily fam = build_family(o.rank);
  const auto labels = classify(fam, coset_reps(fam));
  if (o.format == "tsv") {
    out << "label\tclass\tpartner\te_residue\ta\n";
    for (const auto& lab : labels) {
      const auto f = factorize(fam, lab);
      std::vector<std::string> a;
      for (auto x : f.a) a.push_back(std::to_string(x));
      out << lab.to_string() << '\t' << to_string(lab.cls) << '\t'
          << labels[lab.partner].to_string() << '\t' << f.e_residue << '\t' << join(a, ",")
          << '\n';
    }
    return kSuccess;
  }
  json doc;
  doc["rank"] = o.rank;
  doc["index"] = integer_json(coset_index(fam));
  doc["order_of_alpha2"] = order_of_alpha2(fam);
  json list = json::array(), lambda1 = json::array();
  for (const auto& lab : labels) {
    const auto f = factorize(fam, lab);
    list.push_back({{"label", lab.to_string()},
                    {"class", to_string(lab.cls)},
                    {"partner", labels[lab.partner].to_string()},
                    {"e_residue", f.e_residue},
                    {"a", f.a}});
    if (lab.cls == CosetClass::Lambda1) lambda1.push_back(lab.to_string());
  }
  doc["count"] = labels.size();
  doc["lambda1"] = std::move(lambda1);
  doc["labels"] = std::move(list);
  emit(out, doc);
  return kSuccess;
}

int cmd_branch(const Options& o, std::ostream& out) {
  if (o.halfnorm <= 0) throw UsageError("halfnorm must be positive");
  if (o.coset_index < 0 || o.coset_index >= 2 * o.halfnorm)
    throw UsageError("coset must satisfy 0 <= a <= 2n - 1");
  const Rational cutoff = resolve_order(o.order);
  const RankOneCoset rc{o.halfnorm, o.coset_index};
  const bool verified = verify_branch(rc, cutoff);
  if (o.format == "tsv") {
    out << "sign\tcase\th\tmult\n";
    for (Sign s : applicable_signs(rc)) {
      const BranchList list = branch(rc, s, cutoff);
      for (const auto& [h, m] : list.entries)
        out << to_string(s) << '\t' << list.case_tag << '\t' << to_string(h) << '\t'
            << m.get_str() << '\n';
    }
  } else {
    json doc;
    doc["n"] = rc.n;
    doc["a"] = rc.a;
    doc["cutoff"] = to_string(cutoff);
    json lists = json::array();
    for (Sign s : applicable_signs(rc)) {
      const BranchList list = branch(rc, s, cutoff);
      json entries = json::array();
      for (const auto& [h, m] : list.entries)
        entries.push_back({{"h", to_string(h)}, {"mult", integer_json(m)}});
      lists.push_back({{"sign", to_string(s)}, {"case", list.case_tag}, {"entries", entries}});
    }
    doc["lists"] = std::move(lists);
    doc["verified"] = verified;
    emit(out, doc);
  }
  return verified ? kSuccess : kVerificationFailed;
}

int cmd_conformal(const Options& o, std::ostream& out) {
  require_rank(o.rank);
  using namespace voa;
  const LatticeFamily fam = build_family(o.rank);
  const VoaState omega = build_named(fam, NamedVector{NamedKind::omega, 0, {}});

  struct Family {
    const char* key;
    NamedKind kind;
    std::vector<VoaState> vectors;
    std::vector<ConformalReport> reports;
  };
  std::vector<Family> families{{"omega", NamedKind::omega_i, {}, {}},
                               {"omegatilde", NamedKind::omega_tilde_i, {}, {}}};
  bool all_ok = true;
  for (auto& f : families) {
    for (int i = 1; i <= o.rank + 1; ++i) {
      f.vectors.push_back(build_named(fam, NamedVector{f.kind, i, {}}));
      f.reports.push_back(conformal_check(f.vectors.back()));
      all_ok = all_ok && f.reports.back().is_conformal;
    }
  }
  auto orthogonal = [](const std::vector<VoaState>& vs) {
    for (std::size_t i = 0; i < vs.size(); ++i)
      for (std::size_t j = i + 1; j < vs.size(); ++j)
        if (!vertex_coeff(vs[i], 1, vs[j]).is_zero() || !vertex_coeff(vs[i], 3, vs[j]).is_zero())
          return false;
    return true;
  };
  auto sums_to_omega = [&](const std::vector<VoaState>& vs) {
    VoaState sum(o.rank);
    for (const auto& v : vs) sum += v;
    return sum == omega;
  };
  bool rho_ok = true;
  for (std::size_t i = 0; i < families[0].vectors.size(); ++i)
    rho_ok = rho_ok && rho_on_span(families[0].vectors[i]) == families[1].vectors[i];
  const bool tau_ok = tau_on_span(omega) == omega;

  json doc;
  doc["rank"] = o.rank;
  json checks;
  for (auto& f : families) {
    const bool orth = orthogonal(f.vectors), sum = sums_to_omega(f.vectors);
    all_ok = all_ok && orth && sum;
    checks[std::string(f.key) + "_orthogonal"] = orth;
    checks[std::string(f.key) + "_sum_is_omega"] = sum;
  }
  checks["rho_matches_closed_forms"] = rho_ok;
  checks["tau_fixes_omega"] = tau_ok;
  all_ok = all_ok && rho_ok && tau_ok;

  if (o.format == "tsv") {
    out << "name\tconformal\tcentral_charge\tfailures\n";
    for (auto& f : families)
      for (std::size_t i = 0; i < f.reports.size(); ++i) {
        const auto& r = f.reports[i];
        out << f.key << (i + 1) << '\t' << (r.is_conformal ? "true" : "false") << '\t'
            << (r.central_charge ? to_string(*r.central_charge) : "") << '\t'
            << join(r.failures, ";") << '\n';
      }
    for (const auto& [k, v] : checks.items()) out << k << '\t' << v.dump() << "\t\t\n";
  } else {
    for (auto& f : families) {
      json rows = json::array();
      for (std::size_t i = 0; i < f.reports.size(); ++i) {
        const auto& r = f.reports[i];
        rows.push_back({{"name", std::string(f.key) + std::to_string(i + 1)},
                        {"conformal", r.is_conformal},
                        {"central_charge", r.central_charge ? json(to_string(*r.central_charge))
                                                            : json(nullptr)},
                        {"failures", r.failures}});
      }
      doc[f.kind == NamedKind::omega_i ? "rows" : "tilde_rows"] = std::move(rows);
    }
    doc["checks"] = std::move(checks);
    doc["verified"] = all_ok;
    emit(out, doc);
  }
  return all_ok ? kSuccess : kVerificationFailed;
}

int cmd_theta(const Options& o, std::ostream& out) {
  require_rank(o.rank);
  const Rational cutoff = resolve_order(o.order);
  const LatticeFamily fam = build_family(o.rank);
  LatticeCoset coset = make_coset(fam.L);
  std::string label = "L";
  if (!o.coset.empty()) {
    CosetLabel parsed;
    try {
      parsed = parse_coset_label(o.coset);
    } catch (const std::exception& e) {
      throw UsageError(std::string("bad coset label: ") + e.what());
    }
    if (static_cast<int>(parsed.m.size()) != std::max(0, o.rank - 4))
      throw UsageError("coset label needs " + std::to_string(std::max(0, o.rank - 4)) +
                       " m-entries for rank " + std::to_string(o.rank));
    coset = make_coset(fam.D, to_rational(label_vector(fam, parsed)));
    label = "D+" + parsed.to_string();
  }
  const QSeries theta = theta_series(coset, cutoff);
  if (o.format == "tsv") {
    out << "exponent\tcoefficient\n";
    for (const auto& [e, c] : theta.terms()) out << to_string(e) << '\t' << to_string(c) << '\n';
  } else {
    json doc;
    doc["rank"] = o.rank;
    doc["coset"] = label;
    doc["cutoff"] = to_string(cutoff);
    doc["theta"] = to_json(theta);
    emit(out, doc);
  }
  return kSuccess;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Virasoro decomposition of lattice vertex operator algebras"};
  app.require_subcommand(1);
  Options o;

  auto add_order = [&](CLI::App* sub) {
    sub->add_option("--order", o.order, "weight cutoff, \"p\" or \"p/q\" (default 8 or $VOABRANCH_ORDER)");
  };
  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", o.format, "json or tsv")->check(CLI::IsMember({"json", "tsv"}));
  };

  auto* decompose = app.add_subcommand("decompose", "summands of V_L^+ or V_L^-");
  decompose->add_option("--rank", o.rank, "rank l >= 3")->required();
  add_order(decompose);
  decompose->add_option("--parity", o.parity, "plus or minus")
      ->check(CLI::IsMember({"plus", "minus"}));
  add_format(decompose);
  decompose->add_flag("--no-verify", o.no_verify, "skip the character check");

  auto* cosets = app.add_subcommand("cosets", "coset census of L/D");
  cosets->add_option("--rank", o.rank, "rank l >= 3")->required();
  add_format(cosets);

  auto* branch_cmd = app.add_subcommand("branch", "rank-one branching rule");
  branch_cmd->add_option("--halfnorm", o.halfnorm, "n with <g, g> = 2n")->required();
  branch_cmd->add_option("--coset", o.coset_index, "a with 0 <= a <= 2n - 1")->required();
  add_order(branch_cmd);
  add_format(branch_cmd);

  auto* conformal = app.add_subcommand("conformal", "conformal vector checks");
  conformal->add_option("--rank", o.rank, "rank l >= 3")->required();
  add_format(conformal);

  auto* theta = app.add_subcommand("theta", "theta series of L or of a coset D + lambda");
  theta->add_option("--rank", o.rank, "rank l >= 3")->required();
  theta->add_option("--coset", o.coset, "coset label \"m3,...;n\"");
  add_order(theta);
  add_format(theta);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  try {
    if (decompose->parsed()) return cmd_decompose(o, out, err);
    if (cosets->parsed()) return cmd_cosets(o, out);
    if (branch_cmd->parsed()) return cmd_branch(o, out);
    if (conformal->parsed()) return cmd_conformal(o, out);
    if (theta->parsed()) return cmd_theta(o, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const DomainError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kVerificationFailed;
  }
  return kUsage;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"voabranch"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace voabranch::cli
