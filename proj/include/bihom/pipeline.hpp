#pragma once

#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <openssl/evp.h>

#include "bihom/bihom.hpp"
#include "bihom/io.hpp"

namespace bihom {

struct PipelineOptions {
  std::optional<Scalar> weight;  // falls back to scalars.lambda, then 0
  unsigned s = 0;
  unsigned r = 0;
  Parity parity = Parity::even;
  bool fail_fast = false;
  bool override_tau_conditions = false;
  std::string map;   // primary operator name; the command picks a default
  std::string map2;  // secondary operator (beta for twist3, R for rb-nijenhuis)
  std::string tau = "tau";
};

struct CheckSummary {
  VerificationReport report;
  bool mandatory = true;
};

enum class RunStatus { pass, fail, error };

struct RunReport {
  std::string command;
  std::string inputs_digest;
  std::vector<CheckSummary> checks;
  json outputs = json::object();
  std::optional<AlgebraDocument> derived;
  std::vector<std::string> notes;
  RunStatus status = RunStatus::error;
  std::string error;

  int exit_code() const {
    switch (status) {
      case RunStatus::pass: return 0;
      case RunStatus::fail: return 1;
      default: return 2;
    }
  }
};

inline const std::vector<std::string>& pipeline_commands() {
  static const std::vector<std::string> commands = {
      "verify",      "twist3",          "induce-tau",         "derivations",
      "quasiderivation", "check-rb",    "rb-bracket",         "inverse-derivation",
      "kernel-criterion",      "projection-algebra",          "check-nijenhuis",    "n-brackets",
      "deformation-check", "trivial-deformation", "induced-nijenhuis",   "rb-nijenhuis",
      "derivation-nijenhuis"};
  return commands;
}

/// SHA-256 of a string, lowercase hex.
inline std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("sha256 failed");
  std::string out;
  char buf[3];
  for (unsigned i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", md[i]);
    out += buf;
  }
  return out;
}

namespace detail {

inline VerificationReport verdict(std::string identity, bool ok, const std::string& clause) {
  VerificationReport r;
  r.identity = std::move(identity);
  r.tuples_checked = 1;
  if (!ok) r.violations.push_back({{}, clause, {}});
  return r;
}

inline json matrix_json(const GradedMap& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.dim(); ++r) rows.push_back(write_row(m.matrix().row(r)));
  return {{"parity", to_int(m.parity())}, {"matrix", rows}};
}

inline std::string options_digest_text(const std::string& command, const PipelineOptions& o) {
  std::ostringstream s;
  s << command << "|weight=" << (o.weight ? to_string(*o.weight) : "") << "|s=" << o.s
    << "|r=" << o.r << "|parity=" << to_int(o.parity) << "|fail_fast=" << o.fail_fast
    << "|override=" << o.override_tau_conditions << "|map=" << o.map << "|map2=" << o.map2
    << "|tau=" << o.tau;
  return s.str();
}

class Pipeline {
 public:
  Pipeline(const AlgebraDocument& doc, const PipelineOptions& opts, RunReport& out)
      : doc_(doc), opts_(opts), out_(out), verify_{opts.fail_fast} {}

  void run(const std::string& command) {
    if (command == "verify") return verify();
    if (command == "twist3") return twist3();
    if (command == "induce-tau") return induce();
    if (command == "derivations") return derivations();
    if (command == "quasiderivation") return quasiderivation();
    if (command == "check-rb") return check_rb();
    if (command == "rb-bracket") return rb_bracket();
    if (command == "inverse-derivation") return inverse_derivation();
    if (command == "kernel-criterion") return kernel_criterion();
    if (command == "projection-algebra") return projection_algebra();
    if (command == "check-nijenhuis") return check_nijenhuis();
    if (command == "n-brackets") return n_brackets();
    if (command == "deformation-check") return deformation_check();
    if (command == "trivial-deformation") return trivial_deformation();
    if (command == "induced-nijenhuis") return induced_nijenhuis();
    if (command == "rb-nijenhuis") return rb_nijenhuis();
    if (command == "derivation-nijenhuis") return derivation_nijenhuis();
    throw std::invalid_argument("unknown command '" + command + "'");
  }

 private:
  void add(VerificationReport r, bool mandatory = true) {
    out_.checks.push_back({std::move(r), mandatory});
  }
  void add_all(std::vector<VerificationReport> rs, bool mandatory = true) {
    for (auto& r : rs) add(std::move(r), mandatory);
  }
  std::string name(const std::string& fallback) const {
    return opts_.map.empty() ? fallback : opts_.map;
  }
  std::string name2(const std::string& fallback) const {
    return opts_.map2.empty() ? fallback : opts_.map2;
  }
  Scalar weight() const {
    if (opts_.weight) return *opts_.weight;
    auto it = doc_.scalars.find("lambda");
    return it == doc_.scalars.end() ? Scalar(0) : it->second;
  }
  RotaBaxterOperator rota_baxter(const std::string& name) const {
    return RotaBaxterOperator(doc_.map(name), weight());
  }
  void emit(const ThreeBiHomLieSuperalgebra& a) { out_.derived = with_ternary(doc_, a); }

  void verify() {
    if (!doc_.bracket2 && !doc_.bracket3)
      throw document_error("/", "document has neither bracket2 nor bracket3");
    if (doc_.bracket2) add_all(verify_axioms(doc_.binary(), verify_));
    if (doc_.bracket3) {
      const auto a = doc_.ternary();
      add_all(verify_axioms(a, verify_));
      add(verify_3bihom_jacobi_cyclic(a, verify_), false);
      add(check_self_composition(a, verify_), false);
    }
  }

  void twist3() {
    if (!doc_.bracket3) throw document_error("/bracket3", "twist3 needs a ternary bracket");
    const auto l = ThreeBiHomLieSuperalgebra::untwisted(*doc_.bracket3);
    const auto t = make_twist_3(l, doc_.map(name("alpha")), doc_.map(name2("beta")));
    add_all(verify_axioms(t, verify_));
    emit(t);
  }

  void induce() {
    const auto a = doc_.binary();
    const auto& tau = doc_.form(opts_.tau);
    auto w = check_tau_conditions(a, tau, verify_);
    add_all(w.reports(), !opts_.override_tau_conditions);
    if (opts_.override_tau_conditions && !w.holds())
      out_.notes.push_back("tau conditions overridden; the induced bracket carries no guarantee");
    const auto g = induce_tau(a, tau, true);
    add(verify_3bihom_skewsymmetry(g, verify_));
    add(verify_3bihom_jacobi(g, verify_));
    emit(g);
  }

  template <std::size_t Arity>
  void derivations_for(const BiHomAlgebra<Arity>& a) {
    const DerivationQuery q{opts_.s, opts_.r, opts_.parity};
    const auto space = solve_derivation_space(a, q);
    VerificationReport basis_ok;
    basis_ok.identity = "solved basis elements are derivations";
    json basis = json::array();
    for (const auto& d : space.basis) {
      basis_ok.merge(is_derivation(a, d, q.s, q.r, verify_));
      basis.push_back(matrix_json(d));
    }
    add(std::move(basis_ok));
    out_.outputs["arity"] = Arity;
    out_.outputs["s"] = q.s;
    out_.outputs["r"] = q.r;
    out_.outputs["parity"] = to_int(q.parity);
    out_.outputs["dimension"] = space.dimension();
    out_.outputs["basis"] = basis;
  }

  void derivations() {
    if (doc_.bracket3) return derivations_for(doc_.ternary());
    derivations_for(doc_.binary());
  }

  void quasiderivation() {
    const auto a = doc_.ternary();
    const auto& d = doc_.map(name("D"));
    const auto result = is_quasiderivation_3(a, d, opts_.s, opts_.r);
    add(verdict("quasiderivation witness exists", result.is_quasiderivation,
                "no D' satisfies the twisted Leibniz rule"));
    if (result.witness) {
      add(verify_quasiderivation_witness(a, d, *result.witness, opts_.s, opts_.r));
      out_.outputs["witness"] = matrix_json(*result.witness);
    }
  }

  void check_rb() {
    if (!doc_.bracket2 && !doc_.bracket3)
      throw document_error("/", "document has neither bracket2 nor bracket3");
    const auto rb = rota_baxter(name("R"));
    if (doc_.bracket2) add(is_rb2(doc_.binary(), rb, verify_));
    if (doc_.bracket3) add(is_rb3(doc_.ternary(), rb, verify_));
  }

  void rb_bracket() {
    const auto rb = rota_baxter(name("R"));
    const auto b = make_rb_bracket(doc_.ternary(), rb);
    add(verify_3bihom_skewsymmetry(b, verify_));
    add(verify_3bihom_jacobi(b, verify_));
    add(is_rb3(b, rb, verify_));
    emit(b);
  }

  void inverse_derivation() {
    const auto r = check_inverse_derivation(doc_.ternary(), doc_.map(name("R")));
    out_.outputs["rota_baxter_weight_zero"] = r.rota_baxter_weight_zero;
    out_.outputs["inverse_is_derivation"] = r.inverse_is_derivation;
    add(verdict("RB of weight 0 iff inverse is an even derivation", r.consistent(),
                "the two predicates disagree"));
  }

  void kernel_criterion() {
    const auto r = check_kernel_criterion(doc_.binary(), doc_.form(opts_.tau),
                                                 rota_baxter(name("R")), verify_);
    out_.outputs["criterion"] = r.criterion;
    out_.outputs["literal_criterion"] = r.literal_criterion;
    out_.outputs["induced_rota_baxter"] = r.induced_rb3.holds();
    add(verdict("kernel criterion matches the induced Rota-Baxter check", r.agrees(),
                "criterion and direct check disagree"));
    add(r.criterion_report, false);
    add(r.literal_report, false);
    add(r.induced_rb3, false);
  }

  void projection_algebra() {
    const auto c = make_projection_algebra(doc_.ternary(), rota_baxter(name("R")));
    out_.notes.push_back(
        "result described as 'noncommutative'; checked against the nonmultiplicative axioms");
    add_all(verify_axioms(c, verify_));
    emit(c);
  }

  void check_nijenhuis() {
    if (!doc_.bracket2 && !doc_.bracket3)
      throw document_error("/", "document has neither bracket2 nor bracket3");
    const auto& n = doc_.map(name("N"));
    if (doc_.bracket2) add(is_nijenhuis_2(doc_.binary(), n, verify_));
    if (doc_.bracket3) add(is_nijenhuis_3(doc_.ternary(), n, verify_));
  }

  void n_brackets() {
    const auto a = doc_.ternary();
    const auto& n = doc_.map(name("N"));
    AlgebraDocument d = doc_;
    d.tensors.insert_or_assign("omega1", make_n_bracket_1(a, n));
    d.tensors.insert_or_assign("omega2", make_n_bracket_2(a, n));
    add(check_nijenhuis_forms(a, n, verify_), false);
    out_.derived = std::move(d);
  }

  void deformation_check() {
    const auto a = doc_.ternary();
    auto pick = [&](const std::string& key) {
      auto it = doc_.tensors.find(key);
      return it == doc_.tensors.end() ? StructureTensor3(a.space()) : it->second;
    };
    if (!doc_.tensors.count("omega1"))
      throw document_error("/tensors", "deformation-check needs tensors.omega1");
    const auto d = DeformationPair::make(a, pick("omega1"), pick("omega2"));
    add(check_deformation(a, d, verify_));
  }

  void trivial_deformation() {
    const auto a = doc_.ternary();
    const auto d = build_trivial_deformation(a, doc_.map(name("N")));
    add(check_deformation(a, d, verify_));
    AlgebraDocument out = doc_;
    out.tensors.insert_or_assign("omega1", d.omega1);
    out.tensors.insert_or_assign("omega2", d.omega2);
    out_.derived = std::move(out);
  }

  void transfer(const TransferCheck& t) {
    for (const auto& h : t.hypotheses) add(h, false);
    for (const auto& n : t.notes) out_.notes.push_back(n);
    if (!t.hypotheses_hold)
      throw precondition_error("transfer hypotheses do not hold", t.hypotheses);
    add(*t.conclusion);
  }

  void induced_nijenhuis() {
    transfer(check_induced_nijenhuis(doc_.binary(), doc_.form(opts_.tau), doc_.map(name("N"))));
  }

  void rb_nijenhuis() {
    transfer(check_rb_nijenhuis(doc_.ternary(), doc_.map(name("N")), rota_baxter(name2("R"))));
  }

  void derivation_nijenhuis() {
    const auto r = check_derivation_nijenhuis(doc_.ternary(), doc_.map(name("N")));
    out_.outputs["nijenhuis"] = r.nijenhuis;
    out_.outputs["rota_baxter_weight_zero"] = r.rota_baxter_weight_zero;
    add(verdict("Nijenhuis iff Rota-Baxter of weight 0", r.agree(),
                "the two predicates disagree"));
  }

  const AlgebraDocument& doc_;
  const PipelineOptions& opts_;
  RunReport& out_;
  VerifyOptions verify_;
};

}  // namespace detail

/// Runs one command on a parsed document. Input problems (unknown names,
/// unmet preconditions) end in status error; failed mandatory checks in fail.
inline RunReport run_pipeline(const AlgebraDocument& doc, const std::string& command,
                              const PipelineOptions& opts = {}) {
  RunReport out;
  out.command = command;
  out.inputs_digest = "sha256:" + sha256_hex(serialize_document(doc) +
                                             detail::options_digest_text(command, opts));
  try {
    detail::Pipeline(doc, opts, out).run(command);
  } catch (const precondition_error& e) {
    for (const auto& r : e.reports()) out.checks.push_back({r, false});
    out.status = RunStatus::error;
    out.error = std::string("precondition failed: ") + e.what();
    return out;
  } catch (const std::invalid_argument& e) {
    out.status = RunStatus::error;
    out.error = e.what();
    return out;
  }
  bool ok = true;
  for (const auto& c : out.checks)
    if (c.mandatory && !c.report.holds()) ok = false;
  out.status = ok ? RunStatus::pass : RunStatus::fail;
  return out;
}

inline std::string status_name(RunStatus s) {
  switch (s) {
    case RunStatus::pass: return "pass";
    case RunStatus::fail: return "fail";
    default: return "error";
  }
}

inline json report_to_json(const RunReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks) {
    json vs = json::array();
    for (const auto& v : c.report.violations) {
      json tuple = json::array();
      for (auto i : v.tuple) tuple.push_back(i + 1);
      vs.push_back({{"tuple", tuple}, {"clause", v.clause}, {"residual", detail::write_row(v.residual)}});
    }
    checks.push_back({{"identity", c.report.identity},
                      {"mandatory", c.mandatory},
                      {"holds", c.report.holds()},
                      {"tuples_checked", c.report.tuples_checked},
                      {"violations", vs},
                      {"notes", c.report.notes}});
  }
  json out = {{"command", r.command},
              {"inputs_digest", r.inputs_digest},
              {"status", status_name(r.status)},
              {"checks", checks},
              {"outputs", r.outputs},
              {"notes", r.notes}};
  if (!r.error.empty()) out["error"] = r.error;
  if (r.derived) out["document"] = document_to_json(*r.derived);
  return out;
}

/// Human summary; at most `max_violations` violations are listed per check.
inline std::string report_to_text(const RunReport& r, std::size_t max_violations = 5) {
  std::ostringstream s;
  s << "command: " << r.command << "\n";
  s << "inputs:  " << r.inputs_digest << "\n";
  for (const auto& c : r.checks) {
    s << (c.report.holds() ? "[PASS] " : "[FAIL] ") << c.report.identity;
    if (!c.mandatory) s << " (advisory)";
    s << " -- " << c.report.tuples_checked << " checked";
    if (!c.report.holds()) s << ", " << c.report.violations.size() << " violations";
    s << "\n";
    for (std::size_t k = 0; k < c.report.violations.size() && k < max_violations; ++k) {
      const auto& v = c.report.violations[k];
      s << "    (";
      for (std::size_t i = 0; i < v.tuple.size(); ++i) s << (i ? "," : "") << v.tuple[i] + 1;
      s << ") " << v.clause;
      if (!v.residual.empty()) s << " residual " << detail::write_row(v.residual).dump();
      s << "\n";
    }
    for (const auto& n : c.report.notes) s << "    note: " << n << "\n";
  }
  if (!r.outputs.empty()) s << "outputs: " << r.outputs.dump() << "\n";
  for (const auto& n : r.notes) s << "note: " << n << "\n";
  if (!r.error.empty()) s << "error: " << r.error << "\n";
  s << "status: " << status_name(r.status) << "\n";
  return s.str();
}

}  // namespace bihom
