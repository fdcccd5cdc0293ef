// Copyright 2026 The fewbody Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "fewbody/cli.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "fewbody/bipartite.hpp"
#include "fewbody/json_io.hpp"
#include "fewbody/protocols.hpp"
#include "fewbody/quad.hpp"
#include "fewbody/rep.hpp"
#include "fewbody/tri.hpp"

namespace fewbody::cli {

namespace {

using json::Json;

// ---------------------------------------------------------------------------
// Flag parsing

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) out.push_back(item);
  if (out.empty()) throw InvalidArgument("empty list");
  return out;
}

double parse_double(const std::string& s) {
  std::istringstream in(s);
  double v = 0.0;
  in >> v;
  if (in.fail() || !(in >> std::ws).eof()) throw InvalidArgument("cannot parse number '" + s + "'");
  return v;
}

std::vector<double> parse_reals(const std::string& text) {
  std::vector<double> out;
  for (const auto& s : split_list(text)) out.push_back(parse_double(s));
  return out;
}

std::vector<Complex> parse_complexes(const std::string& text) {
  std::vector<Complex> out;
  for (const auto& s : split_list(text)) out.push_back(json::parse_complex(s));
  return out;
}

quad::GabcdParams parse_params(const std::string& text) {
  const auto v = parse_complexes(text);
  if (v.size() != 4) throw InvalidArgument("--params needs four complex numbers a,b,c,d");
  return quad::GabcdParams{v[0], v[1], v[2], v[3]};
}

// ---------------------------------------------------------------------------
// JSON encodings of results

Json vec_json(const Eigen::VectorXd& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

template <typename T, std::size_t N>
Json array_json(const std::array<T, N>& a) {
  Json out = Json::array();
  for (const auto& x : a) out.push_back(x);
  return out;
}

Json conversion_json(const ConversionReport& r) {
  Json branches = Json::array();
  for (const auto& b : r.branches) {
    branches.push_back(
        Json{{"index", b.index}, {"probability", b.probability}, {"fidelity", b.fidelity}, {"skipped", b.skipped}});
  }
  return Json{{"ok", r.ok},
              {"probability_sum", r.probability_sum},
              {"completeness_residual", r.completeness_residual},
              {"branches", std::move(branches)},
              {"notes", r.notes}};
}

Json factor_json(const quad::FactorClass& f) {
  Json j{{"tag", quad::factor_tag_name(f.tag)}};
  if (f.tag == quad::FactorTag::Axis) {
    j["axis"] = std::string(1, axis_name(f.axis));
    j["gamma"] = f.gamma;
  }
  j["components"] = array_json(f.components);
  j["borderline"] = f.borderline;
  return j;
}

Json predicate_json(const quad::PredicateResult& r) {
  Json j{{"holds", r.holds}};
  if (r.witness) {
    Json w{{"party", r.witness->party}};
    w["axis"] = r.witness->axis ? Json(std::string(1, axis_name(*r.witness->axis))) : Json(nullptr);
    w["clause"] = r.witness->clause;
    j["witness"] = std::move(w);
  } else {
    j["witness"] = nullptr;
  }
  Json factors = Json::array();
  for (const auto& f : r.factors) factors.push_back(factor_json(f));
  j["factors"] = std::move(factors);
  return j;
}

Json slocc_json(const tri::SloccCertificate& c) {
  Json j{{"class", tri::slocc_name(c.tag)}};
  j["separated_party"] = c.separated_party ? Json(*c.separated_party) : Json(nullptr);
  j["hyperdeterminant"] = json::to_json(c.hyperdeterminant);
  j["ranks"] = array_json(c.ranks);
  j["min_schmidt"] = array_json(c.min_schmidt);
  return j;
}

Json ghz_json(const tri::GhzStandardForm& f) {
  return Json{{"z", json::to_json(f.z)},
              {"gamma", array_json(f.gamma)},
              {"local_unitaries", json::to_json(f.local_unitaries)},
              {"fidelity", f.fidelity}};
}

Json w_json(const tri::WStandardForm& f) {
  return Json{{"x0", f.x0},
              {"x1", f.x1},
              {"x2", f.x2},
              {"x3", f.x3},
              {"party_order", array_json(f.party_order)},
              {"local_unitaries", json::to_json(f.local_unitaries)},
              {"fidelity", f.fidelity}};
}

Json rep_outcome_json(const rep::RepOutcome& o) {
  return Json{{"k6", o.k.k6},
              {"k5", o.k.k5},
              {"k4", o.k.k4},
              {"theta4", o.thetas[0]},
              {"theta5", o.thetas[1]},
              {"theta6", o.thetas[2]},
              {"branch_probability", o.branch_probability},
              {"fidelity", o.fidelity},
              {"correction", json::to_json(o.correction)},
              {"corrected_state", json::to_json(o.corrected_state)}};
}

Json density_json(const DensityMatrix& rho) {
  const Mat& m = rho.matrix();
  return Json{{"dim", rho.dim()},
              {"trace", json::to_json(m.trace())},
              {"hermitian_residual", max_abs_diff(m, m.adjoint())},
              {"eigenvalues", vec_json(rho.eigenvalues())},
              {"matrix", json::to_json(m)}};
}

Json povm_json(const std::vector<ProductOperator>& povm) {
  Json elements = Json::array();
  for (const auto& m : povm) elements.push_back(json::to_json(m));
  return Json{{"elements", std::move(elements)}};
}

std::vector<ProductOperator> povm_from(const Json& j) {
  const Json& elements = j.is_object() ? j.at("elements") : j;
  if (!elements.is_array() || elements.empty()) throw InvalidArgument("POVM file needs a non-empty 'elements' list");
  std::vector<ProductOperator> out;
  for (const auto& e : elements) out.push_back(json::product_from(e));
  return out;
}

Json protocol_json(const LoccProtocol& p) {
  Json kraus = Json::array();
  for (const auto& k : p.kraus) kraus.push_back(json::to_json(k));
  Json corrections = Json::array();
  for (const auto& list : p.corrections) {
    Json gates = Json::array();
    for (const auto& g : list) gates.push_back(Json{{"targets", g.targets}, {"matrix", json::to_json(g.matrix)}});
    corrections.push_back(std::move(gates));
  }
  return Json{{"acting_qubits", p.acting_qubits}, {"kraus", std::move(kraus)}, {"corrections", std::move(corrections)}};
}

// ---------------------------------------------------------------------------
// Instance files

struct InstanceFile {
  std::optional<ProductOperator> g;  // raw operators, if given
  std::optional<ProductOperator> h;
  ProductOperator G;
  ProductOperator H;
  std::vector<ProductOperator> symmetries;
  std::optional<std::vector<double>> weights;
  std::optional<double> r;
};

InstanceFile load_instance(const std::string& path) {
  const Json j = json::read_file(path);
  if (!j.is_object()) throw InvalidArgument("instance file must hold a JSON object");
  InstanceFile in;
  auto side = [&](const char* raw, const char* pos, std::optional<ProductOperator>& op, ProductOperator& P) {
    if (j.contains(raw)) {
      op = json::product_from(j.at(raw));
      P = sep::positive_part(*op);
    } else if (j.contains(pos)) {
      P = json::product_from(j.at(pos));
    } else {
      throw InvalidArgument(std::string("instance needs '") + raw + "' or '" + pos + "'");
    }
  };
  side("g", "G", in.g, in.G);
  side("h", "H", in.h, in.H);
  if (!j.contains("symmetries") || !j.at("symmetries").is_array()) {
    throw InvalidArgument("instance needs a 'symmetries' list");
  }
  for (const auto& s : j.at("symmetries")) in.symmetries.push_back(json::product_from(s));
  if (j.contains("weights")) in.weights = j.at("weights").get<std::vector<double>>();
  if (j.contains("r")) in.r = j.at("r").get<double>();
  return in;
}

// ---------------------------------------------------------------------------
// Command plumbing

struct Globals {
  double tol = 1e-9;
  std::uint64_t seed = 0;
  bool json = true;
  bool timing = false;
  std::string out;
};

struct Outcome {
  Json result;
  std::optional<Json> artifact;  // written by --out
};

using Handler = std::function<Outcome()>;

struct Command {
  CLI::App* app = nullptr;
  Handler handler;
};

void summarize(const Json& report, std::ostream& out) {
  out << report["command"].get<std::string>() << ": " << report["status"].get<std::string>() << '\n';
  if (report.contains("error")) out << "error: " << report["error"].get<std::string>() << '\n';
  if (!report.contains("result")) return;
  for (const auto& [key, value] : report["result"].items()) {
    if (value.is_primitive()) out << key << ": " << value.dump() << '\n';
  }
}

// Three-qubit state from --state FILE, --amplitudes LIST or --preset NAME.
struct StateInput {
  std::string file;
  std::string amplitudes;
  std::string preset;

  void attach(CLI::App* app) {
    auto* f = app->add_option("--state", file, "state JSON file");
    auto* a = app->add_option("--amplitudes", amplitudes, "comma-separated complex amplitudes");
    auto* p = app->add_option("--preset", preset, "ghz or w");
    f->excludes(a)->excludes(p);
    a->excludes(p);
  }

  PureState load() const {
    PureState s;
    if (!file.empty()) {
      s = json::state_from(json::read_file(file));
    } else if (!amplitudes.empty()) {
      const auto v = parse_complexes(amplitudes);
      Vec amps(static_cast<Eigen::Index>(v.size()));
      for (std::size_t i = 0; i < v.size(); ++i) amps[static_cast<Eigen::Index>(i)] = v[i];
      qubits_for_dim(v.size());
      s = PureState::normalized(std::move(amps));
    } else if (preset == "ghz") {
      s = tri::ghz_state();
    } else if (preset == "w") {
      s = tri::w_state();
    } else if (!preset.empty()) {
      throw InvalidArgument("unknown preset '" + preset + "' (expected ghz or w)");
    } else {
      throw InvalidArgument("give one of --state, --amplitudes or --preset");
    }
    if (s.num_qubits() != 3) throw DimensionMismatch("expected a three-qubit state");
    return s;
  }
};

rep::RepTargetParams parse_alphas(const std::string& list, const std::optional<double>& a4,
                                  const std::optional<double>& a5, const std::optional<double>& a6) {
  rep::RepTargetParams p;
  if (!list.empty()) {
    const auto v = parse_reals(list);
    if (v.size() != 3) throw InvalidArgument("--alphas needs three angles alpha4,alpha5,alpha6");
    if (a4 || a5 || a6) throw InvalidArgument("--alphas cannot be combined with --alpha4/5/6");
    p = {v[0], v[1], v[2]};
  } else {
    p = {a4.value_or(0.0), a5.value_or(0.0), a6.value_or(0.0)};
  }
  return p;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"fewbody: entanglement conversions of few-qubit states"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "show help for every subcommand");
  Globals g;
  app.add_option("--tol", g.tol, "residual and fidelity tolerance")->capture_default_str();
  app.add_option("--seed", g.seed, "random seed")->capture_default_str();
  app.add_flag("--json,!--no-json", g.json, "emit the JSON report (default) or a text summary");
  app.add_flag("--timing", g.timing, "include elapsed time in the report");
  app.add_option("--out", g.out, "also write the command's artifact (or report) to this file");
  app.fallthrough();

  std::vector<Command> commands;
  auto add = [&](const char* name, const char* help) -> Command& {
    commands.push_back(Command{app.add_subcommand(name, help), {}});
    return commands.back();
  };

  // --- bipartite ------------------------------------------------------------
  std::string lam_y, lam_x;
  {
    auto& c = add("majorize", "does y majorize x");
    c.app->add_option("--y", lam_y, "comma-separated vector y")->required();
    c.app->add_option("--x", lam_x, "comma-separated vector x")->required();
    c.handler = [&] {
      const auto y = parse_reals(lam_y);
      const auto x = parse_reals(lam_x);
      return Outcome{Json{{"majorizes", bipartite::majorizes(y, x)}}, std::nullopt};
    };
  }
  std::string lam_psi, lam_phi;
  {
    auto& c = add("nielsen", "LOCC convertibility of bipartite pure states from squared Schmidt coefficients");
    c.app->add_option("--psi", lam_psi, "squared Schmidt coefficients of psi")->required();
    c.app->add_option("--phi", lam_phi, "squared Schmidt coefficients of phi")->required();
    c.handler = [&] {
      const auto r = bipartite::nielsen_decide(parse_reals(lam_psi), parse_reals(lam_phi));
      const bool fwd = r == bipartite::Relation::ForwardOnly || r == bipartite::Relation::BothWays;
      const bool bwd = r == bipartite::Relation::BackwardOnly || r == bipartite::Relation::BothWays;
      return Outcome{Json{{"relation", bipartite::relation_name(r)}, {"psi_to_phi", fwd}, {"phi_to_psi", bwd}},
                     std::nullopt};
    };
  }

  // --- three qubits ---------------------------------------------------------
  StateInput st_classify, st_form, st_mes;
  double param_tol = tri::kParamTol;
  {
    auto& c = add("classify3", "SLOCC class of a three-qubit state");
    st_classify.attach(c.app);
    c.handler = [&] { return Outcome{slocc_json(tri::classify_slocc3(st_classify.load())), std::nullopt}; };
  }
  {
    auto& c = add("stdform3", "GHZ- or W-class standard form");
    st_form.attach(c.app);
    c.handler = [&] {
      const PureState s = st_form.load();
      const auto cert = tri::classify_slocc3(s);
      Json r{{"class", tri::slocc_name(cert.tag)}};
      if (cert.tag == tri::SloccClass3::GhzClass) {
        r["ghz"] = ghz_json(tri::ghz_standard_form(s));
      } else if (cert.tag == tri::SloccClass3::WClass) {
        r["w"] = w_json(tri::w_standard_form(s));
      } else {
        throw InvalidArgument("the state is not genuinely tripartite entangled");
      }
      return Outcome{r, std::nullopt};
    };
  }
  {
    auto& c = add("mes3-check", "membership in the three-qubit maximally entangled set");
    st_mes.attach(c.app);
    c.app->add_option("--param-tol", param_tol, "tolerance on standard-form parameters")->capture_default_str();
    c.handler = [&] {
      const auto v = tri::in_mes3(st_mes.load(), param_tol);
      Json r{{"member", v.member}, {"reason", v.reason}, {"slocc", slocc_json(v.slocc)}};
      if (v.ghz) r["ghz"] = ghz_json(*v.ghz);
      if (v.w) r["w"] = w_json(*v.w);
      return Outcome{r, std::nullopt};
    };
  }
  tri::Mes3Params mes3p;
  {
    auto& c = add("mes3-gen", "state |0>|Psi_s> + |1>(Y(b') (x) Y(b))|Psi_s>");
    c.app->add_option("--a", mes3p.a, "a in (0, 1]")->required();
    c.app->add_option("--beta", mes3p.beta, "beta")->capture_default_str();
    c.app->add_option("--betaprime", mes3p.beta_prime, "beta'")->capture_default_str();
    c.handler = [&] {
      const PureState s = tri::mes3_state(mes3p);
      const auto cert = tri::classify_slocc3(s);
      Json r{{"state", json::to_json(s)}, {"slocc", slocc_json(cert)}};
      if (cert.tag == tri::SloccClass3::GhzClass || cert.tag == tri::SloccClass3::WClass) {
        const auto v = tri::in_mes3(s);
        r["in_mes3"] = v.member;
        r["reason"] = v.reason;
      } else {
        r["in_mes3"] = nullptr;
        r["reason"] = "not genuinely tripartite entangled";
      }
      return Outcome{r, json::to_json(s)};
    };
  }

  // --- four qubits ----------------------------------------------------------
  std::string params4, op_file4, mode4 = "status";
  {
    auto& c = add("mes4-check", "MES checks for g|Psi> in the G_abcd class");
    c.app->add_option("--params", params4, "a,b,c,d as complex numbers")->required();
    c.app->add_option("--operator", op_file4, "product operator JSON file")->required();
    c.app->add_option("--mode", mode4, "reachable, convertible or status")
        ->check(CLI::IsMember({"reachable", "convertible", "status"}))
        ->capture_default_str();
    c.handler = [&] {
      const auto p = parse_params(params4);
      const ProductOperator op = json::product_from(json::read_file(op_file4));
      Json r{{"mode", mode4}};
      if (mode4 == "reachable") {
        r["reachable"] = predicate_json(quad::is_reachable(op, p));
      } else if (mode4 == "convertible") {
        r["convertible"] = predicate_json(quad::is_convertible(op, p));
      } else {
        const auto v = quad::mes4_status(op, p);
        r["status"] = quad::mes4_status_name(v.status);
        r["reachable"] = predicate_json(v.reachable);
        r["convertible"] = predicate_json(v.convertible);
      }
      const auto cert = quad::standard_certificate(op, p);
      Json sorted = Json::array();
      for (const auto& s : cert.sorted_squares) sorted.push_back(json::to_json(s));
      r["certificate"] = Json{{"parameter_order", array_json(cert.parameter_order)},
                              {"sorted_squares", std::move(sorted)},
                              {"symmetry_index", cert.symmetry_index}};
      return Outcome{r, std::nullopt};
    };
  }
  std::string params_seed;
  {
    auto& c = add("seed4", "G_abcd seed state and genericity report");
    c.app->add_option("--params", params_seed, "a,b,c,d as complex numbers")->required();
    c.handler = [&] {
      const auto p = parse_params(params_seed);
      const PureState s = quad::seed_state(p);
      const auto gen = quad::is_generic(p);
      Json r{{"generic", gen.generic}, {"violations", gen.violations}, {"state", json::to_json(s)}};
      if (gen.generic) r["symmetries"] = quad::symmetry_group(p).size();
      return Outcome{r, json::to_json(s)};
    };
  }

  // --- SEP engine -----------------------------------------------------------
  std::string inst_verify, inst_solve, inst_povm;
  {
    auto& c = add("sep-verify", "check sum_k p_k S_k^dag H S_k = r G");
    c.app->add_option("--instance", inst_verify, "instance JSON file")->required();
    c.handler = [&] {
      const auto in = load_instance(inst_verify);
      if (!in.weights || !in.r) throw InvalidArgument("sep-verify needs 'weights' and 'r'");
      const auto chk = sep::verify_sep(sep::SepInstance{in.G, in.H, in.symmetries, *in.weights, *in.r}, g.tol);
      return Outcome{Json{{"ok", chk.ok}, {"residual", chk.residual}, {"certification", "SEP"}}, std::nullopt};
    };
  }
  {
    auto& c = add("sep-solve", "solve for weights p and ratio r");
    c.app->add_option("--instance", inst_solve, "instance JSON file")->required();
    c.handler = [&] {
      const auto in = load_instance(inst_solve);
      const auto sol = sep::solve_sep_weights(in.G, in.H, in.symmetries, g.tol);
      Json r{{"found", sol.has_value()}};
      if (sol) {
        r["weights"] = sol->weights;
        r["r"] = sol->r;
        r["residual"] = sol->residual;
      }
      return Outcome{r, std::nullopt};
    };
  }
  {
    auto& c = add("povm-build", "POVM M_k = sqrt(p_k/r) h S_k g^-1");
    c.app->add_option("--instance", inst_povm, "instance JSON file with raw 'g' and 'h'")->required();
    c.handler = [&] {
      const auto in = load_instance(inst_povm);
      if (!in.g || !in.h) throw InvalidArgument("povm-build needs raw operators 'g' and 'h'");
      std::vector<double> w;
      double rr = 0.0;
      if (in.weights && in.r) {
        w = *in.weights;
        rr = *in.r;
      } else {
        const auto sol = sep::solve_sep_weights(in.G, in.H, in.symmetries, g.tol);
        if (!sol) throw InvalidArgument("no weights solve the instance");
        w = sol->weights;
        rr = sol->r;
      }
      const auto povm = sep::build_povm(*in.h, *in.g, in.symmetries, w, rr, g.tol);
      Json r = povm_json(povm);
      r["completeness_residual"] = sep::povm_completeness(povm);
      r["weights"] = w;
      r["r"] = rr;
      return Outcome{r, povm_json(povm)};
    };
  }
  std::string cv_povm, cv_source, cv_target;
  {
    auto& c = add("convert-verify", "check every POVM branch maps source to target");
    c.app->add_option("--povm", cv_povm, "POVM JSON file")->required();
    c.app->add_option("--source", cv_source, "source state JSON file")->required();
    c.app->add_option("--target", cv_target, "target state JSON file")->required();
    c.handler = [&] {
      const auto povm = povm_from(json::read_file(cv_povm));
      const auto rep = sep::verify_conversion(povm, json::state_from(json::read_file(cv_source)),
                                              json::state_from(json::read_file(cv_target)), g.tol);
      Json r = conversion_json(rep);
      r["certification"] = "SEP";
      return Outcome{r, std::nullopt};
    };
  }
  std::string synth_params, synth_op;
  {
    auto& c = add("synth4q", "one-round LOCC protocol reaching h|Psi>");
    c.app->add_option("--params", synth_params, "a,b,c,d as complex numbers")->required();
    c.app->add_option("--operator", synth_op, "target operator h as JSON file")->required();
    c.handler = [&] {
      const auto s = sep::synthesize_reach_protocol_4q(json::product_from(json::read_file(synth_op)),
                                                        parse_params(synth_params));
      Json r{{"clause", s.clause},
             {"acting_party", s.acting_party},
             {"g", json::to_json(s.g)},
             {"weights", s.weights},
             {"r", s.r},
             {"sep_residual", s.sep_residual},
             {"verification", conversion_json(s.report)},
             {"certification", "LOCC"},
             {"protocol", protocol_json(s.protocol)}};
      return Outcome{r, protocol_json(s.protocol)};
    };
  }

  // --- resource state -------------------------------------------------------
  {
    auto& c = add("rep-build", "six-qubit resource state");
    c.handler = [&] {
      const PureState s = rep::build_phi3();
      return Outcome{Json{{"norm", s.amplitudes().norm()}, {"state", json::to_json(s)}}, json::to_json(s)};
    };
  }
  std::optional<double> sim_a4, sim_a5, sim_a6;
  std::string sim_alphas, sim_outcomes;
  {
    auto& c = add("rep-sim", "run the adaptive measurement protocol once");
    c.app->add_option("--alpha4", sim_a4, "alpha4");
    c.app->add_option("--alpha5", sim_a5, "alpha5");
    c.app->add_option("--alpha6", sim_a6, "alpha6");
    c.app->add_option("--alphas", sim_alphas, "alpha4,alpha5,alpha6");
    c.app->add_option("--outcomes", sim_outcomes, "forced outcomes as three digits k6k5k4");
    c.handler = [&] {
      const auto p = parse_alphas(sim_alphas, sim_a4, sim_a5, sim_a6);
      rep::RepOutcome o;
      if (!sim_outcomes.empty()) {
        if (sim_outcomes.size() != 3 || sim_outcomes.find_first_not_of("01") != std::string::npos) {
          throw InvalidArgument("--outcomes must be three binary digits k6k5k4");
        }
        o = rep::simulate_rep(p, rep::RepOutcomes{sim_outcomes[0] - '0', sim_outcomes[1] - '0', sim_outcomes[2] - '0'});
      } else {
        Rng rng(g.seed);
        o = rep::simulate_rep(p, rng);
      }
      return Outcome{rep_outcome_json(o), json::to_json(o.corrected_state)};
    };
  }
  std::optional<double> ver_a4, ver_a5, ver_a6;
  std::string ver_alphas;
  bool no_adapt = false;
  {
    auto& c = add("rep-verify", "force all eight outcome paths");
    c.app->add_option("--alpha4", ver_a4, "alpha4");
    c.app->add_option("--alpha5", ver_a5, "alpha5");
    c.app->add_option("--alpha6", ver_a6, "alpha6");
    c.app->add_option("--alphas", ver_alphas, "alpha4,alpha5,alpha6");
    c.app->add_flag("--no-adapt", no_adapt, "disable the theta5 sign adaptation");
    c.handler = [&] {
      const auto p = parse_alphas(ver_alphas, ver_a4, ver_a5, ver_a6);
      const auto rep = rep::verify_rep_determinism(p, rep::RepOptions{!no_adapt});
      Json branches = Json::array();
      int passed = 0;
      for (const auto& b : rep.branches) {
        passed += b.fidelity >= 1.0 - rep::kRepFidelityTol ? 1 : 0;
        branches.push_back(Json{{"k6", b.k.k6},
                                {"k5", b.k.k5},
                                {"k4", b.k.k4},
                                {"branch_probability", b.branch_probability},
                                {"fidelity", b.fidelity}});
      }
      return Outcome{Json{{"ok", rep.ok},
                          {"passed", passed},
                          {"total", rep.branches.size()},
                          {"probability_sum", rep.probability_sum},
                          {"min_fidelity", rep.min_fidelity},
                          {"adaptive", !no_adapt},
                          {"branches", std::move(branches)}},
                     std::nullopt};
    };
  }
  std::string ens_file;
  {
    auto& c = add("mixed-prep", "prepare an ensemble and report its exact density");
    c.app->add_option("--ensemble", ens_file, "ensemble JSON file")->required();
    c.handler = [&] {
      const Json j = json::read_file(ens_file);
      const Json& entries = j.is_object() ? j.at("entries") : j;
      if (!entries.is_array() || entries.empty()) throw InvalidArgument("ensemble needs a non-empty 'entries' list");
      const bool rep_route = entries.front().contains("alphas");
      Json r;
      if (rep_route) {
        std::vector<rep::Mixed3Entry> ens;
        for (const auto& e : entries) {
          if (!e.contains("alphas")) throw InvalidArgument("every entry needs 'alphas' when one has them");
          const auto a = e.at("alphas").get<std::vector<double>>();
          if (a.size() != 3) throw InvalidArgument("'alphas' needs three angles");
          rep::Mixed3Entry m;
          m.weight = e.at("weight").get<double>();
          m.params = {a[0], a[1], a[2]};
          if (e.contains("post_lu")) m.post_lu = json::product_from(e.at("post_lu"));
          ens.push_back(std::move(m));
        }
        Rng rng(g.seed);
        const auto res = rep::prepare_mixed3(ens, rng);
        r = Json{{"route", "resource"},
                 {"sampled_entry", res.entry},
                 {"sampled", rep_outcome_json(res.outcome)},
                 {"prepared", json::to_json(res.prepared)},
                 {"density", density_json(res.density)}};
      } else {
        std::vector<bipartite::EnsembleEntry> list;
        for (const auto& e : entries) {
          if (!e.contains("state")) throw InvalidArgument("entries need 'state' or 'alphas'");
          list.push_back(bipartite::EnsembleEntry{e.at("weight").get<double>(), json::state_from(e.at("state"))});
        }
        const bipartite::Ensemble ens(std::move(list));
        const int n = ens.num_qubits();
        if (n % 2 != 0) throw InvalidArgument("bipartite entries need an even number of qubits");
        std::vector<int> side(static_cast<std::size_t>(n / 2));
        std::iota(side.begin(), side.end(), 0);
        std::vector<LoccProtocol> protocols;
        for (const auto& e : ens.entries()) {
          protocols.push_back(bipartite::phi_plus_to_target(bipartite::schmidt_decompose(e.state, side)));
        }
        const DensityMatrix rho = bipartite::prepare_mixed(ens, protocols, bipartite::max_entangled(1 << (n / 2)));
        r = Json{{"route", "maximally_entangled"}, {"density", density_json(rho)}};
      }
      return Outcome{r, r["density"]};
    };
  }

  // ---------------------------------------------------------------------------
  Json report;
  std::string name;
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    for (const auto* sub : app.get_subcommands()) name = sub->get_name();
    report = Json{{"command", name}, {"status", "usage_error"}, {"error", e.what()}, {"exit_code", kExitInput}};
    if (g.json) {
      out << report.dump(2) << '\n';
    } else {
      summarize(report, out);
    }
    return kExitInput;
  }

  const Command* chosen = nullptr;
  for (const auto& c : commands) {
    if (c.app->parsed()) chosen = &c;
  }
  name = chosen->app->get_name();
  Json inputs = Json::object();
  for (const auto* opt : chosen->app->get_options()) {
    if (opt->count() == 0 || opt->get_name() == "-h,--help" || opt->get_name() == "--help") continue;
    std::string key = opt->get_name();
    while (!key.empty() && key.front() == '-') key.erase(key.begin());
    const auto& res = opt->results();
    inputs[key] = res.size() == 1 ? Json(res.front()) : Json(res);
  }
  inputs["tol"] = g.tol;

  report = Json{{"command", name}, {"inputs", std::move(inputs)}};
  int code = kExitOk;
  const auto start = std::chrono::steady_clock::now();
  try {
    Outcome o = chosen->handler();
    report["result"] = std::move(o.result);
    report["status"] = "ok";
    if (!g.out.empty()) json::write_file(g.out, o.artifact ? *o.artifact : report["result"]);
  } catch (const InvalidArgument& e) {
    report["status"] = "invalid_argument";
    report["error"] = e.what();
    code = kExitInput;
  } catch (const NumericalFailure& e) {
    report["status"] = "numerical_failure";
    report["error"] = e.what();
    code = kExitNumerical;
  } catch (const nlohmann::json::exception& e) {
    report["status"] = "invalid_argument";
    report["error"] = std::string("malformed JSON: ") + e.what();
    code = kExitInput;
  } catch (const Error& e) {
    report["status"] = "numerical_failure";
    report["error"] = e.what();
    code = kExitNumerical;
  }
  report["seed"] = g.seed;
  report["exit_code"] = code;
  if (g.timing) {
    report["elapsed_ms"] =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  }
  if (g.json) {
    out << report.dump(2) << '\n';
  } else {
    summarize(report, out);
  }
  if (code != kExitOk) err << name << ": " << report["error"].get<std::string>() << '\n';
  return code;
}

}  // namespace fewbody::cli
