// Command-line front end: verification reports, AKS trajectory solving with
// oracle comparison, Poisson-Lie bivector evaluation, and dressing actions.
//
// Exit codes: 0 success, 1 validation failure, 2 inadmissible input,
// 3 numeric failure (factorization divergence).

#include <CLI11.hpp>
#include <fstream>
#include <optional>
#include <iostream>
#include <json.hpp>

#include "taulift/config.hpp"
#include "taulift/matfun.hpp"

using namespace taulift;
using nlohmann::json;

namespace {

struct GlobalOpts {
  std::string example;
  std::string config;
  std::string out;
  std::string format = "csv";
  double tol = 1e-10;
  std::uint64_t seed = 42;
};

void add_common(CLI::App* cmd, GlobalOpts& g) {
  cmd->add_option("--example", g.example, "catalog example name");
  cmd->add_option("--config", g.config, "path to an algebra-config JSON file");
  cmd->add_option("--out", g.out, "write output to this path instead of stdout");
  cmd->add_option("--format", g.format, "output format: csv|json")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--tol", g.tol, "tolerance for verification checks");
  cmd->add_option("--seed", g.seed, "seed for randomized property checks");
}

void emit(const GlobalOpts& g, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream of(g.out, std::ios::binary);
  if (!of) throw input_error("cannot open output file '" + g.out + "'");
  of << text;
}

// Point spec for bivector/dressing: {"exp": {label: w}, "fiber": {label: x}}.
HElement parse_point(const ExampleDefinition& ex, const std::string& path_or_json) {
  std::string text = path_or_json;
  if (!text.empty() && text[0] != '{') {
    std::ifstream in(path_or_json);
    if (!in) throw input_error("cannot open point file '" + path_or_json + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  const json j = json::parse(text);
  const LieAlgebra& a = ex.h->base().algebra();
  Vec w = Vec::Zero(a.dim()), x = Vec::Zero(a.dim());
  if (j.contains("exp"))
    for (auto it = j.at("exp").begin(); it != j.at("exp").end(); ++it)
      w[a.label_index(it.key())] = it.value().get<double>();
  if (j.contains("fiber"))
    for (auto it = j.at("fiber").begin(); it != j.at("fiber").end(); ++it)
      x[a.label_index(it.key())] = it.value().get<double>();
  if (!ex.rep) throw input_error("this operation needs a matrix representation");
  return {GroupElement(expm(ex.rep->of(w))), x};
}

json hvector_json(const SemidirectAlgebra& h, const Vec& first, const Vec& second) {
  json o;
  const auto& labels = h.base().algebra().labels();
  for (Eigen::Index i = 0; i < h.dim_g(); ++i) {
    if (first[i] != 0.0) o[labels[i] + ".1"] = first[i];
    if (second[i] != 0.0) o[labels[i] + ".2"] = second[i];
  }
  return o;
}

int cmd_verify(const GlobalOpts& g) {
  const ExampleDefinition ex = resolve_input(g.example, g.config);
  const VerifyReport r = run_verify(ex, 100, g.seed);
  emit(g, g.format == "json" ? verify_report_json(ex, r) : verify_report_text(ex, r));
  return r.pass ? 0 : 1;
}

int cmd_solve(const GlobalOpts& g, const std::string& method, const std::string& trange) {
  ExampleDefinition ex = resolve_input(g.example, g.config);
  AKSProblem problem = ex.default_problem();
  if (!trange.empty()) {
    double start = 0, stop = 0;
    int steps = 0;
    if (std::sscanf(trange.c_str(), "%lf:%lf:%d", &start, &stop, &steps) != 3 || steps <= 0 ||
        !(stop > start))
      throw input_error("--t expects start:stop:steps");
    problem.times = {start, stop, steps};
  }
  const CharacterReport cr = character_check(*ex.h, problem.K, problem.side);
  if (!cr.pass) {
    std::cerr << "inadmissible shift K: character condition fails (residual "
              << format_double(cr.residual) << ") at components:";
    for (const auto& c : cr.failing_components) std::cerr << " " << c;
    std::cerr << "\n";
    return 2;
  }
  std::vector<Trajectory> trajs;
  if (!ex.rep && method != "oracle")
    throw input_error("method '" + method + "' needs a matrix representation");
  if (method == "aks" || method == "both")
    trajs.push_back(solve_aks(problem, *ex.h, *ex.rep, ex.factorization));
  if (method == "oracle" || method == "both") trajs.push_back(ode_oracle(problem, *ex.h));
  for (const Trajectory& t : trajs)
    if (t.failure) {
      std::cerr << "numeric failure at t = " << format_double(*t.failure_time) << ": "
                << *t.failure << "\n";
      emit(g, trajectory_json(*ex.h, ex, trajs));
      return 3;
    }
  if (g.format == "json")
    emit(g, trajectory_json(*ex.h, ex, trajs));
  else {
    std::string out;
    for (size_t i = 0; i < trajs.size(); ++i) {
      if (trajs.size() > 1) out += "# method=" + trajs[i].method + "\n";
      out += trajectory_csv(*ex.h, trajs[i]);
    }
    if (trajs.size() == 2)
      out += "# max_gap=" + format_double(trajectory_gap(trajs[0], trajs[1])) + "\n";
    emit(g, out);
  }
  return 0;
}

int cmd_bivector(const GlobalOpts& g, const std::string& side_str, const std::string& point) {
  const ExampleDefinition ex = resolve_input(g.example, g.config);
  const Side side = side_str == "-" || side_str == "minus" ? Side::minus : Side::plus;
  HElement pt = parse_point(ex, point);
  std::optional<BivectorValue> bvo;
  try {
    bvo = bivector(*ex.h, *ex.rep, ex.factorization, side, pt);
  } catch (const input_error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
  const BivectorValue& bv = *bvo;
  json out;
  out["example"] = ex.name;
  out["side"] = side == Side::plus ? "+" : "-";
  json rows = json::array();
  for (Eigen::Index r = 0; r < bv.matrix.rows(); ++r) {
    std::vector<double> row(size_t(bv.matrix.cols()));
    for (Eigen::Index c = 0; c < bv.matrix.cols(); ++c) row[size_t(c)] = bv.matrix(r, c);
    rows.push_back(row);
  }
  out["operator_manin_basis"] = rows;
  out["antisymmetry_residual"] = bv.antisymmetry_residual;
  out["vanishes_at_identity"] = inf_norm(bv.matrix) < g.tol;
  emit(g, out.dump(2) + "\n");
  return 0;
}

int cmd_dressing(const GlobalOpts& g, const std::string& side_str, const std::string& point,
                 const std::string& by) {
  const ExampleDefinition ex = resolve_input(g.example, g.config);
  const Side side = side_str == "-" || side_str == "minus" ? Side::minus : Side::plus;
  const HElement a = parse_point(ex, point);
  const HElement b = parse_point(ex, by);
  HElement dressed = a;
  try {
    dressed = dressing(*ex.h, *ex.rep, ex.factorization, side, a, b);
  } catch (const input_error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const numeric_error& e) {
    std::cerr << e.what() << "\n";
    return 3;
  }
  json out;
  out["example"] = ex.name;
  out["side"] = side == Side::plus ? "+" : "-";
  const Vec w = group_log(*ex.rep, ex.factorization, dressed.g);
  out["exp"] = json::object();
  out["fiber"] = json::object();
  const auto& labels = ex.h->base().algebra().labels();
  for (Eigen::Index i = 0; i < ex.h->dim_g(); ++i) {
    if (w[i] != 0.0) out["exp"][labels[i]] = w[i];
    if (dressed.x[i] != 0.0) out["fiber"][labels[i]] = dressed.x[i];
  }
  emit(g, out.dump(2) + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"double Lie algebra lifting, Manin triples, and AKS integration"};
  app.require_subcommand(1);

  GlobalOpts g;
  std::string method = "both", trange, side = "+", point, by;

  CLI::App* verify = app.add_subcommand("verify", "run the validation stack");
  add_common(verify, g);

  CLI::App* solve = app.add_subcommand("solve", "solve the AKS system");
  add_common(solve, g);
  solve->add_option("--method", method, "aks|oracle|both")
      ->check(CLI::IsMember({"aks", "oracle", "both"}));
  solve->add_option("--t", trange, "time grid start:stop:steps");

  CLI::App* biv = app.add_subcommand("bivector", "evaluate the Poisson-Lie bivector");
  add_common(biv, g);
  biv->add_option("--side", side, "factor: + or -");
  biv->add_option("--point", point, "point spec (JSON text or file path)")->required();

  CLI::App* dress = app.add_subcommand("dressing", "apply a dressing action");
  add_common(dress, g);
  dress->add_option("--side", side, "factor of the dressed element: + or -");
  dress->add_option("--point", point, "dressed element (JSON text or path)")->required();
  dress->add_option("--by", by, "acting element (JSON text or path)")->required();

  CLI::App* cat = app.add_subcommand("catalog", "catalog utilities");
  CLI::App* cat_list = cat->add_subcommand("list", "list shipped examples");

  CLI11_PARSE(app, argc, argv);

  try {
    if (verify->parsed()) return cmd_verify(g);
    if (solve->parsed()) return cmd_solve(g, method, trange);
    if (biv->parsed()) return cmd_bivector(g, side, point);
    if (dress->parsed()) return cmd_dressing(g, side, point, by);
    if (cat->parsed() && cat_list->parsed()) {
      for (const std::string& n : catalog_names()) {
        const ExampleDefinition& ex = load(n);
        std::cout << n << "  dim_g=" << ex.h->dim_g()
                  << "  side=" << (ex.side == Side::plus ? "+" : "-") << "\n";
      }
      return 0;
    }
  } catch (const input_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const validation_error& e) {
    std::cerr << "validation failure: " << e.what() << "\n";
    return 1;
  } catch (const numeric_error& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
