#include "taulift/config.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

namespace taulift {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
  throw input_error(path + ": " + msg);
}

const json& require(const json& j, const char* key, const std::string& path) {
  if (!j.contains(key)) fail(path, std::string("missing key '") + key + "'");
  return j.at(key);
}

Eigen::Index label_of(const LieAlgebra& a, const json& j, const std::string& path) {
  if (j.is_string()) return a.label_index(j.get<std::string>());
  if (j.is_number_integer()) {
    const Eigen::Index i = j.get<Eigen::Index>();
    if (i < 0 || i >= a.dim()) fail(path, "index out of range");
    return i;
  }
  fail(path, "expected a basis label or index");
}

Mat parse_matrix(const json& j, Eigen::Index rows, Eigen::Index cols, const std::string& path) {
  Mat m(rows, cols);
  if (j.is_array() && !j.empty() && j.front().is_array()) {
    if (Eigen::Index(j.size()) != rows) fail(path, "wrong number of rows");
    for (Eigen::Index r = 0; r < rows; ++r) {
      const json& row = j.at(size_t(r));
      if (Eigen::Index(row.size()) != cols)
        fail(path + "[" + std::to_string(r) + "]", "wrong row length");
      for (Eigen::Index c = 0; c < cols; ++c) {
        if (!row.at(size_t(c)).is_number())
          fail(path + "[" + std::to_string(r) + "][" + std::to_string(c) + "]",
               "expected a number");
        m(r, c) = row.at(size_t(c)).get<double>();
      }
    }
    return m;
  }
  if (j.is_array()) {  // flat row-major
    if (Eigen::Index(j.size()) != rows * cols) fail(path, "wrong number of entries");
    for (Eigen::Index r = 0; r < rows; ++r)
      for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = j.at(size_t(r * cols + c)).get<double>();
    return m;
  }
  fail(path, "expected a matrix (array of rows or flat row-major array)");
}

HVector parse_hvec(const SemidirectAlgebra& h, const json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object mapping '<label>.1|2' to numbers");
  HVector v = HVector::zero(h.dim_g());
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string key = it.key();
    const auto dot = key.rfind('.');
    if (dot == std::string::npos || (key.substr(dot + 1) != "1" && key.substr(dot + 1) != "2"))
      fail(path + "." + key, "key must be '<label>.1' or '<label>.2'");
    const Eigen::Index idx = h.base().algebra().label_index(key.substr(0, dot));
    if (!it.value().is_number()) fail(path + "." + key, "expected a number");
    (key.substr(dot + 1) == "1" ? v.first : v.second)[idx] = it.value().get<double>();
  }
  return v;
}

}  // namespace

HVector parse_hvector(const SemidirectAlgebra& h, const std::string& json_text) {
  return parse_hvec(h, json::parse(json_text), "$");
}

ExampleDefinition parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw input_error(std::string("$: not valid JSON (") + e.what() + ")");
  }
  const Eigen::Index dim = require(j, "dim", "$").get<Eigen::Index>();
  if (dim <= 0) fail("$.dim", "must be positive");
  const json& jl = require(j, "labels", "$");
  if (!jl.is_array() || Eigen::Index(jl.size()) != dim)
    fail("$.labels", "must list one label per basis element");
  std::vector<std::string> labels;
  for (const auto& s : jl) labels.push_back(s.get<std::string>());

  LieAlgebra alg(dim, labels);
  const json& jb = require(j, "brackets", "$");
  if (!jb.is_array()) fail("$.brackets", "must be an array");
  for (size_t n = 0; n < jb.size(); ++n) {
    const std::string path = "$.brackets[" + std::to_string(n) + "]";
    const json& e = jb.at(n);
    const Eigen::Index i = label_of(alg, require(e, "i", path), path + ".i");
    const Eigen::Index jdx = label_of(alg, require(e, "j", path), path + ".j");
    const json& coeffs = require(e, "coeffs", path);
    if (!coeffs.is_object()) fail(path + ".coeffs", "expected a label->number map");
    for (auto it = coeffs.begin(); it != coeffs.end(); ++it) {
      const Eigen::Index k = alg.label_index(it.key());
      alg.set_bracket(i, jdx, k, it.value().get<double>());
    }
  }

  const Mat gram = parse_matrix(require(j, "form", "$"), dim, dim, "$.form");
  if (gram != gram.transpose()) {
    for (Eigen::Index r = 0; r < dim; ++r)
      for (Eigen::Index c = r + 1; c < dim; ++c)
        if (gram(r, c) != gram(c, r))
          fail("$.form[" + std::to_string(r) + "][" + std::to_string(c) + "]",
               "form not symmetric (mismatch with [" + std::to_string(c) + "][" +
                   std::to_string(r) + "])");
  }

  const json& js = require(j, "split", "$");
  auto parse_side = [&](const char* key) {
    const json& arr = require(js, key, "$.split");
    if (!arr.is_array()) fail(std::string("$.split.") + key, "expected a label list");
    std::vector<Eigen::Index> out;
    for (size_t n = 0; n < arr.size(); ++n) {
      const std::string path = "$.split." + std::string(key) + "[" + std::to_string(n) + "]";
      out.push_back(label_of(alg, arr.at(n), path));
    }
    return out;
  };
  SplitDoubleAlgebra split(alg, BilinearForm(gram), parse_side("plus"), parse_side("minus"));
  const AlgebraReport ar = validate(split.algebra());
  if (!ar.pass)
    throw validation_error("$.brackets: structure constants fail validation (antisymmetry " +
                           format_double(ar.antisymmetry_residual) + ", Jacobi " +
                           format_double(ar.jacobi_residual) + ")");

  ExampleDefinition ex;
  ex.name = j.value("name", std::string("custom"));
  ex.h = std::make_shared<SemidirectAlgebra>(std::move(split));

  if (j.contains("representation")) {
    const json& jr = j.at("representation");
    const Eigen::Index rd = require(jr, "rep_dim", "$.representation").get<Eigen::Index>();
    const json& jm = require(jr, "matrices", "$.representation");
    if (!jm.is_array() || Eigen::Index(jm.size()) != dim)
      fail("$.representation.matrices", "need one matrix per basis element");
    std::vector<Mat> rho;
    for (size_t n = 0; n < jm.size(); ++n)
      rho.push_back(parse_matrix(jm.at(n), rd, rd,
                                 "$.representation.matrices[" + std::to_string(n) + "]"));
    ex.rep = std::make_shared<MatrixRep>(rd, std::move(rho));
    const double rr = ex.rep->bracket_residual(ex.h->base().algebra());
    if (rr > 1e-10)
      throw validation_error("$.representation: not a representation (bracket residual " +
                             format_double(rr) + ")");
  }

  const std::string side = j.value("side", std::string("plus"));
  if (side != "plus" && side != "minus") fail("$.side", "must be 'plus' or 'minus'");
  ex.side = side == "plus" ? Side::plus : Side::minus;

  const std::string ham = j.value("hamiltonian", std::string("quadratic_pairing"));
  if (ham == "quadratic_pairing")
    ex.hamiltonian = quadratic_pairing(*ex.h);
  else if (ham == "quartic_trace")
    ex.hamiltonian = quartic_trace(*ex.h);
  else
    fail("$.hamiltonian", "unknown builtin '" + ham + "'");

  ex.default_K = j.contains("K") ? parse_hvec(*ex.h, j.at("K"), "$.K") : HVector::zero(dim);
  ex.default_z0 = j.contains("z0") ? parse_hvec(*ex.h, j.at("z0"), "$.z0") : ex.default_K;
  if (j.contains("times")) {
    const json& jt = j.at("times");
    ex.default_times.start = require(jt, "start", "$.times").get<double>();
    ex.default_times.stop = require(jt, "stop", "$.times").get<double>();
    ex.default_times.steps = require(jt, "steps", "$.times").get<int>();
    if (ex.default_times.steps <= 0) fail("$.times.steps", "must be positive");
    if (!(ex.default_times.stop > ex.default_times.start))
      fail("$.times", "stop must exceed start");
  }
  return ex;
}

ExampleDefinition resolve_input(const std::string& example_name, const std::string& config_path) {
  if (!example_name.empty() && !config_path.empty())
    throw input_error("give either --example or --config, not both");
  if (!example_name.empty()) return load(example_name);
  if (config_path.empty()) throw input_error("one of --example or --config is required");
  std::ifstream in(config_path);
  if (!in) throw input_error("cannot open config file '" + config_path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

VerifyReport run_verify(const ExampleDefinition& ex, int samples, std::uint64_t seed) {
  VerifyReport r;
  const SemidirectAlgebra& h = *ex.h;
  const LieAlgebra& a = h.base().algebra();
  r.algebra = validate(a);
  r.split = h.base().validate_split();
  r.manin = manin_decompose(h);
  r.ad_invariance_residual = verify_ad_invariance(h, samples, seed);
  Sampler s(seed);
  for (int i = 0; i < samples; ++i)
    r.antihomomorphism_residual = std::max(
        r.antihomomorphism_residual,
        antihomomorphism_residual(h.base(), s.vec(h.dim_g()), s.vec(h.dim_g())));
  // witness search for non-invariance of the base form (0 when invariant)
  for (int i = 0; i < samples; ++i) {
    const Vec x = s.vec(h.dim_g()), y = s.vec(h.dim_g()), z = s.vec(h.dim_g());
    const double v = h.base().form().pair(bracket(a, x, y), z) +
                     h.base().form().pair(y, bracket(a, x, z));
    r.base_form_invariance_residual = std::max(r.base_form_invariance_residual, std::abs(v));
  }
  if (ex.rep) r.rep_bracket_residual = ex.rep->bracket_residual(a);
  r.pass = r.algebra.pass && r.split.pass && r.manin.pass &&
           r.ad_invariance_residual < 1e-10 && r.antihomomorphism_residual < 1e-10 &&
           (!ex.rep || r.rep_bracket_residual < 1e-10);
  return r;
}

std::string verify_report_text(const ExampleDefinition& ex, const VerifyReport& r) {
  std::ostringstream os;
  auto line = [&](const std::string& k, double v, double tol) {
    os << (v < tol ? "  ok   " : "  FAIL ") << k << " = " << format_double(v) << "\n";
  };
  os << "verify " << ex.name << "\n";
  line("antisymmetry residual", r.algebra.antisymmetry_residual, 1e-12);
  line("jacobi residual", r.algebra.jacobi_residual, 1e-12);
  line("g+ closure residual", r.split.plus_closure, 1e-12);
  line("g- closure residual", r.split.minus_closure, 1e-12);
  line("projector residual", r.split.projector_residual, 1e-12);
  line("h+ closure residual", r.manin.closure_plus, 1e-12);
  line("h- closure residual", r.manin.closure_minus, 1e-12);
  line("h+ isotropy residual", r.manin.isotropy_plus, 1e-12);
  line("h- isotropy residual", r.manin.isotropy_minus, 1e-12);
  os << (r.manin.gamma_rank_ok ? "  ok   " : "  FAIL ") << "gamma rank check\n";
  line("ad^h-invariance residual (sampled)", r.ad_invariance_residual, 1e-10);
  line("antihomomorphism residual (sampled)", r.antihomomorphism_residual, 1e-10);
  if (r.base_form_invariance_residual > 1e-3)
    os << "  note  base form not Ad-invariant (witness residual "
       << format_double(r.base_form_invariance_residual) << "); lifted form invariant\n";
  else
    os << "  note  base form Ad-invariance residual "
       << format_double(r.base_form_invariance_residual) << "\n";
  if (r.rep_bracket_residual >= 0.0) line("representation residual", r.rep_bracket_residual, 1e-10);
  os << (r.pass ? "PASS" : "FAIL") << "\n";
  return os.str();
}

std::string verify_report_json(const ExampleDefinition& ex, const VerifyReport& r) {
  json j;
  j["example"] = ex.name;
  j["antisymmetry_residual"] = r.algebra.antisymmetry_residual;
  j["jacobi_residual"] = r.algebra.jacobi_residual;
  j["split"] = {{"plus_closure", r.split.plus_closure},
                {"minus_closure", r.split.minus_closure},
                {"projector_residual", r.split.projector_residual},
                {"perp_rank_ok", bool(r.split.perp_rank_ok)}};
  j["manin"] = {{"closure_plus", r.manin.closure_plus},
                {"closure_minus", r.manin.closure_minus},
                {"isotropy_plus", r.manin.isotropy_plus},
                {"isotropy_minus", r.manin.isotropy_minus},
                {"gamma_rank_ok", r.manin.gamma_rank_ok}};
  j["ad_invariance_residual"] = r.ad_invariance_residual;
  j["antihomomorphism_residual"] = r.antihomomorphism_residual;
  j["base_form_invariance_residual"] = r.base_form_invariance_residual;
  j["base_form_ad_invariant"] = r.base_form_invariance_residual <= 1e-3;
  if (r.rep_bracket_residual >= 0.0) j["representation_residual"] = r.rep_bracket_residual;
  j["pass"] = r.pass;
  return j.dump(2) + "\n";
}

std::string trajectory_csv(const SemidirectAlgebra& h, const Trajectory& traj) {
  std::ostringstream os;
  const auto& labels = h.base().algebra().labels();
  os << "t";
  for (const auto& l : labels) os << "," << l << ".1";
  for (const auto& l : labels) os << "," << l << ".2";
  os << "\n";
  for (size_t i = 0; i < traj.times.size(); ++i) {
    os << format_double(traj.times[i]);
    for (Eigen::Index k = 0; k < h.dim_g(); ++k)
      os << "," << format_double(traj.states[i].first[k]);
    for (Eigen::Index k = 0; k < h.dim_g(); ++k)
      os << "," << format_double(traj.states[i].second[k]);
    os << "\n";
  }
  return os.str();
}

Trajectory trajectory_from_csv(const SemidirectAlgebra& h, const std::string& csv) {
  Trajectory t;
  std::istringstream is(csv);
  std::string line;
  if (!std::getline(is, line)) throw input_error("empty CSV");
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string cell;
    std::vector<double> row;
    while (std::getline(ls, cell, ',')) row.push_back(std::stod(cell));
    if (Eigen::Index(row.size()) != 1 + 2 * h.dim_g())
      throw input_error("CSV row has wrong number of columns");
    t.times.push_back(row[0]);
    HVector v = HVector::zero(h.dim_g());
    for (Eigen::Index k = 0; k < h.dim_g(); ++k) {
      v.first[k] = row[size_t(1 + k)];
      v.second[k] = row[size_t(1 + h.dim_g() + k)];
    }
    t.states.push_back(v);
  }
  return t;
}

double trajectory_gap(const Trajectory& a, const Trajectory& b) {
  const size_t n = std::min(a.states.size(), b.states.size());
  double worst = 0.0;
  for (size_t i = 0; i < n; ++i) worst = std::max(worst, inf_norm(a.states[i] - b.states[i]));
  return worst;
}

std::string trajectory_json(const SemidirectAlgebra& h, const ExampleDefinition& ex,
                            const std::vector<Trajectory>& trajs) {
  json out;
  out["example"] = ex.name;
  const auto& labels = h.base().algebra().labels();
  json cols = json::array();
  for (const auto& l : labels) cols.push_back(l + ".1");
  for (const auto& l : labels) cols.push_back(l + ".2");
  out["columns"] = cols;
  json jt = json::array();
  for (const Trajectory& t : trajs) {
    json o;
    o["method"] = t.method;
    o["times"] = t.times;
    json states = json::array();
    for (const HVector& s : t.states) {
      const Vec v = s.stacked();
      states.push_back(std::vector<double>(v.data(), v.data() + v.size()));
    }
    o["states"] = states;
    o["conservation_drift"] = conservation_drift(ex.hamiltonian, t);
    if (t.failure) {
      o["failure"] = *t.failure;
      o["failure_time"] = *t.failure_time;
    }
    jt.push_back(o);
  }
  out["trajectories"] = jt;
  if (trajs.size() == 2) out["max_gap"] = trajectory_gap(trajs[0], trajs[1]);
  return out.dump(2) + "\n";
}

}  // namespace taulift
