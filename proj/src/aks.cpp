#include "taulift/aks.hpp"

#include <cmath>

namespace taulift {

HamiltonianSpec quadratic_pairing(const SemidirectAlgebra& h) {
  HamiltonianSpec s;
  s.evaluate = [&h](const HVector& v) { return 0.5 * h_form(h, v, v); };
  s.legendre = [](const HVector& v) { return v; };
  s.ad_invariant = true;
  return s;
}

HamiltonianSpec quartic_trace(const SemidirectAlgebra& h) {
  HamiltonianSpec s;
  s.evaluate = [&h](const HVector& v) {
    const Mat a = h_ad_matrix(h, v);
    const Mat a2 = a * a;
    return (a2 * a2).trace();
  };
  s.legendre = [&h](const HVector& v) {
    const Eigen::Index n = h.dim_h();
    const Mat a = h_ad_matrix(h, v);
    const Mat a3 = a * a * a;
    Vec grad(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      Vec e = Vec::Zero(n);
      e[i] = 1.0;
      grad[i] = 4.0 * (a3 * h_ad_matrix(h, HVector::from_stacked(e))).trace();
    }
    return gamma_inverse(h, grad);
  };
  s.ad_invariant = true;
  return s;
}

HamiltonianSpec from_function(const SemidirectAlgebra& h, std::function<double(const HVector&)> f,
                              bool ad_invariant, double step) {
  HamiltonianSpec s;
  s.evaluate = f;
  s.legendre = [&h, f, step](const HVector& v) {
    const Eigen::Index n = h.dim_h();
    Vec grad(n);
    const Vec base = v.stacked();
    for (Eigen::Index i = 0; i < n; ++i) {
      Vec hi = base, lo = base;
      hi[i] += step;
      lo[i] -= step;
      grad[i] =
          (f(HVector::from_stacked(hi)) - f(HVector::from_stacked(lo))) / (2 * step);
    }
    return gamma_inverse(h, grad);
  };
  s.ad_invariant = ad_invariant;
  return s;
}

double lie_poisson_bracket(const SemidirectAlgebra& h, const HamiltonianSpec& f,
                           const HamiltonianSpec& g, const HVector& x) {
  return h_form(h, x, h_bracket(h, f.legendre(x), g.legendre(x)));
}

double restricted_bracket(const SemidirectAlgebra& h, const HamiltonianSpec& f,
                          const HamiltonianSpec& g, const HVector& x_side, const HVector& k,
                          Side side) {
  const HVector z = x_side + k;
  const HVector lf = h.project(opposite(side), f.legendre(z));
  const HVector lg = h.project(opposite(side), g.legendre(z));
  return h_form(h, x_side, h_bracket(h, lf, lg));
}

CharacterReport character_check(const SemidirectAlgebra& h, const HVector& k, Side side,
                                double tol) {
  CharacterReport r;
  const Side shift_side = opposite(side);
  if (h.h_membership_residual(shift_side, k) > tol)
    throw input_error("character_check: K lies outside the shift factor");
  const Eigen::Index n = h.dim_g();
  const Mat proj = h.h_projector(shift_side);
  for (Eigen::Index j = 0; j < n; ++j) {
    const HVector e = h.basis_vector(side, j);
    const HVector br = h_bracket(h, e, k);
    const Vec p = proj * br.stacked();
    const double res = inf_norm(p);
    r.residual = std::max(r.residual, res);
    // componentwise diagnostics: first-slot bracket part, second-slot tau part
    r.bracket_component = std::max(r.bracket_component, inf_norm(Vec(p.head(h.dim_g()))));
    r.tau_component = std::max(r.tau_component, inf_norm(Vec(p.tail(h.dim_g()))));
    if (res >= tol) {
      const auto& labels = h.base().algebra().labels();
      for (Eigen::Index i = 0; i < h.dim_g(); ++i) {
        if (std::abs(p[i]) >= tol)
          r.failing_components.push_back(labels[i] + ".1");
        if (std::abs(p[h.dim_g() + i]) >= tol)
          r.failing_components.push_back(labels[i] + ".2");
      }
    }
  }
  std::sort(r.failing_components.begin(), r.failing_components.end());
  r.failing_components.erase(
      std::unique(r.failing_components.begin(), r.failing_components.end()),
      r.failing_components.end());
  r.pass = r.residual < tol;
  return r;
}

HVector hamiltonian_field(const SemidirectAlgebra& h, const HamiltonianSpec& spec,
                          const HVector& z, Side side, double check_tol) {
  if (!spec.ad_invariant)
    throw validation_error("hamiltonian_field: Hamiltonian is not declared Ad-invariant");
  const HVector l = spec.legendre(z);
  const HVector v = h.project(side, h_bracket(h, h.project(opposite(side), l), z));
  const HVector alt = -1.0 * h_bracket(h, h.project(side, l), z);
  if (inf_norm(v - alt) > check_tol)
    throw validation_error(
        "hamiltonian_field: invariance identity ad_{L(Z)}Z = 0 fails (residual " +
        format_double(inf_norm(v - alt)) + "); Hamiltonian is not actually invariant");
  return v;
}

HVector evolution_field(const SemidirectAlgebra& h, const HamiltonianSpec& spec, const HVector& z,
                        Side side) {
  // componentwise form of -ad_{W} Z with W = Pi_{h(side)} L(Z):
  //   Pi_1 Zdot = [Pi_1 Z, Pi_1 W]
  //   Pi_2 Zdot = ad^tau_{Pi_1 Z} Pi_2 W - ad^tau_{Pi_1 W} Pi_2 Z.
  const HVector w = h.project(side, spec.legendre(z));
  return {bracket(h.base().algebra(), z.first, w.first),
          tau_ad(h.base(), z.first, w.second) - tau_ad(h.base(), w.first, z.second)};
}

Trajectory solve_aks(const AKSProblem& problem, const SemidirectAlgebra& h, const MatrixRep& rep,
                     const FactorizationStrategy& strategy) {
  const CharacterReport cr = character_check(h, problem.K, problem.side);
  if (!cr.pass)
    throw input_error("solve_aks: shift K fails the character condition (residual " +
                      format_double(cr.residual) + ")");
  if (h.h_membership_residual(problem.side, problem.z0 - problem.K) > 1e-10)
    throw input_error("solve_aks: z0 - K lies outside the dynamical factor");

  Trajectory traj;
  traj.method = "factorization";
  const HVector l0 = problem.hamiltonian.legendre(problem.z0);
  const FactorOrder order =
      problem.side == Side::plus ? FactorOrder::plus_minus : FactorOrder::minus_plus;
  for (int i = 0; i < problem.times.samples(); ++i) {
    const double t = problem.times.at(i);
    if (t == 0.0) {
      traj.times.push_back(t);
      traj.states.push_back(problem.z0);
      continue;
    }
    try {
      const HElement e = h_exp(h, rep, t, l0);
      auto [hp, hm] = factorize_h(h, rep, strategy, e, order);
      const HElement& factor = problem.side == Side::plus ? hp : hm;
      traj.times.push_back(t);
      traj.states.push_back(h_adjoint(h, rep, h_inverse(h, rep, factor), problem.z0));
    } catch (const numeric_error& err) {
      traj.failure = err.what();
      traj.failure_time = t;
      break;
    }
  }
  return traj;
}

Trajectory ode_oracle(const AKSProblem& problem, const SemidirectAlgebra& h, double max_step) {
  Trajectory traj;
  traj.method = "oracle";
  HVector z = problem.z0;
  traj.times.push_back(problem.times.at(0));
  traj.states.push_back(z);
  auto f = [&](const HVector& y) { return evolution_field(h, problem.hamiltonian, y, problem.side); };
  for (int i = 1; i < problem.times.samples(); ++i) {
    const double t0 = problem.times.at(i - 1);
    const double t1 = problem.times.at(i);
    const int nsub = std::max(1, int(std::ceil((t1 - t0) / max_step - 1e-12)));
    const double dt = (t1 - t0) / nsub;
    for (int k = 0; k < nsub; ++k) {
      const HVector k1 = f(z);
      const HVector k2 = f(z + 0.5 * dt * k1);
      const HVector k3 = f(z + 0.5 * dt * k2);
      const HVector k4 = f(z + dt * k3);
      z = z + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    traj.times.push_back(t1);
    traj.states.push_back(z);
  }
  return traj;
}

Vec restrict_g2(const SemidirectAlgebra& h, const HamiltonianSpec& spec, const HVector& z,
                Side side, double support_tol) {
  if (inf_norm(z.first) > support_tol)
    throw input_error("restrict_g2: state has support outside g2 = {0} (+) g");
  // reduced Legendre L_h = Pi_1 . L . iota
  const Vec lh = spec.legendre(HVector{Vec::Zero(h.dim_g()), z.second}).first;
  const Subspace& sub = side == Side::plus ? h.base().gplus() : h.base().gminus();
  return -tau_ad(h.base(), Vec(sub.projector * lh), z.second);
}

double conservation_drift(const HamiltonianSpec& spec, const Trajectory& traj) {
  if (traj.states.empty()) return 0.0;
  const double h0 = spec.evaluate(traj.states.front());
  double worst = 0.0;
  for (const HVector& s : traj.states) worst = std::max(worst, std::abs(spec.evaluate(s) - h0));
  return worst;
}

double slice_drift(const SemidirectAlgebra& h, const Trajectory& traj, const HVector& k,
                   Side side) {
  double worst = 0.0;
  for (const HVector& s : traj.states)
    worst = std::max(worst, h.h_membership_residual(side, s - k));
  return worst;
}

}  // namespace taulift
