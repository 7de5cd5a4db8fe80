#pragma once

#include <optional>

#include "taulift/lie_group.hpp"

namespace taulift {

/// Hamiltonian on h: value, analytic Legendre transform (gradient w.r.t. the
/// h-pairing), and the declared Ad^H-invariance flag.
struct HamiltonianSpec {
  std::function<double(const HVector&)> evaluate;
  std::function<HVector(const HVector&)> legendre;
  bool ad_invariant = false;
};

// H(v) = (1/2)(v,v)_h, Legendre = identity; Ad^H-invariant by construction.
HamiltonianSpec quadratic_pairing(const SemidirectAlgebra& h);
// F(v) = tr((ad^h_v)^4); Ad^H-invariant, functionally independent of the
// quadratic; Legendre through the h-Gram solve of the gradient.
HamiltonianSpec quartic_trace(const SemidirectAlgebra& h);
// Synthesize the Legendre transform by central finite differences.
HamiltonianSpec from_function(const SemidirectAlgebra& h,
                              std::function<double(const HVector&)> f, bool ad_invariant,
                              double step = 1e-6);

struct TimeGrid {
  double start = 0.0;
  double stop = 2.0;
  int steps = 200;  // number of intervals; samples = steps + 1

  double at(int i) const { return start + (stop - start) * double(i) / double(steps); }
  int samples() const { return steps + 1; }
};

/// AKS problem data: dynamics on h(side) shifted by the character K in the
/// opposite factor; z0 = X(side),0 + K.
struct AKSProblem {
  HamiltonianSpec hamiltonian;
  HVector K;
  HVector z0;
  TimeGrid times;
  Side side = Side::plus;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<HVector> states;
  std::string method;                    // "factorization" | "oracle"
  std::optional<std::string> failure;    // set when a time sample failed
  std::optional<double> failure_time;
};

struct CharacterReport {
  double residual = 0.0;                 // max || Pi_{h(-side)} [E, K] ||_inf over h(side) basis
  double bracket_component = 0.0;        // first-slot component residual
  double tau_component = 0.0;            // second-slot component residual
  std::vector<std::string> failing_components;
  bool pass = false;
};

double lie_poisson_bracket(const SemidirectAlgebra& h, const HamiltonianSpec& f,
                           const HamiltonianSpec& g, const HVector& x);

// Restricted bracket on the slice: (X_side, [Pi_opp L_F(X+K), Pi_opp L_G(X+K)])_h.
double restricted_bracket(const SemidirectAlgebra& h, const HamiltonianSpec& f,
                          const HamiltonianSpec& g, const HVector& x_side, const HVector& k,
                          Side side = Side::plus);

CharacterReport character_check(const SemidirectAlgebra& h, const HVector& k,
                                Side side = Side::plus, double tol = 1e-10);

// Pi_{h(side)} ad_{Pi_{h(-side)} L(Z)} Z, with the invariance cross-check
// against -ad_{Pi_{h(side)} L(Z)} Z (throws validation_error on failure).
HVector hamiltonian_field(const SemidirectAlgebra& h, const HamiltonianSpec& spec,
                          const HVector& z, Side side = Side::plus, double check_tol = 1e-9);

// Evolution field -ad_{Pi_{h(side)} L(Z)} Z, assembled componentwise; used by
// the RK4 oracle. Coincides with hamiltonian_field for invariant Hamiltonians.
HVector evolution_field(const SemidirectAlgebra& h, const HamiltonianSpec& spec, const HVector& z,
                        Side side = Side::plus);

// Solve by factorization of the exponential curve Exp.(t L(z0)).
Trajectory solve_aks(const AKSProblem& problem, const SemidirectAlgebra& h, const MatrixRep& rep,
                     const FactorizationStrategy& strategy);

// Classical fixed-step RK4 on the componentwise evolution system.
Trajectory ode_oracle(const AKSProblem& problem, const SemidirectAlgebra& h,
                      double max_step = 1e-4);

// Reduced field on g2 = {0} (+) g: -ad^tau_{Pi_{g side} L_h(Pi_2 Z)}(Pi_2 Z)
// with L_h = Pi_1 . L . iota. Requires the first slot of Z to vanish.
Vec restrict_g2(const SemidirectAlgebra& h, const HamiltonianSpec& spec, const HVector& z,
                Side side = Side::plus, double support_tol = 1e-12);

// Max |H(Z(t)) - H(Z(0))| along a trajectory.
double conservation_drift(const HamiltonianSpec& spec, const Trajectory& traj);
// Max || Pi_{h(-side)}(Z(t) - K) ||_inf along a trajectory.
double slice_drift(const SemidirectAlgebra& h, const Trajectory& traj, const HVector& k,
                   Side side);

}  // namespace taulift
