#pragma once

#include <memory>

#include "taulift/aks.hpp"
#include "taulift/poisson_lie.hpp"

namespace taulift {

/// One fully specified problem instance: algebra + form + split + faithful
/// representation + closed-form factorization + Hamiltonian + an admissible
/// default shift/initial condition, and a closed-form reference solution
/// where available.
struct ExampleDefinition {
  std::string name;
  std::shared_ptr<const SemidirectAlgebra> h;
  std::shared_ptr<const MatrixRep> rep;
  FactorizationStrategy factorization;
  HamiltonianSpec hamiltonian;
  Side side = Side::plus;

  HVector default_K;
  HVector default_z0;  // includes the shift
  TimeGrid default_times;

  // Closed-form state at time t (throws input_error when z0 is inadmissible).
  std::function<HVector(const HVector& z0, double t)> reference_solution;
  bool reference_is_closed_form = true;  // sl2c's is regenerated from its ODE

  AKSProblem default_problem() const {
    return {hamiltonian, default_K, default_z0, default_times, side};
  }
};

// name: nilpotent3 | a6_34 | sl2c
const ExampleDefinition& load(const std::string& name);
std::vector<std::string> catalog_names();

HVector reference_solution(const std::string& name, const HVector& z0, double t);

}  // namespace taulift
