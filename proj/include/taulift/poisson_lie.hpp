#pragma once

#include "taulift/lie_group.hpp"

namespace taulift {

/// delta(xi) in h(side) (x) h(side), stored as the full dim_h x dim_h
/// antisymmetric coefficient matrix in the Manin basis [h+ block | h- block];
/// support lies in the side's diagonal block.
struct CobracketValue {
  HVector element;
  Side side;
  Mat tensor;
};

/// Poisson-Lie bivector at a point of H(side).
/// `matrix` is the operator pi^R (side = plus) or pi^L (side = minus) in the
/// Manin basis, mapping h(-side)-coordinates to h(side)-coordinates (the
/// off-diagonal block carries the dim_g x dim_g operator).
/// `pairing` is the scalar matrix M_ij = <gamma a_i (x) gamma a_j, pi> over
/// the natural h(-side) basis, and `tensor` the coefficient matrix of pi in
/// h(side) (x) h(side) (same Manin-basis layout as CobracketValue).
struct BivectorValue {
  HElement point;
  Side side;
  Mat matrix;   // dim_h x dim_h operator
  Mat pairing;  // dim_g x dim_g
  Mat tensor;   // dim_h x dim_h
  double antisymmetry_residual = 0.0;
};

// Lie cobracket dual to the h(-side) bracket via (.,.)_{h(x)h}.
CobracketValue cobracket(const SemidirectAlgebra& h, Side side, const HVector& xi,
                         double membership_tol = 1e-10);

// A_{sign}(g) = Ad_{g^{-1}} Pi_{g sign} Ad_g.
Mat projector_A(const SemidirectAlgebra& h, const MatrixRep& rep, const GroupElement& g,
                Side sign);

// Matrix of X -> ad^tau_X Z (linear in Z).
Mat phi_tilde(const SemidirectAlgebra& h, const Vec& z);

BivectorValue bivector_plus(const SemidirectAlgebra& h, const MatrixRep& rep,
                            const FactorizationStrategy& strategy, const HElement& point);
BivectorValue bivector_minus(const SemidirectAlgebra& h, const MatrixRep& rep,
                             const FactorizationStrategy& strategy, const HElement& point);
BivectorValue bivector(const SemidirectAlgebra& h, const MatrixRep& rep,
                       const FactorizationStrategy& strategy, Side side, const HElement& point);

// Closed block form of the plus-side operator (projector/translation
// factors), used as a regression comparison against the defining-relation
// operator.
Mat bivector_plus_block_form(const SemidirectAlgebra& h, const MatrixRep& rep,
                             const HElement& point);

// Infinitesimal dressing generator retrieved from the bivector: contract with
// v in h(-side), then translate to the point (right translation on H+, left
// on H-). Output representation matches dressing_infinitesimal.
HTangent dressing_from_bivector(const SemidirectAlgebra& h, const MatrixRep& rep,
                                const FactorizationStrategy& strategy, Side side,
                                const HElement& point, const HVector& v);

// Poisson bracket of two functions from their trivialized differentials
// (each supplied as the h(-side) vector a with gamma(a) = translated dF).
double pl_function_bracket(const SemidirectAlgebra& h, const MatrixRep& rep,
                           const FactorizationStrategy& strategy, Side side,
                           const HElement& point, const HVector& dF, const HVector& dG);

// Trivialized differential of a scalar function on H(side) at `point`,
// computed by central differences along translated basis curves.
HVector trivialized_differential(const SemidirectAlgebra& h, const MatrixRep& rep, Side side,
                                 const HElement& point,
                                 const std::function<double(const HElement&)>& f,
                                 double step = 1e-6);

}  // namespace taulift
