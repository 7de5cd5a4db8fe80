#pragma once

#include <doctest.h>

#include "taulift/catalog.hpp"
#include "taulift/matfun.hpp"

namespace tt = taulift;

// unit vector in R^n
inline tt::Vec unit(Eigen::Index n, Eigen::Index i, double v = 1.0) {
  tt::Vec e = tt::Vec::Zero(n);
  e[i] = v;
  return e;
}

inline tt::HVector hv(const tt::Vec& first, const tt::Vec& second) { return {first, second}; }

// (e_i, 0) and (0, e_i) in h
inline tt::HVector slot1(Eigen::Index n, Eigen::Index i, double v = 1.0) {
  return {unit(n, i, v), tt::Vec::Zero(n)};
}
inline tt::HVector slot2(Eigen::Index n, Eigen::Index i, double v = 1.0) {
  return {tt::Vec::Zero(n), unit(n, i, v)};
}

inline tt::HElement make_h(const tt::ExampleDefinition& ex, const tt::Vec& exp_coords,
                           const tt::Vec& fiber) {
  return {tt::GroupElement(tt::expm(ex.rep->of(exp_coords))), fiber};
}

// random element of H(side): exponential of a side-subalgebra element with a
// fiber in the matching annihilator
inline tt::HElement random_factor_element(const tt::ExampleDefinition& ex, tt::Side side,
                                          tt::Sampler& s, double scale = 0.6) {
  const auto& base = ex.h->base();
  const auto& idx = side == tt::Side::plus ? base.plus_indices() : base.minus_indices();
  tt::Vec w = tt::Vec::Zero(ex.h->dim_g());
  for (Eigen::Index i : idx) w[i] = s.uniform(-scale, scale);
  const tt::Subspace& perp = side == tt::Side::plus ? base.gplus_perp() : base.gminus_perp();
  const tt::Vec fiber = perp.projector * s.vec(ex.h->dim_g());
  return make_h(ex, w, fiber);
}

inline tt::HVector random_h_side_vector(const tt::ExampleDefinition& ex, tt::Side side,
                                        tt::Sampler& s) {
  return ex.h->project(side, tt::HVector{s.vec(ex.h->dim_g()), s.vec(ex.h->dim_g())});
}

// 2-dim abelian split double algebra with the standard form
inline tt::SplitDoubleAlgebra abelian2() {
  tt::LieAlgebra a(2, {"a1", "a2"});
  return tt::SplitDoubleAlgebra(a, tt::BilinearForm(tt::Mat::Identity(2, 2)), {0}, {1});
}
