#include "taulift/poisson_lie.hpp"

#include <cmath>

#include "taulift/matfun.hpp"

namespace taulift {

namespace {

// Pairing matrix P_ik = (f_i, E_k)_h between the opposite-side basis f and
// the side basis E; square and invertible by the Manin-triple property.
Mat pairing_matrix(const SemidirectAlgebra& h, Side side) {
  const Eigen::Index n = h.dim_g();
  Mat p(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      p(i, j) = h_form(h, h.basis_vector(opposite(side), i), h.basis_vector(side, j));
  return p;
}

Mat embed_block(const SemidirectAlgebra& h, Side side, const Mat& block) {
  const Eigen::Index n = h.dim_g();
  Mat full = Mat::Zero(2 * n, 2 * n);
  const Eigen::Index off = side == Side::plus ? 0 : n;
  full.block(off, off, n, n) = block;
  return full;
}

}  // namespace

CobracketValue cobracket(const SemidirectAlgebra& h, Side side, const HVector& xi,
                         double membership_tol) {
  if (h.h_membership_residual(side, xi) > membership_tol)
    throw input_error("cobracket: element outside its declared subalgebra");
  const Eigen::Index n = h.dim_g();
  Mat c(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      c(i, j) = h_form(
          h, h_bracket(h, h.basis_vector(opposite(side), i), h.basis_vector(opposite(side), j)),
          xi);
  const Mat p = pairing_matrix(h, side);
  Eigen::PartialPivLU<Mat> plu(p);
  Mat t = plu.solve(c);
  t = plu.solve(t.transpose()).transpose();  // P^{-1} C P^{-T}
  // exact antisymmetry by construction: mirror the strict lower triangle
  for (Eigen::Index k = 0; k < n; ++k) {
    t(k, k) = 0.0;
    for (Eigen::Index l = k + 1; l < n; ++l) t(l, k) = -t(k, l);
  }
  return {xi, side, embed_block(h, side, t)};
}

Mat projector_A(const SemidirectAlgebra& h, const MatrixRep& rep, const GroupElement& g,
                Side sign) {
  const Mat ad_g = adjoint(rep, g);
  const Mat ad_gi = adjoint(rep, g.inverse());
  const Subspace& sub = sign == Side::plus ? h.base().gplus() : h.base().gminus();
  return ad_gi * sub.projector * ad_g;
}

Mat phi_tilde(const SemidirectAlgebra& h, const Vec& z) {
  const Eigen::Index d = h.dim_g();
  Mat m(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    m.col(i) = tau_ad(h.base(), h.base().algebra().basis(i), z);
  return m;
}

namespace {

BivectorValue bivector_impl(const SemidirectAlgebra& h, const MatrixRep& rep,
                            const FactorizationStrategy& strategy, Side side,
                            const HElement& point) {
  const double mem = h_membership_residual(h, rep, strategy, point, side);
  if (mem > 1e-9)
    throw input_error("bivector: point outside its declared factor (residual " +
                      format_double(mem) + ")");
  const Eigen::Index n = h.dim_g();
  std::vector<HVector> ad_basis;
  ad_basis.reserve(size_t(n));
  if (side == Side::plus) {
    const HElement hinv = h_inverse(h, rep, point);
    for (Eigen::Index j = 0; j < n; ++j)
      ad_basis.push_back(h_adjoint(h, rep, hinv, h.basis_vector(Side::minus, j)));
  } else {
    for (Eigen::Index j = 0; j < n; ++j)
      ad_basis.push_back(h_adjoint(h, rep, point, h.basis_vector(Side::plus, j)));
  }
  // pi+: M_ij = (Pi_- Ad_{h^{-1}} f_i, Pi_+ Ad_{h^{-1}} f_j)_h over h- pairs;
  // pi-: M_ij = (Pi_+ Ad_h f_i, Pi_- Ad_h f_j)_h over h+ pairs.
  Mat m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      m(i, j) = h_form(h, h.project(opposite(side), ad_basis[size_t(i)]),
                       h.project(side, ad_basis[size_t(j)]));
  const Mat p = pairing_matrix(h, side);
  Eigen::PartialPivLU<Mat> plu(p);
  const Mat c = plu.solve(m);
  const Mat tensor = plu.solve(Mat(c.transpose())).transpose();  // C P^{-T}

  BivectorValue out{point, side, Mat(), Mat(), Mat(), 0.0};
  const Eigen::Index off_row = side == Side::plus ? 0 : n;
  const Eigen::Index off_col = side == Side::plus ? n : 0;
  out.matrix = Mat::Zero(2 * n, 2 * n);
  out.matrix.block(off_row, off_col, n, n) = c;
  out.pairing = m;
  out.tensor = embed_block(h, side, tensor);
  out.antisymmetry_residual = inf_norm(Mat(m + m.transpose()));
  return out;
}

}  // namespace

BivectorValue bivector_plus(const SemidirectAlgebra& h, const MatrixRep& rep,
                            const FactorizationStrategy& strategy, const HElement& point) {
  return bivector_impl(h, rep, strategy, Side::plus, point);
}

BivectorValue bivector_minus(const SemidirectAlgebra& h, const MatrixRep& rep,
                             const FactorizationStrategy& strategy, const HElement& point) {
  return bivector_impl(h, rep, strategy, Side::minus, point);
}

BivectorValue bivector(const SemidirectAlgebra& h, const MatrixRep& rep,
                       const FactorizationStrategy& strategy, Side side, const HElement& point) {
  return bivector_impl(h, rep, strategy, side, point);
}

Mat bivector_plus_block_form(const SemidirectAlgebra& h, const MatrixRep& rep,
                             const HElement& point) {
  const Eigen::Index d = h.dim_g();
  const Mat ad_g = adjoint(rep, point.g);
  const Mat ad_gi = adjoint(rep, point.g.inverse());
  const Mat tau_g = tau_group_matrix(h.base(), ad_g);
  const Mat tau_gi = tau_group_matrix(h.base(), ad_gi);
  const Mat a_plus_inv = ad_g * h.base().gplus().projector * ad_gi;  // A_+(g^{-1})
  Mat block = Mat::Zero(2 * d, 2 * d);
  block.topLeftCorner(d, d) = a_plus_inv;
  block.bottomLeftCorner(d, d) = tau_g * h.base().gplus_perp().projector * phi_tilde(h, point.x) *
                                 h.base().gminus().projector * ad_gi;
  block.bottomRightCorner(d, d) = tau_g * h.base().gplus_perp().projector * tau_gi;
  return block;
}

HTangent dressing_from_bivector(const SemidirectAlgebra& h, const MatrixRep& rep,
                                const FactorizationStrategy& strategy, Side side,
                                const HElement& point, const HVector& v) {
  if (h.h_membership_residual(opposite(side), v) > 1e-9)
    throw input_error("dressing_from_bivector: direction outside the opposite factor");
  const Eigen::Index n = h.dim_g();
  const BivectorValue bv = bivector_impl(h, rep, strategy, side, point);
  // coordinates of v in the opposite Manin basis
  const Mat basis_in = h.h_basis(opposite(side));
  const Vec lambda = basis_in.colPivHouseholderQr().solve(v.stacked());
  const Eigen::Index off_row = side == Side::plus ? 0 : n;
  const Eigen::Index off_col = side == Side::plus ? n : 0;
  const Vec w_coords = bv.matrix.block(off_row, off_col, n, n) * lambda;
  const HVector w = HVector::from_stacked(h.h_basis(side) * w_coords);

  const Vec u = group_log(rep, strategy, point.g);
  const Mat ad_u = ad_matrix(h.base().algebra(), u);
  HTangent out;
  if (side == Side::plus) {
    // right translation: w1 is the right-trivialized group velocity
    out.group_velocity = dexpinv_apply(ad_u, w.first);
    out.fiber_velocity = tau_group(h.base(), adjoint(rep, point.g.inverse()), w.second);
  } else {
    // left translation
    out.group_velocity = dexpinv_apply(Mat(-ad_u), w.first);
    out.fiber_velocity = w.second - tau_ad(h.base(), w.first, point.x);
  }
  return out;
}

double pl_function_bracket(const SemidirectAlgebra& h, const MatrixRep& rep,
                           const FactorizationStrategy& strategy, Side side,
                           const HElement& point, const HVector& dF, const HVector& dG) {
  const Eigen::Index n = h.dim_g();
  const BivectorValue bv = bivector_impl(h, rep, strategy, side, point);
  const Mat basis_in = h.h_basis(opposite(side));
  const Vec lg = basis_in.colPivHouseholderQr().solve(dG.stacked());
  const Eigen::Index off_row = side == Side::plus ? 0 : n;
  const Eigen::Index off_col = side == Side::plus ? n : 0;
  const HVector w =
      HVector::from_stacked(h.h_basis(side) * Vec(bv.matrix.block(off_row, off_col, n, n) * lg));
  return h_form(h, dF, w);
}

HVector trivialized_differential(const SemidirectAlgebra& h, const MatrixRep& rep, Side side,
                                 const HElement& point,
                                 const std::function<double(const HElement&)>& f, double step) {
  const Eigen::Index n = h.dim_g();
  Vec c(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const HVector ek = h.basis_vector(side, k);
    auto at = [&](double t) {
      const HElement e = h_exp(h, rep, t, ek);
      return side == Side::plus ? f(h_multiply(h, rep, e, point))
                                : f(h_multiply(h, rep, point, e));
    };
    c[k] = (at(step) - at(-step)) / (2 * step);
  }
  // a in h(-side) with (a, E_k)_h = c_k
  const Mat p = pairing_matrix(h, side);
  const Vec lambda = p.transpose().partialPivLu().solve(c);
  return HVector::from_stacked(h.h_basis(opposite(side)) * lambda);
}

}  // namespace taulift
