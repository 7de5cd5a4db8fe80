#include "taulift/semidirect.hpp"

namespace taulift {

SemidirectAlgebra::SemidirectAlgebra(SplitDoubleAlgebra base) : base_(std::move(base)) {
  const Eigen::Index d = base_.dim();
  auto assemble = [&](const Subspace& g_part, const Subspace& perp_part) {
    Mat b = Mat::Zero(2 * d, g_part.rank() + perp_part.rank());
    b.topLeftCorner(d, g_part.rank()) = g_part.basis_matrix;
    b.bottomRightCorner(d, perp_part.rank()) = perp_part.basis_matrix;
    return b;
  };
  hplus_ = assemble(base_.gplus(), base_.gplus_perp());
  hminus_ = assemble(base_.gminus(), base_.gminus_perp());

  pplus_ = Mat::Zero(2 * d, 2 * d);
  pplus_.topLeftCorner(d, d) = base_.gplus().projector;
  pplus_.bottomRightCorner(d, d) = base_.gplus_perp().projector;
  pminus_ = Mat::Identity(2 * d, 2 * d) - pplus_;

  hgram_ = Mat::Zero(2 * d, 2 * d);
  hgram_.topRightCorner(d, d) = base_.form().gram();
  hgram_.bottomLeftCorner(d, d) = base_.form().gram();
}

HVector h_bracket(const SemidirectAlgebra& h, const HVector& a, const HVector& b) {
  if (a.first.size() != h.dim_g() || b.first.size() != h.dim_g())
    throw input_error("h_bracket: dimension mismatch");
  return {bracket(h.base().algebra(), a.first, b.first),
          tau_ad(h.base(), a.first, b.second) - tau_ad(h.base(), b.first, a.second)};
}

double h_form(const SemidirectAlgebra& h, const HVector& a, const HVector& b) {
  const BilinearForm& f = h.base().form();
  return f.pair(a.first, b.second) + f.pair(a.second, b.first);
}

Mat h_ad_matrix(const SemidirectAlgebra& h, const HVector& v) {
  const Eigen::Index d = h.dim_g();
  Mat m = Mat::Zero(2 * d, 2 * d);
  m.topLeftCorner(d, d) = ad_matrix(h.base().algebra(), v.first);
  const Mat t = tau_ad_matrix(h.base(), v.first);
  m.bottomRightCorner(d, d) = t;
  // second-row first-column block: Y' slot from bracket of first slots:
  // [v,(X',Y')]_2 = tau_ad(v1) Y' - tau_ad(X') v2 ; the X'-dependence is
  // -ad^tau_{.}(v2), linear in X' via the phi-tilde map.
  for (Eigen::Index j = 0; j < d; ++j)
    m.block(d, j, d, 1) = -tau_ad(h.base(), h.base().algebra().basis(j), v.second);
  return m;
}

double verify_ad_invariance(const SemidirectAlgebra& h, int samples, std::uint64_t seed) {
  Sampler s(seed);
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const HVector w{s.vec(h.dim_g()), s.vec(h.dim_g())};
    const HVector u{s.vec(h.dim_g()), s.vec(h.dim_g())};
    const HVector v{s.vec(h.dim_g()), s.vec(h.dim_g())};
    const double r = h_form(h, h_bracket(h, w, u), v) + h_form(h, u, h_bracket(h, w, v));
    worst = std::max(worst, std::abs(r));
  }
  return worst;
}

ManinReport manin_decompose(const SemidirectAlgebra& h, Mat* hplus_basis, Mat* hminus_basis) {
  ManinReport r;
  if (hplus_basis) *hplus_basis = h.h_basis(Side::plus);
  if (hminus_basis) *hminus_basis = h.h_basis(Side::minus);
  const Eigen::Index n = h.dim_g();
  for (Side side : {Side::plus, Side::minus}) {
    double closure = 0.0, isotropy = 0.0;
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) {
        const HVector a = h.basis_vector(side, i);
        const HVector b = h.basis_vector(side, j);
        closure = std::max(closure, h.h_membership_residual(side, h_bracket(h, a, b)));
        isotropy = std::max(isotropy, std::abs(h_form(h, a, b)));
      }
    (side == Side::plus ? r.closure_plus : r.closure_minus) = closure;
    (side == Side::plus ? r.isotropy_plus : r.isotropy_minus) = isotropy;
  }
  // gamma maps h+ onto h-*: the pairing matrix between the factors is square
  // and must be invertible.
  Mat p(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      p(i, j) = h_form(h, h.basis_vector(Side::plus, i), h.basis_vector(Side::minus, j));
  r.gamma_rank_ok = Eigen::FullPivLU<Mat>(p).rank() == n;
  r.pass = r.closure_plus < 1e-12 && r.closure_minus < 1e-12 && r.isotropy_plus < 1e-12 &&
           r.isotropy_minus < 1e-12 && r.gamma_rank_ok;
  return r;
}

Vec gamma(const SemidirectAlgebra& h, const HVector& v) { return h.h_gram() * v.stacked(); }

HVector gamma_inverse(const SemidirectAlgebra& h, const Vec& dual) {
  return HVector::from_stacked(h.h_gram().partialPivLu().solve(dual));
}

}  // namespace taulift
