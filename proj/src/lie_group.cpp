#include "taulift/lie_group.hpp"

#include <cmath>

#include "taulift/matfun.hpp"

namespace taulift {

MatrixRep::MatrixRep(Eigen::Index rep_dim, std::vector<Mat> rho)
    : rep_dim_(rep_dim), rho_(std::move(rho)) {
  if (rho_.empty()) throw input_error("MatrixRep: empty generator list");
  for (const Mat& r : rho_)
    if (r.rows() != rep_dim_ || r.cols() != rep_dim_)
      throw input_error("MatrixRep: generator has wrong shape");
  vec_basis_.resize(rep_dim_ * rep_dim_, Eigen::Index(rho_.size()));
  for (Eigen::Index i = 0; i < Eigen::Index(rho_.size()); ++i)
    vec_basis_.col(i) = rho_[i].reshaped();
  qr_ = Eigen::ColPivHouseholderQR<Mat>(vec_basis_);
  if (qr_.rank() != Eigen::Index(rho_.size()))
    throw representation_error("MatrixRep: generators are linearly dependent");
}

Mat MatrixRep::of(const Vec& x) const {
  if (x.size() != algebra_dim()) throw input_error("MatrixRep::of: coordinate length mismatch");
  Mat m = Mat::Zero(rep_dim_, rep_dim_);
  for (Eigen::Index i = 0; i < algebra_dim(); ++i)
    if (x[i] != 0.0) m += x[i] * rho_[i];
  return m;
}

Vec MatrixRep::coords(const Mat& m, double* residual) const {
  const Vec flat = m.reshaped();
  const Vec c = qr_.solve(flat);
  if (residual) *residual = inf_norm(Vec(vec_basis_ * c - flat));
  return c;
}

double MatrixRep::bracket_residual(const LieAlgebra& a) const {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < algebra_dim(); ++i)
    for (Eigen::Index j = 0; j < algebra_dim(); ++j) {
      const Mat lhs = of(bracket(a, a.basis(i), a.basis(j)));
      const Mat rhs = rho_[i] * rho_[j] - rho_[j] * rho_[i];
      worst = std::max(worst, inf_norm(Mat(lhs - rhs)));
    }
  return worst;
}

Mat adjoint(const MatrixRep& rep, const GroupElement& g, double tol) {
  const Mat gi = g.m.inverse();
  Mat ad(rep.algebra_dim(), rep.algebra_dim());
  for (Eigen::Index j = 0; j < rep.algebra_dim(); ++j) {
    double res = 0.0;
    ad.col(j) = rep.coords(g.m * rep.rho(j) * gi, &res);
    if (res > tol)
      throw representation_error("adjoint: conjugate leaves the representation span");
  }
  return ad;
}

HElement h_multiply(const SemidirectAlgebra& h, const MatrixRep& rep, const HElement& a,
                    const HElement& b) {
  const Mat ad_binv = adjoint(rep, b.g.inverse());
  return {GroupElement(a.g.m * b.g.m), tau_group(h.base(), ad_binv, a.x) + b.x};
}

HElement h_inverse(const SemidirectAlgebra& h, const MatrixRep& rep, const HElement& a) {
  const Mat ad_g = adjoint(rep, a.g);
  return {a.g.inverse(), -tau_group(h.base(), ad_g, a.x)};
}

HElement h_exp(const SemidirectAlgebra& h, const MatrixRep& rep, double t, const HVector& v) {
  const Mat m = t * tau_ad_matrix(h.base(), v.first);
  return {GroupElement(expm(rep.of(t * v.first))), t * (phi1m(m) * v.second)};
}

HVector h_adjoint(const SemidirectAlgebra& h, const MatrixRep& rep, const HElement& a,
                  const HVector& v) {
  const Mat ad_g = adjoint(rep, a.g);
  const Mat tau_g = tau_group_matrix(h.base(), ad_g);
  return {ad_g * v.first, tau_g * (v.second - tau_ad(h.base(), v.first, a.x))};
}

namespace {

std::pair<Mat, Mat> factorize_newton(const SemidirectAlgebra& h, const MatrixRep& rep,
                                     const NewtonOptions& opt, const Mat& g) {
  // Second-kind coordinates g = prod exp(a_i xi_i) . prod exp(b_j eta_j),
  // xi spanning g+, eta spanning g-; damped Newton seeded at zero.
  const auto& plus = h.base().plus_indices();
  const auto& minus = h.base().minus_indices();
  const Eigen::Index n = h.dim_g();
  auto assemble = [&](const Vec& p) {
    Mat gp = Mat::Identity(rep.rep_dim(), rep.rep_dim());
    Mat gm = gp;
    for (Eigen::Index i = 0; i < Eigen::Index(plus.size()); ++i)
      gp = gp * expm(Mat(p[i] * rep.rho(plus[i])));
    for (Eigen::Index j = 0; j < Eigen::Index(minus.size()); ++j)
      gm = gm * expm(Mat(p[Eigen::Index(plus.size()) + j] * rep.rho(minus[j])));
    return std::make_pair(gp, gm);
  };
  auto resid = [&](const Vec& p) {
    auto [gp, gm] = assemble(p);
    return Vec((gp * gm - g).reshaped());
  };
  Vec p = Vec::Zero(n);
  Vec f = resid(p);
  for (int it = 0; it < opt.max_iterations; ++it) {
    if (inf_norm(f) < opt.tolerance) {
      auto [gp, gm] = assemble(p);
      return {gp, gm};
    }
    Mat jac(f.size(), n);
    const double fd = 1e-7;
    for (Eigen::Index k = 0; k < n; ++k) {
      Vec pp = p;
      pp[k] += fd;
      jac.col(k) = (resid(pp) - f) / fd;
    }
    const Vec step = jac.colPivHouseholderQr().solve(-f);
    double lambda = 1.0;
    for (int ls = 0; ls < 30; ++ls) {
      const Vec cand = p + lambda * step;
      const Vec fc = resid(cand);
      if (fc.norm() < f.norm() || inf_norm(fc) < opt.tolerance) {
        p = cand;
        f = fc;
        break;
      }
      lambda *= 0.5;
      if (ls == 29)
        throw factorization_error("factorize_g: Newton line search stalled at residual " +
                                  format_double(inf_norm(f)));
    }
  }
  if (inf_norm(f) >= opt.tolerance)
    throw factorization_error("factorize_g: Newton did not converge, residual " +
                              format_double(inf_norm(f)));
  auto [gp, gm] = assemble(p);
  return {gp, gm};
}

}  // namespace

std::pair<GroupElement, GroupElement> factorize_g(const FactorizationStrategy& strategy,
                                                  const SemidirectAlgebra& h,
                                                  const MatrixRep& rep, const GroupElement& g,
                                                  FactorOrder order) {
  if (order == FactorOrder::minus_plus) {
    // g = k- k+  <=>  g^{-1} = k+^{-1} k-^{-1}, a plus-first factorization.
    auto [pp, pm] = factorize_g(strategy, h, rep, g.inverse(), FactorOrder::plus_minus);
    return {GroupElement(pm.m.inverse()), GroupElement(pp.m.inverse())};
  }
  std::pair<Mat, Mat> fac = strategy.closed_form
                              ? strategy.closed_form(g.m)
                              : factorize_newton(h, rep, strategy.newton, g.m);
  const double res = inf_norm(Mat(fac.first * fac.second - g.m));
  if (res > 1e-10)
    throw factorization_error("factorize_g: factor product residual " + format_double(res));
  return {GroupElement(std::move(fac.first)), GroupElement(std::move(fac.second))};
}

std::pair<HElement, HElement> factorize_h(const SemidirectAlgebra& h, const MatrixRep& rep,
                                          const FactorizationStrategy& strategy, const HElement& a,
                                          FactorOrder order) {
  if (order == FactorOrder::minus_plus) {
    auto [pp, pm] = factorize_h(h, rep, strategy, h_inverse(h, rep, a), FactorOrder::plus_minus);
    return {h_inverse(h, rep, pp), h_inverse(h, rep, pm)};
  }
  auto [gp, gm] = factorize_g(strategy, h, rep, a.g, FactorOrder::plus_minus);
  const Mat ad_gm = adjoint(rep, gm);
  const Mat ad_gm_inv = adjoint(rep, gm.inverse());
  const Subspace& pperp = h.base().gplus_perp();
  const Subspace& mperp = h.base().gminus_perp();
  const Vec fiber_plus =
      pperp.projector * tau_group(h.base(), ad_gm, Vec(pperp.projector * a.x));
  const Vec fiber_minus =
      mperp.projector * (a.x - tau_group(h.base(), ad_gm_inv, fiber_plus));
  HElement hp{gp, fiber_plus};
  HElement hm{gm, fiber_minus};
  const HElement prod = h_multiply(h, rep, hp, hm);
  const double res =
      std::max(inf_norm(Mat(prod.g.m - a.g.m)), inf_norm(Vec(prod.x - a.x)));
  if (res > 1e-9)
    throw factorization_error("factorize_h: reassembly residual " + format_double(res));
  return {hp, hm};
}

Vec group_log(const MatrixRep& rep, const FactorizationStrategy& strategy,
              const GroupElement& g) {
  if (strategy.log_coords) return strategy.log_coords(g.m);
  double res = 0.0;
  const Vec w = rep.coords(logm(g.m), &res);
  if (res > 1e-8)
    throw representation_error("group_log: logarithm leaves the representation span");
  return w;
}

double group_membership_residual(const SemidirectAlgebra& h, const MatrixRep& rep,
                                 const FactorizationStrategy& strategy, const GroupElement& g,
                                 Side side) {
  const Vec w = group_log(rep, strategy, g);
  const Subspace& sub = side == Side::plus ? h.base().gplus() : h.base().gminus();
  return sub.membership_residual(w);
}

double h_membership_residual(const SemidirectAlgebra& h, const MatrixRep& rep,
                             const FactorizationStrategy& strategy, const HElement& a,
                             Side side) {
  const Subspace& perp = side == Side::plus ? h.base().gplus_perp() : h.base().gminus_perp();
  return std::max(group_membership_residual(h, rep, strategy, a.g, side),
                  perp.membership_residual(a.x));
}

HElement dressing(const SemidirectAlgebra& h, const MatrixRep& rep,
                  const FactorizationStrategy& strategy, Side side, const HElement& a,
                  const HElement& b) {
  const double amem = h_membership_residual(h, rep, strategy, a, side);
  const double bmem = h_membership_residual(h, rep, strategy, b, opposite(side));
  if (amem > 1e-9 || bmem > 1e-9)
    throw input_error("dressing: element outside its declared factor (residuals " +
                      format_double(amem) + ", " + format_double(bmem) + ")");
  if (side == Side::plus) {
    auto [hp, hm] = factorize_h(h, rep, strategy, h_multiply(h, rep, b, a));
    return hp;
  }
  auto [hp, hm] = factorize_h(h, rep, strategy, h_multiply(h, rep, a, b));
  return hm;
}

HTangent dressing_infinitesimal(const SemidirectAlgebra& h, const MatrixRep& rep,
                                const FactorizationStrategy& strategy, Side side,
                                const HElement& a, const HVector& v, double step) {
  auto sample = [&](double t) {
    const HElement d = dressing(h, rep, strategy, side, a, h_exp(h, rep, t, v));
    return std::make_pair(group_log(rep, strategy, d.g), d.x);
  };
  const auto [w_p2, f_p2] = sample(2 * step);
  const auto [w_p1, f_p1] = sample(step);
  const auto [w_m1, f_m1] = sample(-step);
  const auto [w_m2, f_m2] = sample(-2 * step);
  HTangent out;
  out.group_velocity = (-w_p2 + 8 * w_p1 - 8 * w_m1 + w_m2) / (12 * step);
  out.fiber_velocity = (-f_p2 + 8 * f_p1 - 8 * f_m1 + f_m2) / (12 * step);
  return out;
}

}  // namespace taulift
