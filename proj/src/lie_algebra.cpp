#include "taulift/lie_algebra.hpp"

#include <algorithm>
#include <cmath>

namespace taulift {

LieAlgebra::LieAlgebra(Eigen::Index dim, std::vector<std::string> labels)
    : dim_(dim), labels_(std::move(labels)), c_(dim, Mat::Zero(dim, dim)) {
  if (dim <= 0) throw input_error("LieAlgebra: dimension must be positive");
  if (Eigen::Index(labels_.size()) != dim)
    throw input_error("LieAlgebra: labels length must equal dim");
}

LieAlgebra::LieAlgebra(std::vector<Mat> c_slices, std::vector<std::string> labels)
    : dim_(Eigen::Index(c_slices.size())), labels_(std::move(labels)), c_(std::move(c_slices)) {
  if (dim_ <= 0) throw input_error("LieAlgebra: empty structure tensor");
  if (Eigen::Index(labels_.size()) != dim_)
    throw input_error("LieAlgebra: labels length must equal dim");
  for (const Mat& s : c_)
    if (s.rows() != dim_ || s.cols() != dim_)
      throw input_error("LieAlgebra: structure tensor slice has wrong shape");
}

void LieAlgebra::set_bracket(Eigen::Index i, Eigen::Index j, Eigen::Index k, double coeff) {
  if (i < 0 || j < 0 || k < 0 || i >= dim_ || j >= dim_ || k >= dim_)
    throw input_error("LieAlgebra::set_bracket: index out of range");
  if (i == j) throw input_error("LieAlgebra::set_bracket: [e_i,e_i] must vanish");
  c_[i](j, k) = coeff;
  c_[j](i, k) = -coeff;
}

Vec LieAlgebra::basis(Eigen::Index i) const {
  Vec v = Vec::Zero(dim_);
  v[i] = 1.0;
  return v;
}

Eigen::Index LieAlgebra::label_index(const std::string& label) const {
  for (Eigen::Index i = 0; i < dim_; ++i)
    if (labels_[i] == label) return i;
  throw input_error("unknown basis label '" + label + "'");
}

Vec bracket(const LieAlgebra& a, const Vec& x, const Vec& y) {
  if (x.size() != a.dim() || y.size() != a.dim())
    throw input_error("bracket: coordinate length mismatch");
  Vec out = Vec::Zero(a.dim());
  for (Eigen::Index i = 0; i < a.dim(); ++i) {
    if (x[i] == 0.0) continue;
    for (Eigen::Index j = 0; j < a.dim(); ++j) {
      if (y[j] == 0.0) continue;
      for (Eigen::Index k = 0; k < a.dim(); ++k) out[k] += x[i] * y[j] * a.c(i, j, k);
    }
  }
  return out;
}

AlgebraReport validate(const LieAlgebra& a, double tol) {
  AlgebraReport r;
  const Eigen::Index d = a.dim();
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j)
      for (Eigen::Index k = 0; k < d; ++k)
        r.antisymmetry_residual =
            std::max(r.antisymmetry_residual, std::abs(a.c(i, j, k) + a.c(j, i, k)));
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j)
      for (Eigen::Index k = 0; k < d; ++k)
        for (Eigen::Index l = 0; l < d; ++l) {
          double s = 0.0;
          for (Eigen::Index m = 0; m < d; ++m)
            s += a.c(i, j, m) * a.c(m, k, l) + a.c(j, k, m) * a.c(m, i, l) +
                 a.c(k, i, m) * a.c(m, j, l);
          r.jacobi_residual = std::max(r.jacobi_residual, std::abs(s));
        }
  r.pass = r.antisymmetry_residual < tol && r.jacobi_residual < tol;
  return r;
}

Mat ad_matrix(const LieAlgebra& a, const Vec& x) {
  if (x.size() != a.dim()) throw input_error("ad_matrix: coordinate length mismatch");
  Mat m = Mat::Zero(a.dim(), a.dim());
  for (Eigen::Index i = 0; i < a.dim(); ++i) {
    if (x[i] == 0.0) continue;
    for (Eigen::Index j = 0; j < a.dim(); ++j)
      for (Eigen::Index k = 0; k < a.dim(); ++k) m(k, j) += x[i] * a.c(i, j, k);
  }
  return m;
}

BilinearForm::BilinearForm(Mat gram) : gram_(std::move(gram)) {
  if (gram_.rows() != gram_.cols()) throw form_error("BilinearForm: Gram matrix must be square");
  if (gram_ != gram_.transpose()) throw form_error("BilinearForm: Gram matrix must be symmetric");
  lu_ = Eigen::PartialPivLU<Mat>(gram_);
  if (std::abs(gram_.determinant()) <= 1e-12)
    throw form_error("BilinearForm: Gram matrix is singular");
}

Subspace make_subspace(const Mat& basis, const Mat& complement_basis) {
  const Eigen::Index d = basis.rows();
  const Eigen::Index k = basis.cols();
  if (complement_basis.rows() != d || k + complement_basis.cols() != d)
    throw input_error("make_subspace: basis and complement must span the ambient space");
  Mat t(d, d);
  t << basis, complement_basis;
  Eigen::PartialPivLU<Mat> lu(t);
  if (std::abs(lu.determinant()) < 1e-12)
    throw input_error("make_subspace: basis + complement is rank deficient");
  Mat sel = Mat::Zero(d, d);
  sel.topLeftCorner(k, k).setIdentity();
  Subspace s;
  s.basis_matrix = basis;
  s.projector = t * sel * lu.inverse();
  return s;
}

namespace {

// Canonical (RREF-style) row reduction of the columns of `cols`, so that
// axis-aligned subspaces come out as signed unit vectors.
Mat canonical_basis(Mat cols) {
  const Eigen::Index d = cols.rows();
  const Eigen::Index k = cols.cols();
  Mat m = cols.transpose();  // k x d, rows are basis vectors
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < d && row < k; ++col) {
    Eigen::Index piv = -1;
    double best = 1e-10;
    for (Eigen::Index r = row; r < k; ++r)
      if (std::abs(m(r, col)) > best) {
        best = std::abs(m(r, col));
        piv = r;
      }
    if (piv < 0) continue;
    m.row(piv).swap(m.row(row));
    m.row(row) /= m(row, col);
    for (Eigen::Index r = 0; r < k; ++r)
      if (r != row && m(r, col) != 0.0) m.row(r) -= m(r, col) * m.row(row);
    ++row;
  }
  for (Eigen::Index r = 0; r < k; ++r)
    for (Eigen::Index ccol = 0; ccol < d; ++ccol)
      if (std::abs(m(r, ccol)) < 1e-13) m(r, ccol) = 0.0;
  return m.transpose();
}

// Null space of M (SVD, threshold 1e-10 * sigma_max), canonicalized.
Mat null_space(const Mat& m) {
  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double thresh = sv.size() ? 1e-10 * sv(0) : 0.0;
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > thresh) ++rank;
  return canonical_basis(svd.matrixV().rightCols(m.cols() - rank));
}

Mat selection(const std::vector<Eigen::Index>& idx, Eigen::Index d) {
  Mat e = Mat::Zero(d, Eigen::Index(idx.size()));
  for (Eigen::Index j = 0; j < Eigen::Index(idx.size()); ++j) e(idx[j], j) = 1.0;
  return e;
}

}  // namespace

SplitDoubleAlgebra::SplitDoubleAlgebra(LieAlgebra algebra, BilinearForm form,
                                       std::vector<Eigen::Index> plus,
                                       std::vector<Eigen::Index> minus)
    : algebra_(std::move(algebra)),
      form_(std::move(form)),
      plus_(std::move(plus)),
      minus_(std::move(minus)) {
  const Eigen::Index d = algebra_.dim();
  if (form_.gram().rows() != d) throw input_error("SplitDoubleAlgebra: form dimension mismatch");
  std::vector<bool> seen(size_t(d), false);
  for (Eigen::Index i : plus_) {
    if (i < 0 || i >= d || seen[size_t(i)]) throw input_error("split: bad plus index list");
    seen[size_t(i)] = true;
  }
  for (Eigen::Index i : minus_) {
    if (i < 0 || i >= d || seen[size_t(i)]) throw input_error("split: bad minus index list");
    seen[size_t(i)] = true;
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end())
    throw input_error("split: plus and minus must partition the basis");

  const Mat ep = selection(plus_, d);
  const Mat em = selection(minus_, d);
  gplus_ = make_subspace(ep, em);
  gminus_ = make_subspace(em, ep);

  // Annihilators by null-space extraction from B restricted to g+/-.
  const Mat pperp = null_space(ep.transpose() * form_.gram());
  const Mat mperp = null_space(em.transpose() * form_.gram());
  if (pperp.cols() + mperp.cols() != d)
    throw input_error("split: annihilators do not complement (degenerate restriction)");
  gplus_perp_ = make_subspace(pperp, mperp);
  gminus_perp_ = make_subspace(mperp, pperp);
}

SplitReport SplitDoubleAlgebra::validate_split(double tol) const {
  SplitReport r;
  const Eigen::Index d = dim();
  auto closure = [&](const std::vector<Eigen::Index>& idx, const Subspace& sub) {
    double worst = 0.0;
    for (Eigen::Index i : idx)
      for (Eigen::Index j : idx) {
        const Vec b = bracket(algebra_, algebra_.basis(i), algebra_.basis(j));
        worst = std::max(worst, sub.membership_residual(b));
      }
    return worst;
  };
  r.plus_closure = closure(plus_, gplus_);
  r.minus_closure = closure(minus_, gminus_);
  Mat stacked(d, gplus_perp_.rank() + gminus_perp_.rank());
  stacked << gplus_perp_.basis_matrix, gminus_perp_.basis_matrix;
  r.perp_rank_ok = Eigen::FullPivLU<Mat>(stacked).rank() == d;
  const Mat sum = gplus_perp_.projector + gminus_perp_.projector - Mat::Identity(d, d);
  const Mat idem = gplus_perp_.projector * gplus_perp_.projector - gplus_perp_.projector;
  r.projector_residual = std::max(inf_norm(sum), inf_norm(idem));
  r.pass = r.plus_closure < tol && r.minus_closure < tol && r.perp_rank_ok &&
           r.projector_residual < tol;
  return r;
}

Mat tau_ad_matrix(const SplitDoubleAlgebra& s, const Vec& x) {
  // (ad^tau_X Z, Y) = -(Z, [X, Y])  =>  ad^tau_X = -B^{-1} ad_X^T B.
  return -s.form().lu().solve(ad_matrix(s.algebra(), x).transpose() * s.form().gram());
}

Vec tau_ad(const SplitDoubleAlgebra& s, const Vec& x, const Vec& z) {
  if (x.size() != s.dim() || z.size() != s.dim())
    throw input_error("tau_ad: coordinate length mismatch");
  return -s.form().lu().solve(ad_matrix(s.algebra(), x).transpose() * (s.form().gram() * z));
}

Mat tau_group_matrix(const SplitDoubleAlgebra& s, const Mat& ad_g) {
  if (ad_g.rows() != s.dim() || ad_g.cols() != s.dim())
    throw input_error("tau_group: adjoint matrix dimension mismatch");
  Eigen::PartialPivLU<Mat> lu(ad_g.transpose());
  if (std::abs(lu.determinant()) < 1e-14) throw form_error("tau_group: singular adjoint matrix");
  // tau_g = B^{-1} (Ad_{g^{-1}})^T B = B^{-1} (Ad_g^T)^{-1} B.
  return s.form().lu().solve(lu.solve(s.form().gram()).eval());
}

Vec tau_group(const SplitDoubleAlgebra& s, const Mat& ad_g, const Vec& x) {
  return tau_group_matrix(s, ad_g) * x;
}

Vec tilde_tau(const SplitDoubleAlgebra& s, Side side, const Mat& ad_acting, const Vec& z_perp,
              double membership_tol) {
  const Subspace& perp = side == Side::plus ? s.gplus_perp() : s.gminus_perp();
  if (perp.membership_residual(z_perp) > membership_tol)
    throw input_error("tilde_tau: argument lies outside the annihilator subspace");
  return perp.projector * tau_group(s, ad_acting, z_perp);
}

double orbit_symplectic(const SplitDoubleAlgebra& s, const Mat& ad_g, const Vec& x, const Vec& y,
                        const Vec& z) {
  return s.form().pair(tau_group(s, ad_g, x), bracket(s.algebra(), y, z));
}

double antihomomorphism_residual(const SplitDoubleAlgebra& s, const Vec& x, const Vec& y) {
  // The defining relation forces ad^tau_{[X,Y]} = [ad^tau_X, ad^tau_Y]
  // (plug the relation in twice and use Jacobi), so the defect of the
  // homomorphism property is what can and must vanish.
  const Mat lhs = tau_ad_matrix(s, bracket(s.algebra(), x, y));
  const Mat tx = tau_ad_matrix(s, x);
  const Mat ty = tau_ad_matrix(s, y);
  return inf_norm(Mat(lhs - (tx * ty - ty * tx)));
}

}  // namespace taulift
