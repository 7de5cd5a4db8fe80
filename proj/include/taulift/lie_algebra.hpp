#pragma once

#include <string>
#include <vector>

#include "taulift/types.hpp"

namespace taulift {

/// Structure-constant Lie algebra: [e_i, e_j] = sum_k c[i][j][k] e_k.
/// Constants are stored dense through the adjoint slices ad_i = ad_{e_i}.
class LieAlgebra {
 public:
  // Builder: set_bracket writes both orientations so antisymmetry holds by
  // construction. finalize() freezes the adjoint slices.
  LieAlgebra(Eigen::Index dim, std::vector<std::string> labels);
  // Raw-tensor constructor: c_slices[i](j,k) = c[i][j][k]. Stored as given;
  // validate() reports antisymmetry/Jacobi residuals.
  LieAlgebra(std::vector<Mat> c_slices, std::vector<std::string> labels);

  void set_bracket(Eigen::Index i, Eigen::Index j, Eigen::Index k, double coeff);

  Eigen::Index dim() const { return dim_; }
  const std::vector<std::string>& labels() const { return labels_; }
  double c(Eigen::Index i, Eigen::Index j, Eigen::Index k) const { return c_[i](j, k); }

  Vec basis(Eigen::Index i) const;
  Eigen::Index label_index(const std::string& label) const;  // throws input_error

 private:
  Eigen::Index dim_;
  std::vector<std::string> labels_;
  std::vector<Mat> c_;  // c_[i](j,k) = c[i][j][k]
};

struct AlgebraReport {
  double antisymmetry_residual = 0.0;
  double jacobi_residual = 0.0;
  bool pass = false;
};

Vec bracket(const LieAlgebra& a, const Vec& x, const Vec& y);
AlgebraReport validate(const LieAlgebra& a, double tol = 1e-12);
Mat ad_matrix(const LieAlgebra& a, const Vec& x);

/// Symmetric nondegenerate Gram matrix; realizes (X,Y)_g = X^T B Y and the
/// musical maps psi: g -> g*, psi_bar = psi^{-1}.
class BilinearForm {
 public:
  explicit BilinearForm(Mat gram);

  const Mat& gram() const { return gram_; }
  double pair(const Vec& x, const Vec& y) const { return x.dot(gram_ * y); }
  Vec musical(const Vec& x) const { return gram_ * x; }
  Vec unmusical(const Vec& phi) const { return lu_.solve(phi); }
  const Eigen::PartialPivLU<Mat>& lu() const { return lu_; }

 private:
  Mat gram_;
  Eigen::PartialPivLU<Mat> lu_;
};

/// Subspace of R^dim with a projector along a declared complement.
struct Subspace {
  Mat basis_matrix;  // dim x k
  Mat projector;     // dim x dim, projector onto the span along the complement

  Eigen::Index dim() const { return basis_matrix.rows(); }
  Eigen::Index rank() const { return basis_matrix.cols(); }
  double membership_residual(const Vec& v) const { return inf_norm(Vec(projector * v - v)); }
};

Subspace make_subspace(const Mat& basis, const Mat& complement_basis);

struct SplitReport {
  double plus_closure = 0.0, minus_closure = 0.0;
  double perp_rank_ok = false;
  double projector_residual = 0.0;
  bool pass = false;
};

/// g together with the subalgebra split g = g+ (+) g- and the derived
/// annihilator decomposition g = g+perp (+) g-perp.
class SplitDoubleAlgebra {
 public:
  SplitDoubleAlgebra(LieAlgebra algebra, BilinearForm form,
                     std::vector<Eigen::Index> plus, std::vector<Eigen::Index> minus);

  const LieAlgebra& algebra() const { return algebra_; }
  const BilinearForm& form() const { return form_; }
  Eigen::Index dim() const { return algebra_.dim(); }
  const std::vector<Eigen::Index>& plus_indices() const { return plus_; }
  const std::vector<Eigen::Index>& minus_indices() const { return minus_; }

  const Subspace& gplus() const { return gplus_; }
  const Subspace& gminus() const { return gminus_; }
  const Subspace& gplus_perp() const { return gplus_perp_; }
  const Subspace& gminus_perp() const { return gminus_perp_; }

  SplitReport validate_split(double tol = 1e-12) const;

 private:
  LieAlgebra algebra_;
  BilinearForm form_;
  std::vector<Eigen::Index> plus_, minus_;
  Subspace gplus_, gminus_, gplus_perp_, gminus_perp_;
};

enum class Side { plus, minus };
inline Side opposite(Side s) { return s == Side::plus ? Side::minus : Side::plus; }

// tau-action machinery (the bilinear form need not be Ad-invariant).
Vec tau_ad(const SplitDoubleAlgebra& s, const Vec& x, const Vec& z);
Mat tau_ad_matrix(const SplitDoubleAlgebra& s, const Vec& x);
// tau_g X given the adjoint matrix of g; reduces to Ad_g for invariant forms.
Vec tau_group(const SplitDoubleAlgebra& s, const Mat& ad_g, const Vec& x);
Mat tau_group_matrix(const SplitDoubleAlgebra& s, const Mat& ad_g);
// Crossed action of G-/G+ on the annihilator of the other factor:
// tilde_tau_{h}(Z) = Pi_{g(side)perp}(tau_h Z), Z in g(side)perp.
Vec tilde_tau(const SplitDoubleAlgebra& s, Side side, const Mat& ad_acting, const Vec& z_perp,
              double membership_tol = 1e-10);
// Orbit symplectic form value (tau(g)X, [Y,Z])_g.
double orbit_symplectic(const SplitDoubleAlgebra& s, const Mat& ad_g, const Vec& x, const Vec& y,
                        const Vec& z);
// || ad^tau_{[X,Y]} + [ad^tau_X, ad^tau_Y] ||_inf  (antihomomorphism defect).
double antihomomorphism_residual(const SplitDoubleAlgebra& s, const Vec& x, const Vec& y);

}  // namespace taulift
