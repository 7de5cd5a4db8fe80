#pragma once

#include <functional>
#include <optional>

#include "taulift/semidirect.hpp"

namespace taulift {

/// Faithful matrix representation of g: one rep_dim x rep_dim matrix per
/// basis element.
class MatrixRep {
 public:
  MatrixRep(Eigen::Index rep_dim, std::vector<Mat> rho);

  Eigen::Index rep_dim() const { return rep_dim_; }
  Eigen::Index algebra_dim() const { return Eigen::Index(rho_.size()); }
  const Mat& rho(Eigen::Index i) const { return rho_[i]; }
  Mat of(const Vec& x) const;
  // Least-squares coordinates of m in span{rho_i}; residual written if asked.
  Vec coords(const Mat& m, double* residual = nullptr) const;
  // Max over basis pairs of || rho([e_i,e_j]) - [rho_i, rho_j] ||_inf.
  double bracket_residual(const LieAlgebra& a) const;

 private:
  Eigen::Index rep_dim_;
  std::vector<Mat> rho_;
  Mat vec_basis_;  // rep_dim^2 x dim, flattened rho columns
  Eigen::ColPivHouseholderQR<Mat> qr_;
};

struct GroupElement {
  Mat m;

  explicit GroupElement(Mat mat) : m(std::move(mat)) {
    if (std::abs(m.determinant()) <= 1e-12)
      throw input_error("GroupElement: matrix is singular");
  }
  static GroupElement identity(Eigen::Index n) { return GroupElement(Mat::Identity(n, n)); }
  GroupElement inverse() const { return GroupElement(m.inverse()); }
};

/// Element (g, X) of H = G x_tau g.
struct HElement {
  GroupElement g;
  Vec x;

  HElement(GroupElement ge, Vec fiber) : g(std::move(ge)), x(std::move(fiber)) {}
  static HElement identity(Eigen::Index rep_dim, Eigen::Index alg_dim) {
    return {GroupElement::identity(rep_dim), Vec::Zero(alg_dim)};
  }
};

struct NewtonOptions {
  int max_iterations = 50;
  double tolerance = 1e-12;
};

/// How to split G = G+G-. A closed form (per catalog example) wins when
/// present; otherwise damped Newton on exponential coordinates of the second
/// kind, seeded at zero.
struct FactorizationStrategy {
  std::function<std::pair<Mat, Mat>(const Mat&)> closed_form;  // optional
  NewtonOptions newton;
  // Optional closed-form log coordinates (exp(rho(w)) = m); generic matrix
  // log is used when absent.
  std::function<Vec(const Mat&)> log_coords;
};

// Matrix of Ad_g on g-coordinates (column j = coords of g rho_j g^{-1}).
Mat adjoint(const MatrixRep& rep, const GroupElement& g, double tol = 1e-8);

HElement h_multiply(const SemidirectAlgebra& h, const MatrixRep& rep, const HElement& a,
                    const HElement& b);
HElement h_inverse(const SemidirectAlgebra& h, const MatrixRep& rep, const HElement& a);
// Exp.(t (X,Y)) = (e^{tX}, t phi(t ad^tau_X) Y).
HElement h_exp(const SemidirectAlgebra& h, const MatrixRep& rep, double t, const HVector& v);
// Ad^H_{(g,Z)}(X,Y) = (Ad_g X, tau_g(Y - ad^tau_X Z)).
HVector h_adjoint(const SemidirectAlgebra& h, const MatrixRep& rep, const HElement& a,
                  const HVector& v);

enum class FactorOrder { plus_minus, minus_plus };

// Group-level factorization g = g+ g- (or g = g- g+ for minus_plus).
std::pair<GroupElement, GroupElement> factorize_g(const FactorizationStrategy& strategy,
                                                  const SemidirectAlgebra& h,
                                                  const MatrixRep& rep, const GroupElement& g,
                                                  FactorOrder order = FactorOrder::plus_minus);

// H-level factorization (g,X) = h+ . h- (or h- . h+), returned in the order
// (plus factor, minus factor) regardless.
std::pair<HElement, HElement> factorize_h(const SemidirectAlgebra& h, const MatrixRep& rep,
                                          const FactorizationStrategy& strategy,
                                          const HElement& a,
                                          FactorOrder order = FactorOrder::plus_minus);

// Log coordinates of the group part: w with exp(rho(w)) = g.
Vec group_log(const MatrixRep& rep, const FactorizationStrategy& strategy, const GroupElement& g);

// Membership residual of g in G(side): projector defect of its log.
double group_membership_residual(const SemidirectAlgebra& h, const MatrixRep& rep,
                                 const FactorizationStrategy& strategy, const GroupElement& g,
                                 Side side);
double h_membership_residual(const SemidirectAlgebra& h, const MatrixRep& rep,
                             const FactorizationStrategy& strategy, const HElement& a, Side side);

// Dressing of `a` in H(side) by `b` in the opposite factor, through
// refactorization of (b.a) (side = plus) or (a.b) (side = minus).
HElement dressing(const SemidirectAlgebra& h, const MatrixRep& rep,
                  const FactorizationStrategy& strategy, Side side, const HElement& a,
                  const HElement& b);

/// Tangent vector at a point of H(side), reported as the derivative of the
/// group part's log coordinates together with the raw fiber derivative.
struct HTangent {
  Vec group_velocity;  // d/dt log-coords of the group part
  Vec fiber_velocity;  // d/dt fiber coordinates
};

// d/dt|_0 dressing(a, Exp.(t v)), 4th-order central differences.
HTangent dressing_infinitesimal(const SemidirectAlgebra& h, const MatrixRep& rep,
                                const FactorizationStrategy& strategy, Side side,
                                const HElement& a, const HVector& v, double step = 1e-3);

}  // namespace taulift
