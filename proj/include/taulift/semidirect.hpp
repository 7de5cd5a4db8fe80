#pragma once

#include "taulift/lie_algebra.hpp"

namespace taulift {

/// Element (X, Y) of h = g x g; first is the acting slot, second the
/// representation slot. Stored as two stacked g-coordinate blocks.
struct HVector {
  Vec first, second;

  HVector() = default;
  HVector(Vec f, Vec s) : first(std::move(f)), second(std::move(s)) {}
  static HVector zero(Eigen::Index dim) { return {Vec::Zero(dim), Vec::Zero(dim)}; }

  Vec stacked() const {
    Vec v(first.size() + second.size());
    v << first, second;
    return v;
  }
  static HVector from_stacked(const Vec& v) {
    const Eigen::Index d = v.size() / 2;
    return {v.head(d), v.tail(d)};
  }

  HVector operator+(const HVector& o) const { return {first + o.first, second + o.second}; }
  HVector operator-(const HVector& o) const { return {first - o.first, second - o.second}; }
  HVector operator*(double t) const { return {t * first, t * second}; }
};
inline HVector operator*(double t, const HVector& v) { return v * t; }
inline double inf_norm(const HVector& v) {
  return std::max(taulift::inf_norm(v.first), taulift::inf_norm(v.second));
}

struct ManinReport {
  double closure_plus = 0.0, closure_minus = 0.0;
  double isotropy_plus = 0.0, isotropy_minus = 0.0;
  bool gamma_rank_ok = false;
  bool pass = false;
};

/// The semidirect sum h = g x_tau g with its canonical ad-invariant pairing
/// and Manin decomposition h = h+ (+) h-, h+- = g+- x_tau g+-perp.
class SemidirectAlgebra {
 public:
  explicit SemidirectAlgebra(SplitDoubleAlgebra base);

  const SplitDoubleAlgebra& base() const { return base_; }
  Eigen::Index dim_g() const { return base_.dim(); }
  Eigen::Index dim_h() const { return 2 * base_.dim(); }

  // Manin basis of h(side): g(side) block first, then the annihilator block.
  // Columns are stacked 2*dim_g coordinates.
  const Mat& h_basis(Side side) const { return side == Side::plus ? hplus_ : hminus_; }
  // Projector onto h(side) along the opposite factor, block diagonal.
  const Mat& h_projector(Side side) const { return side == Side::plus ? pplus_ : pminus_; }
  HVector project(Side side, const HVector& v) const {
    return HVector::from_stacked(h_projector(side) * v.stacked());
  }
  double h_membership_residual(Side side, const HVector& v) const {
    return taulift::inf_norm(Vec(h_projector(side) * v.stacked() - v.stacked()));
  }
  // Gram matrix of (.,.)_h on stacked coordinates: [[0,B],[B,0]].
  const Mat& h_gram() const { return hgram_; }

  HVector basis_vector(Side side, Eigen::Index j) const {
    return HVector::from_stacked(h_basis(side).col(j));
  }

 private:
  SplitDoubleAlgebra base_;
  Mat hplus_, hminus_, pplus_, pminus_, hgram_;
};

HVector h_bracket(const SemidirectAlgebra& h, const HVector& a, const HVector& b);
double h_form(const SemidirectAlgebra& h, const HVector& a, const HVector& b);
// Matrix of ad^h_v on stacked coordinates.
Mat h_ad_matrix(const SemidirectAlgebra& h, const HVector& v);

// Max |([W,U],V)_h + (U,[W,V])_h| over `samples` seeded random triples.
double verify_ad_invariance(const SemidirectAlgebra& h, int samples, std::uint64_t seed = 42);

// Bases of h+ and h- with closure/isotropy residuals and the gamma rank check.
ManinReport manin_decompose(const SemidirectAlgebra& h, Mat* hplus_basis = nullptr,
                            Mat* hminus_basis = nullptr);

// gamma: h -> h*, the musical map of (.,.)_h on stacked coordinates.
Vec gamma(const SemidirectAlgebra& h, const HVector& v);
HVector gamma_inverse(const SemidirectAlgebra& h, const Vec& dual);

}  // namespace taulift
