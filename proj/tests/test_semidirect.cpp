#include "helpers.hpp"

using namespace taulift;

TEST_CASE("h_bracket fixtures") {
  const auto& h3 = *load("nilpotent3").h;
  // [(e2,0),(0,e1)] = (0,-e4)
  HVector r = h_bracket(h3, slot1(4, 1), slot2(4, 0));
  CHECK(inf_norm(r.first) == 0.0);
  CHECK(inf_norm(Vec(r.second + unit(4, 3))) == 0.0);
  // [(e4,0),(e1,0)] = (e2,0)
  r = h_bracket(h3, slot1(4, 3), slot1(4, 0));
  CHECK(inf_norm(Vec(r.first - unit(4, 1))) == 0.0);
  // self-bracket vanishes
  Sampler s(21);
  const HVector v{s.vec(4), s.vec(4)};
  CHECK(inf_norm(h_bracket(h3, v, v)) == 0.0);
  // a6_34: [(e6,0),(0,e5)] = (0,e4)
  const auto& h6 = *load("a6_34").h;
  r = h_bracket(h6, slot1(6, 5), slot2(6, 4));
  CHECK(inf_norm(r.first) == 0.0);
  CHECK(inf_norm(Vec(r.second - unit(6, 3))) == 0.0);
}

TEST_CASE("h_form fixtures") {
  const auto& h3 = *load("nilpotent3").h;
  CHECK(h_form(h3, slot1(4, 1), slot2(4, 1)) == 1.0);   // ((e2,0),(0,e2)) = 1
  CHECK(h_form(h3, slot1(4, 3), slot2(4, 3)) == 1.0);   // ((e4,0),(0,e4)) = 1
  CHECK(h_form(h3, slot1(4, 0), slot2(4, 2)) == -1.0);  // ((e1,0),(0,e3)) = -1
  Sampler s(22);
  CHECK(h_form(h3, hv(s.vec(4), Vec::Zero(4)), hv(s.vec(4), Vec::Zero(4))) == 0.0);
}

TEST_CASE("h Jacobi identity on all basis triples") {
  for (const std::string& name : catalog_names()) {
    const auto& h = *load(name).h;
    const Eigen::Index n = h.dim_h();
    auto basis = [&](Eigen::Index i) {
      Vec v = Vec::Zero(n);
      v[i] = 1.0;
      return HVector::from_stacked(v);
    };
    double worst = 0.0;
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index k = 0; k < n; ++k) {
          const HVector r = h_bracket(h, basis(i), h_bracket(h, basis(j), basis(k))) +
                            h_bracket(h, basis(j), h_bracket(h, basis(k), basis(i))) +
                            h_bracket(h, basis(k), h_bracket(h, basis(i), basis(j)));
          worst = std::max(worst, inf_norm(r));
        }
    CHECK(worst < 1e-12);
  }
}

TEST_CASE("ad^h-invariance of the lifted form") {
  SemidirectAlgebra ab(abelian2());
  CHECK(verify_ad_invariance(ab, 50) == 0.0);
  CHECK(verify_ad_invariance(*load("nilpotent3").h, 100) < 1e-12);
  CHECK(verify_ad_invariance(*load("sl2c").h, 100) < 1e-10);
  CHECK(verify_ad_invariance(*load("a6_34").h, 100) < 1e-10);
}

TEST_CASE("manin_decompose: bases and reports") {
  const auto& h3 = *load("nilpotent3").h;
  Mat bp, bm;
  const ManinReport r = manin_decompose(h3, &bp, &bm);
  CHECK(r.pass);
  CHECK(r.isotropy_plus == 0.0);
  CHECK(r.isotropy_minus == 0.0);
  // h+ = span{(e2,0),(e3,0),(e4,0),(0,e3)}
  Mat expected_p = Mat::Zero(8, 4);
  expected_p(1, 0) = expected_p(2, 1) = expected_p(3, 2) = 1.0;
  expected_p(4 + 2, 3) = 1.0;
  CHECK(inf_norm(Mat(bp - expected_p)) == 0.0);
  // h- = span{(e1,0),(0,e1),(0,e2),(0,e4)}
  Mat expected_m = Mat::Zero(8, 4);
  expected_m(0, 0) = 1.0;
  expected_m(4 + 0, 1) = expected_m(4 + 1, 2) = expected_m(4 + 3, 3) = 1.0;
  CHECK(inf_norm(Mat(bm - expected_m)) == 0.0);

  // sl2c: h+ = su2 (+) b, h- = b (+) su2
  const auto& h2 = *load("sl2c").h;
  const Mat& hp = h2.h_basis(Side::plus);
  for (Eigen::Index j = 0; j < 3; ++j) {
    CHECK(hp(j, j) == 1.0);           // su2 block in the first slot
    CHECK(hp(6 + 3 + j, 3 + j) == 1.0);  // b block in the second slot
  }
  CHECK(manin_decompose(h2).pass);
  CHECK(manin_decompose(*load("a6_34").h).pass);
}

TEST_CASE("projectors of h") {
  for (const std::string& name : catalog_names()) {
    const auto& h = *load(name).h;
    const Mat& pp = h.h_projector(Side::plus);
    const Mat& pm = h.h_projector(Side::minus);
    CHECK(inf_norm(Mat(pp * pp - pp)) < 1e-12);
    CHECK(inf_norm(Mat(pp + pm - Mat::Identity(h.dim_h(), h.dim_h()))) < 1e-12);
    // h-bracket of side elements stays on the side
    Sampler s(23);
    for (int k = 0; k < 20; ++k) {
      const HVector a = h.project(Side::plus, HVector{s.vec(h.dim_g()), s.vec(h.dim_g())});
      const HVector b = h.project(Side::plus, HVector{s.vec(h.dim_g()), s.vec(h.dim_g())});
      CHECK(h.h_membership_residual(Side::plus, h_bracket(h, a, b)) < 1e-12);
    }
  }
}

TEST_CASE("gamma and its inverse") {
  const auto& h3 = *load("nilpotent3").h;
  CHECK(inf_norm(gamma(h3, HVector::zero(4))) == 0.0);
  // gamma((e2,0)) pairs nontrivially only with (0,e2)
  const Vec dual = gamma(h3, slot1(4, 1));
  for (Eigen::Index i = 0; i < 8; ++i) {
    Vec e = Vec::Zero(8);
    e[i] = 1.0;
    const double val = dual.dot(e);
    if (i == 4 + 1)
      CHECK(val == 1.0);
    else
      CHECK(val == 0.0);
  }
  Sampler s(24);
  for (int k = 0; k < 100; ++k) {
    const HVector v{s.vec(4), s.vec(4)};
    CHECK(inf_norm(gamma_inverse(h3, gamma(h3, v)) - v) < 1e-12);
  }
}
