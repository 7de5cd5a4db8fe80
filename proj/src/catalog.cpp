#include "taulift/catalog.hpp"

#include <cmath>
#include <complex>
#include <map>

#include "taulift/matfun.hpp"

namespace taulift {

namespace {

Mat eij(Eigen::Index n, Eigen::Index i, Eigen::Index j, double v = 1.0) {
  Mat m = Mat::Zero(n, n);
  m(i - 1, j - 1) = v;  // 1-based like the tables
  return m;
}

// ---------------------------------------------------------------- nilpotent3

ExampleDefinition make_nilpotent3() {
  LieAlgebra a(4, {"e1", "e2", "e3", "e4"});
  a.set_bracket(3, 0, 1, 1.0);  // [e4,e1] = e2
  a.set_bracket(3, 1, 2, 1.0);  // [e4,e2] = e3
  Mat b = Mat::Zero(4, 4);
  b(1, 1) = 1.0;
  b(3, 3) = 1.0;
  b(0, 2) = b(2, 0) = -1.0;
  SplitDoubleAlgebra split(std::move(a), BilinearForm(b), {1, 2, 3}, {0});

  std::vector<Mat> rho{eij(4, 3, 4), eij(4, 2, 4), eij(4, 1, 4), eij(4, 1, 2) + eij(4, 2, 3)};

  ExampleDefinition ex;
  ex.name = "nilpotent3";
  ex.h = std::make_shared<SemidirectAlgebra>(std::move(split));
  ex.rep = std::make_shared<MatrixRep>(4, std::move(rho));

  auto rep = ex.rep;
  // log of a unipotent matrix is exact; factor exponents follow from BCH:
  // exp(w) = exp((w2 - w1 w4/2) e2 + (w3 - w1 w4^2/12) e3 + w4 e4) exp(w1 e1).
  ex.factorization.log_coords = [rep](const Mat& g) { return rep->coords(logm(g)); };
  ex.factorization.closed_form = [rep](const Mat& g) {
    const Vec w = rep->coords(logm(g));
    Vec wp = Vec::Zero(4), wm = Vec::Zero(4);
    wp[1] = w[1] - 0.5 * w[0] * w[3];
    wp[2] = w[2] - w[0] * w[3] * w[3] / 12.0;
    wp[3] = w[3];
    wm[0] = w[0];
    return std::make_pair(expm(rep->of(wp)), expm(rep->of(wm)));
  };
  ex.hamiltonian = quadratic_pairing(*ex.h);
  ex.side = Side::plus;

  // admissible motion: any K- with vanishing (0,e1)-component
  ex.default_K = HVector{Vec::Zero(4), Vec::Zero(4)};
  ex.default_K.first[0] = 0.8;    // x1 e1
  ex.default_K.second[1] = 0.7;   // y2 e2
  ex.default_K.second[3] = 0.2;   // y4 e4
  HVector x0 = HVector::zero(4);
  x0.first[1] = -0.3;   // x2
  x0.first[2] = 0.55;   // x3
  x0.first[3] = 1.1;    // x4
  x0.second[2] = -0.45; // y3
  ex.default_z0 = x0 + ex.default_K;
  ex.default_times = TimeGrid{0.0, 2.0, 200};

  ex.reference_solution = [](const HVector& z0, double t) {
    HVector z = z0;
    z.first[1] = z0.first[1] - t * z0.first[0] * z0.first[3];    // x2
    z.second[2] = z0.second[2] - t * z0.first[3] * z0.second[1]; // y3
    return z;
  };
  return ex;
}

// ------------------------------------------------------------------- a6_34

Mat a6_group(double z, double x, double y, double p, double q, double th) {
  Mat m = Mat::Identity(6, 6);
  m(0, 1) = p;
  m(0, 5) = q;
  m(1, 5) = th;
  m(2, 3) = x * std::sin(th) + y * std::cos(th);
  m(2, 4) = x * std::cos(th) - y * std::sin(th);
  m(2, 5) = z;
  m(3, 3) = std::cos(th);
  m(3, 4) = -std::sin(th);
  m(4, 3) = std::sin(th);
  m(4, 4) = std::cos(th);
  m(3, 5) = x;
  m(4, 5) = -y;
  return m;
}

struct A6Coords {
  double z, x, y, p, q, th;
};

A6Coords a6_read(const Mat& g) {
  return {g(2, 5), g(3, 5), -g(4, 5), g(0, 1), g(0, 5), std::atan2(g(4, 3), g(3, 3))};
}

// Exponential coordinates of g(z,x,y,p,q,theta). The theta-singular factors
// get a series fallback below |theta| = 1e-4.
Vec a6_log(const Mat& g) {
  const A6Coords c = a6_read(g);
  double phic, corr;  // (th/2) cot(th/2) and (th - sin th)/th^2
  if (std::abs(c.th) < 1e-4) {
    const double t2 = c.th * c.th;
    phic = 1.0 - t2 / 12.0 - t2 * t2 / 720.0;
    corr = c.th / 6.0 - c.th * t2 / 120.0;
  } else {
    phic = 0.5 * c.th * std::sin(c.th) / (1.0 - std::cos(c.th));
    corr = (c.th - std::sin(c.th)) / (c.th * c.th);
  }
  Vec w(6);
  w[1] = phic * c.x - 0.5 * c.th * c.y;
  w[2] = 0.5 * c.th * c.x + phic * c.y;
  w[0] = -0.5 * c.z + 0.5 * (w[1] * w[1] + w[2] * w[2]) * corr;
  w[3] = c.p;
  w[4] = c.q - 0.5 * c.p * c.th;
  w[5] = c.th;
  return w;
}

ExampleDefinition make_a6_34() {
  LieAlgebra a(6, {"e1", "e2", "e3", "e4", "e5", "e6"});
  a.set_bracket(1, 2, 0, 1.0);   // [e2,e3] = e1
  a.set_bracket(1, 5, 2, 1.0);   // [e2,e6] = e3
  a.set_bracket(2, 5, 1, -1.0);  // [e3,e6] = -e2
  a.set_bracket(3, 5, 4, 1.0);   // [e4,e6] = e5
  Mat b = Mat::Zero(6, 6);
  b(1, 1) = b(2, 2) = b(3, 3) = b(4, 4) = 1.0;
  b(0, 5) = b(5, 0) = 1.0;
  SplitDoubleAlgebra split(std::move(a), BilinearForm(b), {0, 1, 2}, {3, 4, 5});

  // e2 carries E46 in addition to E35 (required by [e2,e3] = e1 and by the
  // group parametrization).
  std::vector<Mat> rho{eij(6, 3, 6, -2.0),
                       eij(6, 3, 5) + eij(6, 4, 6),
                       eij(6, 3, 4) - eij(6, 5, 6),
                       eij(6, 1, 2),
                       eij(6, 1, 6),
                       eij(6, 2, 6) + eij(6, 5, 4) - eij(6, 4, 5)};

  ExampleDefinition ex;
  ex.name = "a6_34";
  ex.h = std::make_shared<SemidirectAlgebra>(std::move(split));
  ex.rep = std::make_shared<MatrixRep>(6, std::move(rho));
  ex.factorization.closed_form = [](const Mat& g) {
    const A6Coords c = a6_read(g);
    return std::make_pair(a6_group(c.z, c.x, c.y, 0, 0, 0), a6_group(0, 0, 0, c.p, c.q, c.th));
  };
  ex.factorization.log_coords = [](const Mat& g) { return a6_log(g); };
  ex.hamiltonian = quadratic_pairing(*ex.h);
  ex.side = Side::plus;

  // shift K- in h- (first slot in g-, second in g-perp); x6' = 0 makes it a
  // character
  ex.default_K = HVector::zero(6);
  ex.default_K.first[3] = 0.3;    // x4
  ex.default_K.first[4] = -0.8;   // x5
  ex.default_K.first[5] = 1.2;    // x6
  ex.default_K.second[1] = -0.35; // x2'
  ex.default_K.second[2] = 0.25;  // x3'
  HVector x0 = HVector::zero(6);
  x0.first[0] = 0.4;    // x1
  x0.first[1] = 0.9;    // x2
  x0.first[2] = -0.6;   // x3
  x0.second[0] = 0.5;   // x1'
  x0.second[3] = 0.45;  // x4'
  x0.second[4] = 0.65;  // x5'
  ex.default_z0 = x0 + ex.default_K;
  ex.default_times = TimeGrid{0.0, 2.0, 200};

  ex.reference_solution = [](const HVector& z0, double t) {
    const double x20 = z0.first[1], x30 = z0.first[2], x40 = z0.first[3], x60 = z0.first[5];
    const double x1p0 = z0.second[0], x2p0 = z0.second[1], x3p0 = z0.second[2],
                 x4p0 = z0.second[3], x5p0 = z0.second[4];
    HVector z = z0;
    const double c = std::cos(t * x60), s = std::sin(t * x60);
    z.first[1] = x20 * c + x30 * s;
    z.first[2] = x30 * c - x20 * s;
    z.second[3] = x4p0 + t * x60 * x5p0;
    if (x60 != 0.0) {
      z.second[0] = (x1p0 - t * x40 * x5p0) -
                    (x2p0 * z.first[1] + x3p0 * z.first[2]) / x60 +
                    (x30 * x3p0 + x20 * x2p0) / x60;
    } else {
      z.second[0] = x1p0 + t * (x20 * x3p0 - x30 * x2p0 - x40 * x5p0);
    }
    return z;
  };
  return ex;
}

// -------------------------------------------------------------------- sl2c

using CMat = Eigen::Matrix2cd;

Mat realify(const CMat& m) {
  Mat r(4, 4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      const std::complex<double> v = m(i, j);
      r(2 * i, 2 * j) = v.real();
      r(2 * i, 2 * j + 1) = -v.imag();
      r(2 * i + 1, 2 * j) = v.imag();
      r(2 * i + 1, 2 * j + 1) = v.real();
    }
  return r;
}

CMat complexify(const Mat& r) {
  CMat m;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      m(i, j) = std::complex<double>(r(2 * i, 2 * j), r(2 * i + 1, 2 * j));
  return m;
}

ExampleDefinition make_sl2c() {
  // basis X1, X2, X3 (su(2)) and E, iE, H (upper-triangular b)
  LieAlgebra a(6, {"X1", "X2", "X3", "E", "iE", "H"});
  a.set_bracket(0, 1, 2, -2.0);  // [X1,X2] = -2 X3
  a.set_bracket(0, 2, 1, 2.0);   // [X1,X3] = 2 X2
  a.set_bracket(1, 2, 0, -2.0);  // [X2,X3] = -2 X1
  a.set_bracket(0, 3, 2, -1.0);  // [X1,E] = -X3
  a.set_bracket(0, 4, 5, 1.0);   // [X1,iE] = H
  a.set_bracket(0, 5, 0, 2.0);   // [X1,H] = 2 X1 - 4 iE
  a.set_bracket(0, 5, 4, -4.0);
  a.set_bracket(1, 3, 5, 1.0);   // [X2,E] = H
  a.set_bracket(1, 4, 2, 1.0);   // [X2,iE] = X3
  a.set_bracket(1, 5, 1, 2.0);   // [X2,H] = 2 X2 - 4 E
  a.set_bracket(1, 5, 3, -4.0);
  a.set_bracket(2, 3, 4, 2.0);   // [X3,E] = 2 iE
  a.set_bracket(2, 4, 3, -2.0);  // [X3,iE] = -2 E
  a.set_bracket(3, 5, 3, -2.0);  // [E,H] = -2 E
  a.set_bracket(4, 5, 4, -2.0);  // [iE,H] = -2 iE
  // inner product g(V,W) = k0(V, EW), orthogonal basis with squared norms
  // (1,1,2,1,1,2)
  Mat b = Mat::Zero(6, 6);
  b.diagonal() << 1, 1, 2, 1, 1, 2;
  SplitDoubleAlgebra split(std::move(a), BilinearForm(b), {0, 1, 2}, {3, 4, 5});

  const std::complex<double> i1(0.0, 1.0);
  CMat x1, x2, x3, e, ie, hh;
  x1 << 0, i1, i1, 0;
  x2 << 0, 1, -1, 0;
  x3 << i1, 0, 0, -i1;
  e << 0, 1, 0, 0;
  ie << 0, i1, 0, 0;
  hh << 1, 0, 0, -1;
  std::vector<Mat> rho{realify(x1), realify(x2), realify(x3),
                       realify(e), realify(ie), realify(hh)};

  ExampleDefinition ex;
  ex.name = "sl2c";
  ex.h = std::make_shared<SemidirectAlgebra>(std::move(split));
  ex.rep = std::make_shared<MatrixRep>(4, std::move(rho));
  // Iwasawa SL(2,C) = SU(2) B
  ex.factorization.closed_form = [](const Mat& g) {
    const CMat gc = complexify(g);
    const std::complex<double> mu = gc(0, 0), nu = gc(0, 1), rho_ = gc(1, 0), sig = gc(1, 1);
    const double r = std::sqrt(std::norm(mu) + std::norm(rho_));
    CMat gp, gm;
    gp << mu / r, -std::conj(rho_) / r, rho_ / r, std::conj(mu) / r;
    gm << r, (std::conj(mu) * nu + std::conj(rho_) * sig) / r, 0, 1.0 / r;
    return std::make_pair(realify(gp), realify(gm));
  };
  // Legendre map: coordinate projection onto the X3/H block of each slot;
  // its -ad_{Pi_- L} flow is the linear system this example integrates
  HamiltonianSpec ham;
  ham.evaluate = [](const HVector& v) {
    return 2.0 * (v.first[5] * v.second[5] + v.first[2] * v.second[2]);
  };
  ham.legendre = [](const HVector& v) {
    HVector l = HVector::zero(6);
    l.first[2] = v.first[2];
    l.first[5] = v.first[5];
    l.second[2] = v.second[2];
    l.second[5] = v.second[5];
    return l;
  };
  ham.ad_invariant = false;
  ex.hamiltonian = ham;
  ex.side = Side::minus;

  // mirrored slice: K+ = (k3 X3, kH H) in h+
  ex.default_K = HVector::zero(6);
  ex.default_K.first[2] = 0.6;    // k3
  ex.default_K.second[5] = -0.4;  // kH
  HVector x0 = HVector::zero(6);
  x0.first[3] = 0.8;    // xE
  x0.first[4] = -0.5;   // x(iE)
  x0.first[5] = 0.35;   // xH
  x0.second[0] = 0.6;   // x1
  x0.second[1] = -0.7;  // x2
  x0.second[2] = 0.45;  // x3
  ex.default_z0 = x0 + ex.default_K;
  ex.default_times = TimeGrid{0.0, 2.0, 200};

  // closed forms: exact solution of that linear system
  ex.reference_is_closed_form = false;
  ex.reference_solution = [](const HVector& z0, double t) {
    const double al = 2.0 * z0.first[5];   // alpha = 2 xH0
    const double be = 2.0 * z0.second[2];  // beta = 2 x30
    const double dec = std::exp(-al * t);
    HVector z = z0;
    z.first[3] = z0.first[3] * dec;
    z.first[4] = z0.first[4] * dec;
    z.second[0] = (z0.second[0] - be * z0.first[3] * t) * dec;
    z.second[1] = (z0.second[1] + be * z0.first[4] * t) * dec;
    return z;
  };
  return ex;
}

}  // namespace

const ExampleDefinition& load(const std::string& name) {
  static const std::map<std::string, ExampleDefinition> catalog = [] {
    std::map<std::string, ExampleDefinition> m;
    m.emplace("nilpotent3", make_nilpotent3());
    m.emplace("a6_34", make_a6_34());
    m.emplace("sl2c", make_sl2c());
    return m;
  }();
  auto it = catalog.find(name);
  if (it == catalog.end()) throw input_error("unknown catalog example '" + name + "'");
  return it->second;
}

std::vector<std::string> catalog_names() { return {"nilpotent3", "a6_34", "sl2c"}; }

HVector reference_solution(const std::string& name, const HVector& z0, double t) {
  const ExampleDefinition& ex = load(name);
  const CharacterReport cr = character_check(*ex.h, ex.default_K, ex.side);
  (void)cr;
  // admissibility of the supplied z0: its shift part must pass the character
  // condition
  const HVector k = ex.h->project(opposite(ex.side), z0);
  const CharacterReport zcr = character_check(*ex.h, k, ex.side);
  if (!zcr.pass)
    throw input_error("reference_solution: inadmissible initial condition (character residual " +
                      format_double(zcr.residual) + ")");
  return ex.reference_solution(z0, t);
}

}  // namespace taulift
