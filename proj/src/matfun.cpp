#include "taulift/matfun.hpp"

#include <cmath>

namespace taulift {

bool is_nilpotent(const Mat& m) {
  Mat p = m;
  for (Eigen::Index k = 1; k <= m.rows() + 1; ++k) {
    if (p.isZero(0.0)) return true;
    p = p * m;
  }
  return false;
}

namespace {

Mat expm_series_exact(const Mat& a) {
  const Eigen::Index n = a.rows();
  Mat e = Mat::Identity(n, n);
  Mat term = Mat::Identity(n, n);
  for (Eigen::Index k = 1; k <= n + 1; ++k) {
    term = term * a / double(k);
    if (term.isZero(0.0)) break;
    e += term;
  }
  return e;
}

void pade13(const Mat& a, Mat& u, Mat& v) {
  static const double b[] = {64764752532480000., 32382376266240000., 7771770303897600.,
                             1187353796428800.,  129060195264000.,   10559470521600.,
                             670442572800.,      33522128640.,       1323241920.,
                             40840800.,          960960.,            16380.,
                             182.,               1.};
  const Eigen::Index n = a.rows();
  const Mat a2 = a * a;
  const Mat a4 = a2 * a2;
  const Mat a6 = a4 * a2;
  Mat tmp = a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2);
  tmp += b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * Mat::Identity(n, n);
  u = a * tmp;
  v = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2);
  v += b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * Mat::Identity(n, n);
}

}  // namespace

Mat expm(const Mat& a) {
  if (is_nilpotent(a)) return expm_series_exact(a);
  const double l1 = a.cwiseAbs().colwise().sum().maxCoeff();
  const double maxnorm = 5.371920351148152;
  int squarings = 0;
  Mat as = a;
  if (l1 > maxnorm) {
    squarings = std::max(0, int(std::ceil(std::log2(l1 / maxnorm))));
    as = a / std::ldexp(1.0, squarings);
  }
  Mat u, v;
  pade13(as, u, v);
  Mat r = (v - u).partialPivLu().solve(v + u);
  for (int i = 0; i < squarings; ++i) r = r * r;
  return r;
}

namespace {

// log(I + N) by the Mercator series; requires ||N|| < 1 (or N nilpotent).
Mat log_mercator(const Mat& n, bool exact) {
  const Eigen::Index d = n.rows();
  Mat l = Mat::Zero(d, d);
  Mat p = Mat::Identity(d, d);
  const int cap = exact ? int(d) + 1 : 200;
  for (int k = 1; k <= cap; ++k) {
    p = p * n;
    if (p.isZero(0.0)) break;
    l += (k % 2 ? 1.0 : -1.0) / double(k) * p;
    if (!exact && inf_norm(p) < 1e-18 * std::max(1.0, inf_norm(l))) break;
  }
  return l;
}

// Denman-Beavers square root iteration.
Mat sqrtm_db(const Mat& a) {
  Mat y = a, z = Mat::Identity(a.rows(), a.cols());
  for (int it = 0; it < 60; ++it) {
    const Mat yi = y.partialPivLu().solve(Mat::Identity(a.rows(), a.cols()));
    const Mat zi = z.partialPivLu().solve(Mat::Identity(a.rows(), a.cols()));
    const Mat yn = 0.5 * (y + zi);
    const Mat zn = 0.5 * (z + yi);
    const double delta = inf_norm(Mat(yn - y));
    y = yn;
    z = zn;
    if (delta < 1e-15 * std::max(1.0, inf_norm(y))) break;
  }
  if (inf_norm(Mat(y * y - a)) > 1e-10 * std::max(1.0, inf_norm(a)))
    throw numeric_error("matrix square root iteration did not converge");
  return y;
}

}  // namespace

Mat logm(const Mat& m) {
  const Eigen::Index d = m.rows();
  const Mat n0 = m - Mat::Identity(d, d);
  if (is_nilpotent(n0)) return log_mercator(n0, true);
  Mat a = m;
  int s = 0;
  while (inf_norm(Mat(a - Mat::Identity(d, d))) > 0.25) {
    a = sqrtm_db(a);
    if (++s > 50) throw numeric_error("matrix logarithm: scaling did not converge");
  }
  return std::ldexp(1.0, s) * log_mercator(Mat(a - Mat::Identity(d, d)), false);
}

Mat phi1m(const Mat& m) {
  const Eigen::Index d = m.rows();
  Mat s = Mat::Zero(d, d);
  Mat term = Mat::Identity(d, d);  // (-m)^k / (k+1)!
  double acc = 0.0;
  for (int k = 0; k < 60; ++k) {
    s += term;
    acc = std::max(acc, inf_norm(s));
    term = term * (-m) / double(k + 2);
    if (term.isZero(0.0)) return s;
    if (inf_norm(term) < 1e-16 * std::max(1.0, acc)) return s;
  }
  if (inf_norm(term) > 1e-12 * std::max(1.0, acc))
    throw numeric_error("phi series did not converge within 60 terms");
  return s;
}

Mat dexp_series(const Mat& ad_u) {
  const Eigen::Index d = ad_u.rows();
  Mat s = Mat::Zero(d, d);
  Mat term = Mat::Identity(d, d);  // ad^k / (k+1)!
  for (int k = 0; k < 80; ++k) {
    s += term;
    term = term * ad_u / double(k + 2);
    if (term.isZero(0.0)) break;
    if (inf_norm(term) < 1e-18 * std::max(1.0, inf_norm(s))) break;
  }
  return s;
}

Vec dexpinv_apply(const Mat& ad_u, const Vec& w) {
  return dexp_series(ad_u).partialPivLu().solve(w);
}

}  // namespace taulift
