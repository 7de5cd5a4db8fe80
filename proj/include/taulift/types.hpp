#pragma once

#include <Eigen/Dense>
#include <charconv>
#include <random>
#include <stdexcept>
#include <string>

namespace taulift {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Error taxonomy. The CLI maps these onto exit codes:
// input/validation -> 1 or 2, numeric (factorization divergence, series
// non-convergence) -> 3.
struct input_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct validation_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct form_error : input_error {
  using input_error::input_error;
};
struct representation_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct numeric_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct factorization_error : numeric_error {
  using numeric_error::numeric_error;
};

inline double inf_norm(const Mat& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }
inline double inf_norm(const Vec& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

// Shortest round-trip decimal representation.
inline std::string format_double(double x) {
  char buf[32];
  auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  (void)ec;
  return std::string(buf, p);
}

// Seeded sampler for the randomized property checks; default seed 42.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed = 42) : rng_(seed) {}

  double uniform(double lo = -1.0, double hi = 1.0) {
    return std::uniform_real_distribution<double>(lo, hi)(rng_);
  }
  Vec vec(Eigen::Index n, double lo = -1.0, double hi = 1.0) {
    Vec v(n);
    for (Eigen::Index i = 0; i < n; ++i) v[i] = uniform(lo, hi);
    return v;
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace taulift
