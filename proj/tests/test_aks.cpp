#include "helpers.hpp"
#include "taulift/config.hpp"

using namespace taulift;

namespace {

HamiltonianSpec linear_functional(const SemidirectAlgebra& h, const HVector& a) {
  HamiltonianSpec s;
  s.evaluate = [&h, a](const HVector& v) { return h_form(h, a, v); };
  s.legendre = [a](const HVector&) { return a; };
  s.ad_invariant = false;
  return s;
}

}  // namespace

TEST_CASE("lie_poisson_bracket") {
  const ExampleDefinition& ex = load("nilpotent3");
  const auto& h = *ex.h;
  Sampler s(61);
  const HVector x{s.vec(4), s.vec(4)};
  const HamiltonianSpec quad = quadratic_pairing(h);
  CHECK(lie_poisson_bracket(h, quad, quad, x) == 0.0);
  // two Ad^H-invariant functions commute everywhere
  const HamiltonianSpec quart = quartic_trace(h);
  for (int k = 0; k < 10; ++k) {
    const HVector v{s.vec(4), s.vec(4)};
    CHECK(std::abs(lie_poisson_bracket(h, quad, quart, v)) < 1e-9);
  }
  // linear functionals: {F,G}(X) = (X, [A,B])_h exactly
  const HVector a{s.vec(4), s.vec(4)}, b{s.vec(4), s.vec(4)};
  const double lhs = lie_poisson_bracket(h, linear_functional(h, a), linear_functional(h, b), x);
  CHECK(std::abs(lhs - h_form(h, x, h_bracket(h, a, b))) < 1e-14);
}

TEST_CASE("restricted_bracket") {
  const ExampleDefinition& ex = load("nilpotent3");
  const auto& h = *ex.h;
  Sampler s(62);
  // K = 0, quadratic (L = id), X+ in h+: both projections annihilate
  const HVector xp = random_h_side_vector(ex, Side::plus, s);
  const HamiltonianSpec quad = quadratic_pairing(h);
  CHECK(std::abs(restricted_bracket(h, quad, quad, xp, HVector::zero(4))) < 1e-14);

  // catalog data: equals the slice-restricted Lie-Poisson bracket (both vanish
  // for invariant Hamiltonians)
  const HamiltonianSpec quart = quartic_trace(h);
  const HVector z = xp + ex.default_K;
  CHECK(std::abs(restricted_bracket(h, quad, quart, xp, ex.default_K)) < 1e-10);
  CHECK(std::abs(lie_poisson_bracket(h, quad, quart, z)) < 1e-10);

  // linear test functions against the hand-expanded bracket at dimension 8:
  // (X+, [Pi_- A, Pi_- B])_h expanded through structure constants
  const HVector a{s.vec(4), s.vec(4)}, b{s.vec(4), s.vec(4)};
  const double got =
      restricted_bracket(h, linear_functional(h, a), linear_functional(h, b), xp, ex.default_K);
  const HVector pa = h.project(Side::minus, a);
  const HVector pb = h.project(Side::minus, b);
  // hand expansion of (X+, [pa, pb])_h = (X1, B(tau-part))_g + (X2, B [pa1,pb1])_g
  const SplitDoubleAlgebra& base = h.base();
  const Vec br1 = bracket(base.algebra(), pa.first, pb.first);
  const Vec br2 = tau_ad(base, pa.first, pb.second) - tau_ad(base, pb.first, pa.second);
  const double hand = base.form().pair(xp.first, br2) + base.form().pair(xp.second, br1);
  CHECK(std::abs(got - hand) < 1e-13);

  // equivalent form via ad-invariance and isotropy:
  // (X+, [Pi_- A, Pi_- B])_h = (A, Pi_{h+} ad_{Pi_- B}(X+ + K))_h
  const double chain =
      h_form(h, a, h.project(Side::plus, h_bracket(h, pb, xp + ex.default_K)));
  CHECK(std::abs(got - chain) < 1e-12);
}

TEST_CASE("character_check") {
  const ExampleDefinition& ex3 = load("nilpotent3");
  const auto& h3 = *ex3.h;
  CHECK(character_check(h3, HVector::zero(4)).pass);
  CHECK(character_check(h3, ex3.default_K).pass);
  // any K with a nonzero (0,e1)-component fails
  HVector bad = ex3.default_K;
  bad.second[0] = 0.3;
  const CharacterReport r = character_check(h3, bad);
  CHECK(!r.pass);
  CHECK(!r.failing_components.empty());
  // K outside h- is an input error
  HVector outside = ex3.default_K;
  outside.first[1] = 1.0;
  CHECK_THROWS_AS(character_check(h3, outside), input_error);

  // sl2c: K+ = (k3 X3, kH H) passes for arbitrary k3, kH (mirrored side)
  const ExampleDefinition& sl = load("sl2c");
  Sampler s(63);
  for (int k = 0; k < 10; ++k) {
    HVector kk = HVector::zero(6);
    kk.first[2] = s.uniform(-2, 2);
    kk.second[5] = s.uniform(-2, 2);
    CHECK(character_check(*sl.h, kk, Side::minus).pass);
  }

  // a6_34: a (0,e6)-component breaks the character condition
  const ExampleDefinition& ex6 = load("a6_34");
  HVector bad6 = ex6.default_K;
  bad6.second[5] = 0.4;
  CHECK(!character_check(*ex6.h, bad6).pass);
}

TEST_CASE("hamiltonian_field") {
  const ExampleDefinition& ex3 = load("nilpotent3");
  const auto& h3 = *ex3.h;
  // 3-step slice fixture: V = -x4 (x1 e2, y2 e3)
  const HVector z = ex3.default_z0;
  const HVector v = hamiltonian_field(h3, ex3.hamiltonian, z);
  const double x1 = z.first[0], x4 = z.first[3], y2 = z.second[1];
  CHECK(inf_norm(Vec(v.first + x4 * x1 * unit(4, 1))) < 1e-14);
  CHECK(inf_norm(Vec(v.second + x4 * y2 * unit(4, 2))) < 1e-14);

  // Z in h+ with L = id and K = 0: the h- projection of L(Z) vanishes
  Sampler s(64);
  const HVector zp = random_h_side_vector(ex3, Side::plus, s);
  CHECK(inf_norm(hamiltonian_field(h3, ex3.hamiltonian, zp)) < 1e-14);

  // a6_34 slice fixture
  const ExampleDefinition& ex6 = load("a6_34");
  const HVector z6 = ex6.default_z0;
  const HVector v6 = hamiltonian_field(*ex6.h, ex6.hamiltonian, z6);
  const double x2 = z6.first[1], x3 = z6.first[2], x6 = z6.first[5];
  const double x2p = z6.second[1], x3p = z6.second[2], x4a = z6.first[3], x5p = z6.second[4];
  Vec f1 = Vec::Zero(6);
  f1[1] = x3 * x6;
  f1[2] = -x2 * x6;
  Vec f2 = Vec::Zero(6);
  f2[0] = x2 * x3p - x3 * x2p - x4a * x5p;
  f2[3] = x5p * x6;
  CHECK(inf_norm(Vec(v6.first - f1)) < 1e-13);
  CHECK(inf_norm(Vec(v6.second - f2)) < 1e-13);

  // a falsely-declared invariant Hamiltonian aborts with a diagnostic
  HamiltonianSpec fake = linear_functional(h3, HVector{unit(4, 0), Vec::Zero(4)});
  fake.ad_invariant = true;
  CHECK_THROWS_AS(hamiltonian_field(h3, fake, z), validation_error);
  // the sl2c catalog Hamiltonian is declared non-invariant
  CHECK_THROWS_AS(
      hamiltonian_field(*load("sl2c").h, load("sl2c").hamiltonian, load("sl2c").default_z0,
                        Side::minus),
      validation_error);
}

TEST_CASE("evolution_field matches hamiltonian_field for invariant data") {
  Sampler s(65);
  for (const std::string& name : {std::string("nilpotent3"), std::string("a6_34")}) {
    const ExampleDefinition& ex = load(name);
    const HVector z = ex.default_z0;
    CHECK(inf_norm(evolution_field(*ex.h, ex.hamiltonian, z) -
                   hamiltonian_field(*ex.h, ex.hamiltonian, z)) < 1e-12);
  }
  // sl2c: the componentwise field is the expected linear system
  const ExampleDefinition& sl = load("sl2c");
  const HVector z = sl.default_z0;
  const HVector v = evolution_field(*sl.h, sl.hamiltonian, z, Side::minus);
  const double al = 2.0 * z.first[5], be = 2.0 * z.second[2];
  Vec f1 = Vec::Zero(6);
  f1[3] = -al * z.first[3];
  f1[4] = -al * z.first[4];
  Vec f2 = Vec::Zero(6);
  f2[0] = -be * z.first[3] - al * z.second[0];
  f2[1] = be * z.first[4] - al * z.second[1];
  CHECK(inf_norm(Vec(v.first - f1)) < 1e-13);
  CHECK(inf_norm(Vec(v.second - f2)) < 1e-13);
}

TEST_CASE("solve_aks: trivial one-sided factorization") {
  const ExampleDefinition& ex = load("nilpotent3");
  AKSProblem p = ex.default_problem();
  p.z0 = p.K;  // L(z0) lies in h-: h+(t) stays at the unit, Z constant
  p.times = TimeGrid{0.0, 1.0, 10};
  const Trajectory t = solve_aks(p, *ex.h, *ex.rep, ex.factorization);
  for (const HVector& st : t.states) CHECK(inf_norm(st - p.z0) < 1e-12);
}

TEST_CASE("solve_aks: zero initial condition stays at zero") {
  const ExampleDefinition& ex = load("nilpotent3");
  AKSProblem p = ex.default_problem();
  p.K = HVector::zero(4);
  p.z0 = HVector::zero(4);
  p.times = TimeGrid{0.0, 2.0, 10};
  for (const Trajectory& t : {solve_aks(p, *ex.h, *ex.rep, ex.factorization),
                              ode_oracle(p, *ex.h, 1e-3)})
    for (const HVector& st : t.states) CHECK(inf_norm(st) == 0.0);
}

TEST_CASE("solve_aks: closed forms, slice, conservation") {
  for (const std::string& name : catalog_names()) {
    const ExampleDefinition& ex = load(name);
    AKSProblem p = ex.default_problem();
    p.times = TimeGrid{0.0, 2.0, 40};
    const Trajectory t = solve_aks(p, *ex.h, *ex.rep, ex.factorization);
    REQUIRE(!t.failure);
    CHECK(inf_norm(t.states.front() - p.z0) == 0.0);
    double worst = 0.0;
    for (size_t i = 0; i < t.times.size(); ++i)
      worst = std::max(worst, inf_norm(t.states[i] - ex.reference_solution(p.z0, t.times[i])));
    CHECK(worst < 1e-9);
    CHECK(conservation_drift(ex.hamiltonian, t) < 1e-9);
    CHECK(slice_drift(*ex.h, t, p.K, ex.side) < 1e-8);
  }
  // inadmissible K is rejected up front
  const ExampleDefinition& ex3 = load("nilpotent3");
  AKSProblem bad = ex3.default_problem();
  bad.K.second[0] = 0.4;
  bad.z0 = bad.K;
  CHECK_THROWS_AS(solve_aks(bad, *ex3.h, *ex3.rep, ex3.factorization), input_error);
}

TEST_CASE("left logarithmic derivative of the plus factor") {
  // h+^{-1} h+' = Pi_{h+} L(Z(t)), via central differences on the factor curve
  const ExampleDefinition& ex = load("nilpotent3");
  const auto& h = *ex.h;
  const HVector l0 = ex.hamiltonian.legendre(ex.default_z0);
  const double fd = 1e-5;
  for (double t : {0.4, 1.1, 1.9}) {
    auto factor = [&](double tt) {
      return factorize_h(h, *ex.rep, ex.factorization, h_exp(h, *ex.rep, tt, l0)).first;
    };
    const HElement c0 = factor(t), cp = factor(t + fd), cm = factor(t - fd);
    const Mat gdot = (cp.g.m - cm.g.m) / (2 * fd);
    const Vec xdot = (cp.x - cm.x) / (2 * fd);
    const Vec w = ex.rep->coords(Mat(c0.g.m.inverse() * gdot));
    // fiber slot of the left log derivative: xdot + ad^tau_{g^{-1}g'} x
    const Vec fiber = xdot + tau_ad(h.base(), w, c0.x);
    const HVector z = h_adjoint(h, *ex.rep, h_inverse(h, *ex.rep, c0), ex.default_z0);
    const HVector expect = h.project(Side::plus, ex.hamiltonian.legendre(z));
    CHECK(inf_norm(Vec(w - expect.first)) < 1e-5);
    CHECK(inf_norm(Vec(fiber - expect.second)) < 1e-5);
  }
}

TEST_CASE("ode_oracle: constant field, closed form, equivalence") {
  const ExampleDefinition& ex = load("nilpotent3");
  AKSProblem p = ex.default_problem();
  p.z0 = p.K;
  p.times = TimeGrid{0.0, 1.0, 5};
  const Trajectory c = ode_oracle(p, *ex.h, 1e-3);
  for (const HVector& st : c.states) CHECK(inf_norm(st - p.z0) < 1e-12);

  AKSProblem full = ex.default_problem();
  full.times = TimeGrid{0.0, 2.0, 20};
  const Trajectory t = ode_oracle(full, *ex.h, 1e-4);
  double worst = 0.0;
  for (size_t i = 0; i < t.times.size(); ++i)
    worst = std::max(worst, inf_norm(t.states[i] - ex.reference_solution(full.z0, t.times[i])));
  CHECK(worst < 1e-8);
  const Trajectory a = solve_aks(full, *ex.h, *ex.rep, ex.factorization);
  CHECK(trajectory_gap(a, t) < 1e-6);
}

TEST_CASE("restrict_g2") {
  const ExampleDefinition& ex = load("nilpotent3");
  const auto& h = *ex.h;
  Sampler s(66);
  CHECK(inf_norm(restrict_g2(h, ex.hamiltonian, HVector::zero(4))) == 0.0);
  for (const std::string& name : {std::string("nilpotent3"), std::string("a6_34")}) {
    const ExampleDefinition& exn = load(name);
    const HVector z{Vec::Zero(exn.h->dim_g()), s.vec(exn.h->dim_g())};
    const Vec reduced = restrict_g2(*exn.h, exn.hamiltonian, z);
    const HVector full = hamiltonian_field(*exn.h, exn.hamiltonian, z);
    CHECK(inf_norm(Vec(reduced - full.second)) < 1e-10);
  }
  HVector badsupport{unit(4, 0), Vec::Zero(4)};
  CHECK_THROWS_AS(restrict_g2(h, ex.hamiltonian, badsupport), input_error);
}

TEST_CASE("solve_aks trajectories satisfy the evolution equation by central differences") {
  for (const std::string& name : catalog_names()) {
    const ExampleDefinition& ex = load(name);
    AKSProblem p = ex.default_problem();
    const double fd = 1e-5;
    for (double t : {0.5, 1.3}) {
      // single-sample solves at t-fd, t, t+fd
      AKSProblem q = p;
      q.times = TimeGrid{0.0, t, 1};
      const Trajectory tr = solve_aks(q, *ex.h, *ex.rep, ex.factorization);
      const HVector z = tr.states.back();
      q.times = TimeGrid{0.0, t + fd, 1};
      const HVector zp = solve_aks(q, *ex.h, *ex.rep, ex.factorization).states.back();
      q.times = TimeGrid{0.0, t - fd, 1};
      const HVector zm = solve_aks(q, *ex.h, *ex.rep, ex.factorization).states.back();
      const HVector num = (zp - zm) * (1.0 / (2 * fd));
      CHECK(inf_norm(num - evolution_field(*ex.h, ex.hamiltonian, z, ex.side)) < 1e-5);
    }
  }
}

TEST_CASE("HamiltonianSpec invariants: legendre consistency and equivariance") {
  Sampler s(67);
  for (const std::string& name : catalog_names()) {
    const ExampleDefinition& ex = load(name);
    const auto& h = *ex.h;
    const Eigen::Index d = h.dim_g();
    for (int k = 0; k < 5; ++k) {
      const HVector x{s.vec(d), s.vec(d)};
      const HVector y{s.vec(d), s.vec(d)};
      const double fd = 1e-6;
      const double num =
          (ex.hamiltonian.evaluate(x + fd * y) - ex.hamiltonian.evaluate(x - fd * y)) /
          (2 * fd);
      CHECK(std::abs(h_form(h, ex.hamiltonian.legendre(x), y) - num) < 1e-6);
    }
    // equivariance of the invariant Hamiltonians
    for (const HamiltonianSpec& spec : {quadratic_pairing(h), quartic_trace(h)}) {
      const HVector x{s.vec(d), s.vec(d)};
      const HElement g{GroupElement(expm(ex.rep->of(s.vec(d, -0.4, 0.4)))), s.vec(d)};
      const HVector lhs = h_adjoint(h, *ex.rep, g, spec.legendre(x));
      const HVector rhs = spec.legendre(h_adjoint(h, *ex.rep, g, x));
      CHECK(inf_norm(lhs - rhs) < 1e-8);
      CHECK(std::abs(spec.evaluate(h_adjoint(h, *ex.rep, g, x)) - spec.evaluate(x)) <
            1e-8 * std::max(1.0, std::abs(spec.evaluate(x))));
    }
  }
  // finite-difference legendre synthesis agrees with the analytic one
  const ExampleDefinition& ex = load("nilpotent3");
  const auto& h = *ex.h;
  const HamiltonianSpec fd_spec =
      from_function(h, [&h](const HVector& v) { return 0.5 * h_form(h, v, v); }, true);
  const HVector x{Sampler(68).vec(4), Sampler(69).vec(4)};
  CHECK(inf_norm(fd_spec.legendre(x) - x) < 1e-6);
}
