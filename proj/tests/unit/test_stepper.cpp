#include <catch_amalgamated.hpp>
#include <cmath>
#include <json.hpp>
#include <numbers>
#include <random>
#include <sstream>

#include "../support/oracles.hpp"
#include "conecheck/core/errors.hpp"
#include "conecheck/spectral/modes.hpp"
#include "conecheck/stepper/stepper.hpp"

using namespace conecheck;
using namespace conecheck::stepper;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

MatrixN random_matrix(std::size_t n, std::mt19937_64& rng, double diag_shift = 0.0) {
  std::uniform_real_distribution<double> u(-1, 1);
  MatrixN M(n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) M(r, c) = u(rng) + (r == c ? diag_shift : 0.0);
  return M;
}

Field gaussian(const Grid& g, std::size_t ncomp, double width) {
  Field u(g, ncomp);
  for (std::size_t k = 0; k < ncomp; ++k)
    for (std::size_t p = 0; p < g.point_count(); ++p) {
      const auto idx = g.unflatten(p);
      double r2 = 0.0;
      for (int a = 0; a < g.dim(); ++a) r2 += g.coordinate(idx[a]) * g.coordinate(idx[a]);
      u.at(k, p) = (1.0 + 0.5 * k) * std::exp(-r2 / (2 * width * width));
    }
  return u;
}

Field random_smooth(const Grid& g, std::size_t ncomp, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1, 1);
  Field f(g, ncomp);
  for (std::size_t k = 0; k < ncomp; ++k) {
    double c[4];
    for (double& x : c) x = u(rng);
    for (std::size_t p = 0; p < g.point_count(); ++p) {
      const auto idx = g.unflatten(p);
      double v = 1.0 + c[0];
      for (int a = 0; a < g.dim(); ++a) {
        const double x = 2 * std::numbers::pi * g.coordinate(idx[a]) / g.box();
        v += c[1] * std::sin(x + c[2]) + 0.5 * c[3] * std::cos(2 * x);
      }
      f.at(k, p) = v;
    }
  }
  return f;
}

RunConfig one_step(double dt) {
  RunConfig rc;
  rc.t_end = dt;
  rc.dt = dt;
  return rc;
}

// u' = -F(u) by classical RK4, independent of the library's ODE helper.
std::vector<double> rk4(const ReactionSpec& F, std::vector<double> u, double t_end, int steps) {
  const double h = t_end / steps;
  auto rhs = [&](const std::vector<double>& x) {
    std::vector<double> out(x.size());
    F.evaluate(x, out);
    for (double& v : out) v = -v;
    return out;
  };
  auto add = [](std::vector<double> a, double s, const std::vector<double>& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += s * b[i];
    return a;
  };
  for (int s = 0; s < steps; ++s) {
    const auto k1 = rhs(u), k2 = rhs(add(u, h / 2, k1)), k3 = rhs(add(u, h / 2, k2)), k4 = rhs(add(u, h, k3));
    for (std::size_t i = 0; i < u.size(); ++i) u[i] += h / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
  }
  return u;
}

}  // namespace

TEST_CASE("run config validation") {
  RunConfig rc;
  rc.t_end = 1.0;
  rc.dt = 0.1;
  CHECK(rc.step_count() == 10);
  rc.dt = 0.3;
  CHECK_THROWS_AS(rc.step_count(), PreconditionError);
  rc.dt = 2.0;
  CHECK_THROWS_AS(rc.step_count(), PreconditionError);
  rc.dt = 0.0;
  CHECK_THROWS_AS(rc.step_count(), PreconditionError);
  rc.dt = 0.25;
  rc.output_stride = 0;
  CHECK_THROWS_AS(rc.step_count(), PreconditionError);
}

TEST_CASE("exact decay of a single harmonic") {
  const Grid g(1, 32, 2 * std::numbers::pi);
  const SystemSpec spec(1, MatrixN{{1.0}}, {MatrixN{{0.0}}}, ReactionSpec::zero());
  Field u(g, 1);
  for (std::size_t i = 0; i < 32; ++i) u.at(0, i) = std::cos(3 * g.coordinate(i));
  const double dt = 1e-3;
  const auto s = step_linear(spectral::forward(u), spectral::build_propagator(spec, g, dt, false));
  const Field v = spectral::inverse(s);
  const double decay = std::exp(-std::pow(3.0, 6) * dt);
  for (std::size_t i = 0; i < 32; ++i) CHECK_THAT(v.at(0, i), WithinAbs(decay * u.at(0, i), 1e-13));

  const auto s0 = step_linear(spectral::forward(u), spectral::build_propagator(spec, g, 0.0, false));
  CHECK(oracle::max_abs_diff(spectral::inverse(s0), u) < 1e-14);
}

TEST_CASE("linear steps match the eigendecomposition oracle") {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 12; ++t) {
    const int d = 1 + t % 2;
    const std::size_t N = 1 + t % 3;
    const Grid g(d, d == 1 ? 64 : 16, 8.0 + t);
    std::vector<MatrixN> gammas;
    for (int a = 0; a < d; ++a) gammas.push_back(random_matrix(N, rng));
    const ReactionSpec F = t % 2 ? ReactionSpec::linear(random_matrix(N, rng)) : ReactionSpec::zero();
    const SystemSpec spec(d, random_matrix(N, rng, 2.0 * N), gammas, F);
    const Field u0 = random_smooth(g, N, rng);
    const double dt = 1e-2;
    const TimeSeries ts = run(spec, u0, one_step(dt));
    CHECK(oracle::max_abs_diff(ts.final_state, oracle::linear_solution(spec, u0, dt)) < 1e-10);
  }
}

TEST_CASE("reaction evaluation") {
  const Grid g(1, 8, 1.0);
  Field ones(g, 2);
  for (double& v : ones.values()) v = 1.0;
  const Field z = evaluate_reaction(ones, ReactionSpec::zero());
  for (double v : z.values()) CHECK(v == 0.0);
  const Field l = evaluate_reaction(ones, ReactionSpec::linear(MatrixN{{2, -1}, {-1, 2}}));
  for (double v : l.values()) CHECK(v == 1.0);

  const auto logistic = ReactionSpec::polynomial({{Monomial{1.0, {2}}, Monomial{-1.0, {1}}}});
  const Field at_zero = evaluate_reaction(Field(g, 1), logistic);
  for (double v : at_zero.values()) CHECK(v == 0.0);

  Field big(g, 1);
  for (double& v : big.values()) v = 1e200;
  CHECK_THROWS_AS(evaluate_reaction(big, ReactionSpec::polynomial({{Monomial{1.0, {2}}}})), NumericalError);
}

TEST_CASE("mass conservation without reaction") {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 5; ++t) {
    const Grid g(1 + t % 2, 32, 10.0);
    std::vector<MatrixN> gammas;
    for (int a = 0; a < g.dim(); ++a) {
      MatrixN G(2);
      G(0, 0) = 0.3 * (t + 1);
      G(1, 1) = -0.2;
      gammas.push_back(G);
    }
    const SystemSpec spec(g.dim(), random_matrix(2, rng, 2.0), gammas, ReactionSpec::zero());
    const Field u0 = gaussian(g, 2, 1.0);
    RunConfig rc;
    rc.t_end = 0.1;
    rc.dt = 1e-3;
    rc.output_stride = 100;
    const TimeSeries ts = run(spec, u0, rc);
    for (std::size_t k = 0; k < 2; ++k)
      CHECK_THAT(component_mass(ts.final_state, k), WithinRel(component_mass(u0, k), 1e-10));
  }
}

TEST_CASE("energy is nonincreasing for symmetric transport") {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 5; ++t) {
    const Grid g(1, 64, 12.0);
    MatrixN G = random_matrix(2, rng);
    G(1, 0) = G(0, 1);
    const SystemSpec spec(1, random_matrix(2, rng, 2.0), {G}, ReactionSpec::zero());
    RunConfig rc;
    rc.t_end = 0.2;
    rc.dt = 2e-3;
    const TimeSeries ts = run(spec, random_smooth(g, 2, rng), rc);
    for (std::size_t s = 1; s < ts.snapshots.size(); ++s) {
      auto e = [&](std::size_t i) {
        double sum = 0.0;
        for (const auto& c : ts.snapshots[i].components) sum += c.l2norm * c.l2norm;
        return sum;
      };
      CHECK(e(s) <= e(s - 1) * (1 + 1e-12));
    }
  }
}

TEST_CASE("constant states follow the reaction ODE") {
  const Grid g(2, 8, 5.0);
  const auto F = ReactionSpec::polynomial(
      {{Monomial{-1.0, {1, 0}}, Monomial{1.0, {2, 0}}, Monomial{0.5, {1, 1}}}, {Monomial{0.7, {0, 1}}, Monomial{-0.3, {1, 1}}}});
  const SystemSpec spec(2, MatrixN{{1, 0.2}, {0, 1}}, {MatrixN{{0.3, 1}, {0, 0}}, MatrixN(2)}, F);
  Field u0(g, 2);
  for (std::size_t p = 0; p < g.point_count(); ++p) {
    u0.at(0, p) = 0.3;
    u0.at(1, p) = 0.8;
  }
  RunConfig rc;
  rc.t_end = 1.0;
  rc.dt = 1e-2;
  const TimeSeries ts = run(spec, u0, rc);
  const auto ref = rk4(F, {0.3, 0.8}, 1.0, 100);
  for (std::size_t p = 0; p < g.point_count(); ++p) {
    CHECK_THAT(ts.final_state.at(0, p), WithinAbs(ref[0], 1e-8));
    CHECK_THAT(ts.final_state.at(1, p), WithinAbs(ref[1], 1e-8));
  }
}

TEST_CASE("polyharmonic flow of a Gaussian turns negative") {
  const Grid g(1, 128, 32.0);
  const SystemSpec spec(1, MatrixN{{1.0}}, {MatrixN{{0.0}}}, ReactionSpec::zero());
  const Field u0 = gaussian(g, 1, 1.0);
  CHECK(min_component_value(u0, 0).value > 0.0);
  RunConfig rc;
  rc.t_end = 1.0;
  rc.dt = 0.1;
  const TimeSeries ts = run(spec, u0, rc);
  const Field ref = oracle::polyharmonic_solution(u0, 1.0);
  CHECK(oracle::max_abs_diff(ts.final_state, ref) < 1e-10);
  CHECK(min_component_value(ts.final_state, 0).value < -1e-3);
  CHECK(min_component_value(ref, 0).value < -1e-3);
}

TEST_CASE("integrating-factor RK4 is fourth order") {
  const Grid g(1, 32, 2 * std::numbers::pi);
  const auto F = ReactionSpec::polynomial({{Monomial{1.0, {2}}, Monomial{-0.5, {1}}}});
  // dt |xi|^6 a stays small here; stiffer A shows the usual Lawson order reduction
  const SystemSpec spec(1, MatrixN{{1e-6}}, {MatrixN{{0.5}}}, F);
  Field u0(g, 1);
  for (std::size_t i = 0; i < 32; ++i) u0.at(0, i) = 0.5 + 0.3 * std::cos(g.coordinate(i));
  auto solve = [&](double dt) {
    RunConfig rc;
    rc.t_end = 1.0;
    rc.dt = dt;
    rc.output_stride = 1000;
    return run(spec, u0, rc).final_state;
  };
  const double base = 0.1;
  const Field ref = solve(base / 16);
  std::vector<double> err;
  for (double dt : {base, base / 2, base / 4}) err.push_back(oracle::max_abs_diff(solve(dt), ref));
  for (std::size_t i = 1; i < err.size(); ++i) {
    const double order = std::log2(err[i - 1] / err[i]);
    INFO("dt halving " << i << ": error " << err[i - 1] << " -> " << err[i]);
    CHECK(order >= 3.7);
  }
}

TEST_CASE("runs are deterministic") {
  std::mt19937_64 rng(3);
  const Grid g(2, 16, 6.0);
  const auto F = ReactionSpec::polynomial({{Monomial{1.0, {2, 0}}}, {Monomial{-1.0, {1, 1}}}});
  const SystemSpec spec(2, random_matrix(2, rng, 2.0), {random_matrix(2, rng), random_matrix(2, rng)}, F);
  const Field u0 = random_smooth(g, 2, rng);
  RunConfig rc;
  rc.t_end = 0.05;
  rc.dt = 0.005;
  const TimeSeries a = run(spec, u0, rc), b = run(spec, u0, rc);
  CHECK(a.final_state.values() == b.final_state.values());
  std::ostringstream ca, cb;
  write_csv(ca, a);
  write_csv(cb, b);
  CHECK(ca.str() == cb.str());
}

TEST_CASE("blow-up stops the run") {
  const Grid g(1, 8, 1.0);
  const SystemSpec spec(1, MatrixN{{1.0}}, {MatrixN{{0.0}}}, ReactionSpec::polynomial({{Monomial{-1.0, {2}}}}));
  Field u0(g, 1);
  for (double& v : u0.values()) v = 1.0;
  RunConfig rc;
  rc.t_end = 2.0;
  rc.dt = 1e-3;
  const TimeSeries ts = run(spec, u0, rc);
  CHECK(ts.blew_up);
  CHECK(ts.final_state.all_finite());
  CHECK(ts.final_time < 1.01);
  CHECK(ts.final_time > 0.9);
}

TEST_CASE("time series output") {
  const Grid g(1, 16, 4.0);
  const SystemSpec spec(1, MatrixN::identity(2), {MatrixN(2)}, ReactionSpec::zero());
  RunConfig rc;
  rc.t_end = 0.01;
  rc.dt = 0.001;
  rc.output_stride = 4;
  const TimeSeries ts = run(spec, gaussian(g, 2, 0.5), rc);
  REQUIRE(ts.snapshots.size() == 4);  // steps 0, 4, 8, 10
  CHECK(ts.snapshots.back().step == 10);
  std::ostringstream csv;
  write_csv(csv, ts);
  std::istringstream in(csv.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "t,component,min,argmin_index,mass,l2norm");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 8);

  std::ostringstream st;
  write_state(st, ts.final_state, ts.final_time, ts.final_step, false);
  const auto j = nlohmann::json::parse(st.str());
  CHECK(j["N"] == 2);
  CHECK(j["n"] == 16);
  CHECK(j["values"].size() == 2);
  CHECK(j["values"][0].size() == 16);
}

TEST_CASE("default time step") {
  const Grid g(1, 16, 2 * std::numbers::pi);
  const SystemSpec spec(1, MatrixN{{2.0}}, {MatrixN{{0.0}}}, ReactionSpec::zero());
  CHECK_THAT(default_dt(spec, g), WithinRel(700.0 / (std::pow(8.0, 6) * 2.0), 1e-12));
}
