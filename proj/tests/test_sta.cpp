#include <doctest.h>

#include <cmath>
#include <sstream>

#include "tgqsl/error.hpp"
#include "tgqsl/sta.hpp"

using namespace tgqsl;

TEST_CASE("Hermite moments") {
  CHECK(hermite_even_moment(0, 0) == doctest::Approx(1.0));
  CHECK(hermite_even_moment(0, 1) == doctest::Approx(0.5));
  CHECK(hermite_even_moment(0, 2) == doctest::Approx(0.75));
  CHECK(hermite_even_moment(3, 1) == doctest::Approx(3.5));
  // <y^4>_n = 3(2n^2 + 2n + 1)/4
  for (int n = 0; n < 30; ++n)
    CHECK(hermite_even_moment(n, 2) == doctest::Approx(3.0 * (2.0 * n * n + 2 * n + 1) / 4).epsilon(1e-12));
}

TEST_CASE("quartic coefficient") {
  CHECK(quartic_coefficient(0) == doctest::Approx(3.0 / 8));
  CHECK(quartic_coefficient(1) == doctest::Approx(15.0 / 8));
  CHECK(quartic_coefficient(49) == doctest::Approx(1837.875));
}

TEST_CASE("width coefficient D(n, q)") {
  CHECK(general_coefficients(0, 2).d == doctest::Approx(3.0));
  CHECK(general_coefficients(49, 2).d == doctest::Approx(3.0 * 4901 / 99).epsilon(1e-12));
  for (int n = 0; n <= 50; ++n) CHECK(general_coefficients(n, 1).d == doctest::Approx(1.0).epsilon(1e-12));
  // closed-form finite sum agrees with the moment route
  for (int q = 1; q <= 4; ++q)
    for (int n : {0, 1, 2, 5, 20}) {
      const GeneralCoefficients g = general_coefficients(n, q);
      CHECK(g.printed_d == doctest::Approx(g.d).epsilon(1e-10));
    }
  CHECK_THROWS_AS(general_coefficients(-1, 2), Error);
  CHECK_THROWS_AS(general_coefficients(0, 0), Error);
}

TEST_CASE("scaling fixed points") {
  CHECK(scaling_fixed_point(0, 2, 1.0) == doctest::Approx(std::pow(1.0 / 3, 1.0 / 6)).epsilon(1e-12));
  CHECK(scaling_fixed_point(49, 2, 1.0) == doctest::Approx(std::pow(99.0 / 14703, 1.0 / 6)).epsilon(1e-12));
  CHECK(scaling_fixed_point(49, 2, 1.0) == doctest::Approx(0.4345).epsilon(1e-3));
  CHECK(scaling_fixed_point(3, 1, 4.0) == doctest::Approx(std::pow(4.0, -0.25)));
  CHECK_THROWS_AS(scaling_fixed_point(0, 2, 0.0), Error);
}

TEST_CASE("quintic boundary conditions") {
  const ScalingPolynomial p = design_scaling(49, 2, 1, 8, 2);
  CHECK(p.value(0) == doctest::Approx(scaling_fixed_point(49, 2, 1)).epsilon(1e-12));
  CHECK(p.value(2) / p.value(0) == doctest::Approx(std::pow(1.0 / 8, 1.0 / 6)).epsilon(1e-10));
  CHECK(std::abs(p.velocity(0)) < 1e-12);
  CHECK(std::abs(p.velocity(2)) < 1e-10);
  CHECK(std::abs(p.acceleration(0)) < 1e-12);
  CHECK(std::abs(p.acceleration(2)) < 1e-10);

  const ScalingPolynomial flat = design_scaling(3, 2, 2, 2, 1);
  for (int i = 1; i < 6; ++i) CHECK(flat.c[i] == 0.0);
  CHECK_THROWS_AS(design_scaling(0, 2, 1, 8, 0), Error);
}

TEST_CASE("designed ramps") {
  const ScalingPolynomial p = design_scaling(49, 2, 1, 8, 2);
  const StaRamp r = ramp_from_scaling(p);
  CHECK(std::abs(r.lambda.front() - 1.0) < 1e-8);
  CHECK(std::abs(r.lambda.back() - 8.0) < 1e-8);
  CHECK(ermakov_residual(p, r) < 1e-8);
  CHECK(r.endpoint_slope() < design_ramp(0, 2, 1, 8, 2).endpoint_slope());

  StaRamp bumped = r;
  for (double& l : bumped.lambda) l *= 1.01;
  CHECK(ermakov_residual(p, bumped) > 1e-4);

  const StaRamp flat = design_ramp(5, 2, 3, 3, 1, 101);
  for (double l : flat.lambda) CHECK(l == doctest::Approx(3.0).epsilon(1e-12));

  for (double t_f : {0.5, 1.0, 2.0}) {
    const ScalingPolynomial h = design_scaling(9, 1, 1, 8, t_f);
    CHECK(ermakov_residual(h, ramp_from_scaling(h)) < 1e-8);
  }
  // fast harmonic ramps swing through negative strengths
  CHECK(design_ramp(9, 1, 1, 8, 0.5).has_nonpositive);
  CHECK_FALSE(design_ramp(9, 1, 1, 8, 2.0).has_nonpositive);
}

TEST_CASE("variational equations") {
  const VariationalState rest{scaling_fixed_point(2, 2, 1.0), 0.0, 0.0, 0.0};
  const VariationalRates r = variational_ode_rhs(rest, 1.0, 2, 2, 0.0);
  CHECK(r.a_dot == 0.0);
  CHECK(std::abs(r.b_dot) < 1e-12);  // fixed point
  CHECK(std::abs(r.c_dot) < 1e-12);  // centred
  CHECK(r.xi_dot == 0.0);

  const VariationalRates off = variational_ode_rhs({0.8, 0.1, 0.0, 0.3}, 1.0, 0, 2, 0.0);
  CHECK(off.a_dot == doctest::Approx(2 * 0.8 * 0.1));
  CHECK(off.c_dot < 0.0);  // restoring force
  CHECK_THROWS_AS(variational_ode_rhs({0.0, 0, 0, 0}, 1.0, 0, 2, 0.0), Error);
}

TEST_CASE("integrated ansatz follows the designed scaling") {
  const ScalingPolynomial p = design_scaling(3, 2, 1, 8, 1.0);
  const StaRamp ramp = ramp_from_scaling(p);
  const auto states = integrate_ansatz({p.value(0), 0.0, 0.0, 0.0}, ramp.schedule(), 3, 2, 0.0, 4000);
  REQUIRE(states.size() == 4001);
  CHECK(states.back().a == doctest::Approx(p.value(1.0)).epsilon(1e-5));
  CHECK(std::abs(states.back().b) < 1e-3);
}

TEST_CASE("ansatz energies") {
  CHECK(ansatz_energy(0, 1.0) == doctest::Approx(0.540843588865).epsilon(1e-11));
  CHECK(ansatz_energy(0, 1.0) == doctest::Approx(std::pow(3.0, 1.0 / 3) / 4 + std::pow(3.0, -2.0 / 3) * 3 / 8));
  CHECK(ansatz_energy(4, 1.0, 1) == doctest::Approx(4.5));
  CHECK_THROWS_AS(ansatz_energy(0, -1.0), Error);
}

TEST_CASE("ramp CSV round trip") {
  const StaRamp r = design_ramp(4, 2, 1, 8, 1.5, 201);
  std::stringstream s;
  write_ramp_csv(s, r, "free comment");
  const StaRamp back = read_ramp_csv(s);
  CHECK(back.n == 4);
  CHECK(back.q == 2);
  CHECK(back.t_f == doctest::Approx(1.5));
  REQUIRE(back.times.size() == r.times.size());
  for (std::size_t k = 0; k < r.times.size(); ++k) CHECK(back.lambda[k] == doctest::Approx(r.lambda[k]).epsilon(1e-11));

  std::istringstream bad("# n=1,q=2,lambda_i=1,lambda_f=8,t_f=1,colour=red\nt,lambda\n0,1\n1,8\n");
  CHECK_THROWS_AS(read_ramp_csv(bad), Error);
  std::istringstream garbled("# n=1,q=2,lambda_i=1,lambda_f=8,t_f=1\nt,lambda\n0,1\n0.5,x\n1,8\n");
  try {
    read_ramp_csv(garbled);
    FAIL("expected a config error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::config);
    CHECK(std::string(e.what()).find("line 4") != std::string::npos);
  }
}
