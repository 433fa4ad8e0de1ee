#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "ramanecho/dynamics.hpp"
#include "ramanecho/units.hpp"

using namespace ramanecho;
using Catch::Approx;

namespace {

Matrix3c random_hermitian(std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Matrix3c m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = complexd(u(rng), u(rng));
  return ((m + m.adjoint()) / 2.0).eval();
}

double max_abs_diff(const Matrix3c& a, const Matrix3c& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("hamiltonian matches the stated matrix", "[dynamics]") {
  AtomParams p;

  SECTION("no drive, no detuning gives the zero matrix") {
    REQUIRE(build_hamiltonian({}, p).cwiseAbs().maxCoeff() == 0.0);
  }

  SECTION("direct substitution of the couplings and detunings") {
    DriveSample d{khz_to_rad_per_us(50.0), khz_to_rad_per_us(200.0)};
    p.delta = 0.3;
    p.Delta = 0.7;
    const Matrix3c h = build_hamiltonian(d, p);
    REQUIRE(h(0, 2) == complexd(-khz_to_rad_per_us(50.0) / 2.0, 0.0));
    REQUIRE(h(1, 2) == complexd(-khz_to_rad_per_us(200.0) / 2.0, 0.0));
    REQUIRE(h(1, 1) == complexd(-0.3, 0.0));
    REQUIRE(h(2, 2) == complexd(-0.7, 0.0));
    REQUIRE(h(0, 0) == complexd(0.0, 0.0));
    REQUIRE(h(0, 1) == complexd(0.0, 0.0));
  }

  SECTION("Hermitian for complex drive phases") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int trial = 0; trial < 20; ++trial) {
      DriveSample d{complexd(u(rng), u(rng)), complexd(u(rng), u(rng))};
      p.delta = u(rng);
      const Matrix3c h = build_hamiltonian(d, p);
      REQUIRE(max_abs_diff(h, h.adjoint()) < 1e-15);
    }
  }
}

TEST_CASE("relaxation right-hand side", "[dynamics]") {
  SECTION("all rates zero gives the zero matrix") {
    std::mt19937 rng(1);
    REQUIRE(relaxation_rhs(random_hermitian(rng), AtomParams{}).cwiseAbs().maxCoeff() == 0.0);
  }

  SECTION("excited state decays into both ground states") {
    Matrix3c rho = Matrix3c::Zero();
    rho(2, 2) = 1.0;
    AtomParams p;
    p.Gamma31 = 0.5;
    p.Gamma32 = 0.5;
    const Matrix3c r = relaxation_rhs(rho, p);
    REQUIRE(std::real(r(2, 2)) == Approx(-1.0));
    REQUIRE(std::real(r(0, 0)) == Approx(0.5));
    REQUIRE(std::real(r(1, 1)) == Approx(0.5));
  }

  SECTION("population is conserved: trace(R) = 0") {
    std::mt19937 rng(2);
    std::uniform_real_distribution<double> rate(0.0, 3.0);
    for (int trial = 0; trial < 50; ++trial) {
      AtomParams p;
      p.Gamma31 = rate(rng);
      p.Gamma32 = rate(rng);
      p.gamma12 = rate(rng);
      p.gamma13 = rate(rng);
      p.gamma23 = rate(rng);
      const Matrix3c r = relaxation_rhs(random_hermitian(rng), p);
      REQUIRE(std::abs(r.trace()) < 1e-12);
    }
  }
}

TEST_CASE("total right-hand side", "[dynamics]") {
  SECTION("ground state with no drive is stationary") {
    const Matrix3c r = total_rhs(DensityMatrix::ground().m, {}, AtomParams{});
    REQUIRE(r.cwiseAbs().maxCoeff() == 0.0);
  }

  SECTION("(1,2) element equals the closed-form equation of motion") {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    for (int trial = 0; trial < 30; ++trial) {
      const Matrix3c rho = random_hermitian(rng);
      DriveSample d{complexd(u(rng), u(rng)), complexd(u(rng), u(rng))};
      AtomParams p;
      p.delta = u(rng);
      p.gamma12 = std::abs(u(rng));
      const complexd i_unit(0.0, 1.0);
      const complexd expected = -(i_unit * p.delta + p.gamma12) * rho(0, 1) -
                                i_unit * (std::conj(d.omega_c) / 2.0) * rho(0, 2) +
                                i_unit * (d.omega_p / 2.0) * rho(2, 1);
      REQUIRE(std::abs(total_rhs(rho, d, p)(0, 1) - expected) < 1e-14);
    }
  }

  SECTION("traceless and Hermitian for random inputs") {
    std::mt19937 rng(4);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int trial = 0; trial < 30; ++trial) {
      const Matrix3c rho = random_hermitian(rng);
      DriveSample d{complexd(u(rng), u(rng)), complexd(u(rng), u(rng))};
      AtomParams p;
      p.delta = u(rng);
      p.Gamma31 = std::abs(u(rng));
      p.gamma13 = std::abs(u(rng));
      const Matrix3c r = total_rhs(rho, d, p);
      REQUIRE(std::abs(r.trace()) < 1e-12);
      REQUIRE(max_abs_diff(r, r.adjoint()) < 1e-12);
    }
  }
}

TEST_CASE("single RK4 step", "[dynamics]") {
  SECTION("free spin coherence picks up exp(-i delta dt) to 4th order") {
    AtomParams p;
    p.delta = 1.3;
    DensityMatrix rho;
    rho.m(0, 0) = 0.5;
    rho.m(1, 1) = 0.5;
    rho.m(0, 1) = 0.5;
    rho.m(1, 0) = 0.5;
    Sequence empty;
    empty.total_span = 1.0;
    const double dt = 0.01;
    const DensityMatrix out = rk4_step(rho, 0.0, dt, empty, p);
    const complexd exact = 0.5 * std::exp(complexd(0.0, -p.delta * dt));
    REQUIRE(std::abs(out.rho12() - exact) < std::pow(p.delta * dt, 5));
  }

  SECTION("halving dt cuts the one-step error about 16x") {
    const double omega = two_pi * 1.767767;
    Sequence seq;
    seq.pulses.push_back(make_raman_pulse(PulseLabel::R1, omega, omega, 0.0, 1.0));
    seq.total_span = 1.0;
    AtomParams p;
    const DensityMatrix rho0 = DensityMatrix::ground();
    auto one_step_error = [&](double dt) {
      const DensityMatrix stepped = rk4_step(rho0, 0.0, dt, seq, p);
      return max_abs_diff(stepped.m, resonant_lambda_oracle(omega, omega, dt).m);
    };
    const double e1 = one_step_error(4e-3);
    const double e2 = one_step_error(2e-3);
    REQUIRE(e1 / e2 > 24.0);  // one-step (local) error drops as dt^5
    REQUIRE(e1 / e2 < 40.0);
  }

  SECTION("a step across a segment boundary is rejected") {
    Sequence seq;
    seq.pulses.push_back(make_raman_pulse(PulseLabel::D, 1.0, 1.0, 0.5, 1.0));
    seq.total_span = 2.0;
    REQUIRE_THROWS_AS(rk4_step(DensityMatrix::ground(), 0.4, 0.2, seq, AtomParams{}),
                      std::invalid_argument);
  }
}

TEST_CASE("field-free propagation is exact", "[dynamics]") {
  AtomParams p;
  p.delta = khz_to_rad_per_us(50.0);

  SECTION("dt = 0 is the identity") {
    DensityMatrix rho;
    rho.m << 0.4, complexd(0.1, 0.2), complexd(0.0, -0.1),
             complexd(0.1, -0.2), 0.5, complexd(0.05, 0.0),
             complexd(0.0, 0.1), complexd(0.05, 0.0), 0.1;
    REQUIRE(max_abs_diff(propagate_field_free(rho, 0.0, p).m, rho.m) == 0.0);
  }

  SECTION("spin phase advances by -delta * dt") {
    DensityMatrix rho;
    rho.m(0, 0) = 0.5;
    rho.m(1, 1) = 0.5;
    rho.m(0, 1) = 0.5;
    rho.m(1, 0) = 0.5;
    const DensityMatrix out = propagate_field_free(rho, 10.0, p);
    // delta * dt = 2 pi * 0.05 * 10 = pi
    REQUIRE(std::abs(std::arg(out.rho12()) - (-M_PI)) < 1e-12);
    REQUIRE(std::abs(out.rho12()) == Approx(0.5));
  }

  SECTION("agrees with chained RK4 over 20 us") {
    AtomParams q;
    q.delta = 0.41;
    q.Delta = 0.13;
    q.gamma12 = 0.02;
    DensityMatrix rho;
    rho.m << 0.5, complexd(0.2, 0.1), complexd(0.1, -0.05),
             complexd(0.2, -0.1), 0.3, complexd(0.0, 0.07),
             complexd(0.1, 0.05), complexd(0.0, -0.07), 0.2;
    Sequence empty;
    empty.total_span = 20.0;
    DensityMatrix stepped = rho;
    const int n = 20000;
    for (int i = 0; i < n; ++i) stepped = rk4_step(stepped, i * (20.0 / n), 20.0 / n, empty, q);
    REQUIRE(max_abs_diff(stepped.m, propagate_field_free(rho, 20.0, q).m) < 1e-10);
  }

  SECTION("populations follow the branching rate equations") {
    AtomParams q;
    q.Gamma31 = 0.3;
    q.Gamma32 = 0.1;
    DensityMatrix rho;
    rho.m(2, 2) = 1.0;
    const double dt = 2.5;
    const DensityMatrix out = propagate_field_free(rho, dt, q);
    const double decay = std::exp(-0.4 * dt);
    REQUIRE(std::real(out.rho33()) == Approx(decay));
    REQUIRE(std::real(out.rho11()) == Approx(0.75 * (1.0 - decay)));
    REQUIRE(std::real(out.rho22()) == Approx(0.25 * (1.0 - decay)));
  }
}

TEST_CASE("resonant oracle closed form", "[dynamics]") {
  SECTION("t = 0 returns the ground state") {
    const DensityMatrix rho = resonant_lambda_oracle(1.0, 2.0, 0.0);
    REQUIRE(max_abs_diff(rho.m, DensityMatrix::ground().m) < 1e-15);
  }

  SECTION("equal legs at area 2 pi give a complete swap") {
    const double omega = two_pi * 1.767767;
    const double omega_r = generalized_rabi(omega, omega);
    const DensityMatrix rho = resonant_lambda_oracle(omega, omega, 2.0 * M_PI / omega_r);
    REQUIRE(std::real(rho.rho22()) == Approx(1.0).margin(1e-12));
    REQUIRE(std::abs(rho.rho33()) < 1e-12);
  }

  SECTION("weak probe at area 2 pi: frozen transfer values") {
    // Omega_P / Omega_R = 0.05: rho22 = (2 Wp Wc / Wr^2)^2, |rho12| = |c1 c2|.
    const double omega_r = mhz_to_rad_per_us(1.0);
    const double omega_p = khz_to_rad_per_us(50.0);
    const double omega_c = std::sqrt(omega_r * omega_r - omega_p * omega_p);
    const DensityMatrix rho = resonant_lambda_oracle(omega_p, omega_c, two_pi / omega_r);
    REQUIRE(std::real(rho.rho22()) == Approx(0.0099750).margin(1e-7));
    REQUIRE(std::abs(rho.rho33()) < 1e-12);
    REQUIRE(std::abs(rho.rho12()) == Approx(0.0993755).margin(1e-7));
  }

  SECTION("area 4 n pi returns to the ground state, 2(2n-1) pi empties |3>") {
    const double omega_p = two_pi * 0.05;
    const double omega_c = two_pi * 0.193649;
    const double omega_r = generalized_rabi(omega_p, omega_c);
    for (int n = 1; n <= 3; ++n) {
      const DensityMatrix back = resonant_lambda_oracle(omega_p, omega_c, 4.0 * n * M_PI / omega_r);
      REQUIRE(max_abs_diff(back.m, DensityMatrix::ground().m) < 1e-12);
      const DensityMatrix swap =
          resonant_lambda_oracle(omega_p, omega_c, 2.0 * (2 * n - 1) * M_PI / omega_r);
      REQUIRE(std::abs(swap.rho33()) < 1e-12);
      const double peak = std::pow(2.0 * omega_p * omega_c / (omega_r * omega_r), 2);
      REQUIRE(std::real(swap.rho22()) == Approx(peak).margin(1e-12));
    }
  }

  SECTION("zero drive is rejected") {
    REQUIRE_THROWS_AS(resonant_lambda_oracle(0.0, 0.0, 1.0), std::invalid_argument);
  }
}

TEST_CASE("integrator matches the resonant oracle", "[dynamics]") {
  // Both drive settings of the protocols, swept over four Rabi periods.
  struct Case {
    double omega_p, omega_c;
  };
  for (const Case& c : {Case{two_pi * 0.05, two_pi * 0.193649},
                        Case{two_pi * 1.767767, two_pi * 1.767767}}) {
    const double omega_r = generalized_rabi(c.omega_p, c.omega_c);
    const double t_max = 8.0 * M_PI / omega_r;
    Sequence seq;
    seq.pulses.push_back(make_raman_pulse(PulseLabel::custom, c.omega_p, c.omega_c, 0.0, t_max));
    seq.total_span = t_max;
    const auto traj = integrate_sequence(DensityMatrix::ground(), seq, AtomParams{}, t_max / 400.0);
    double err = 0.0;
    for (size_t i = 0; i < traj.times.size(); ++i) {
      const DensityMatrix oracle = resonant_lambda_oracle(c.omega_p, c.omega_c, traj.times[i]);
      err = std::max(err, max_abs_diff(traj.states[i].m, oracle.m));
    }
    REQUIRE(err < 1e-8);
  }
}

TEST_CASE("sequence integration bookkeeping", "[dynamics]") {
  SECTION("empty sequence holds the state constant") {
    Sequence seq;
    seq.total_span = 10.0;
    const auto traj = integrate_sequence(DensityMatrix::ground(), seq, AtomParams{}, 0.5);
    REQUIRE(traj.times.size() == 21);
    REQUIRE(traj.times.front() == 0.0);
    REQUIRE(traj.times.back() == 10.0);
    for (const auto& s : traj.states)
      REQUIRE(max_abs_diff(s.m, DensityMatrix::ground().m) == 0.0);
  }

  SECTION("complete transfer returns rho33 to zero at area 2 pi") {
    const double omega_r = khz_to_rad_per_us(200.0);
    const double omega_p = khz_to_rad_per_us(50.0);
    const double omega_c = std::sqrt(omega_r * omega_r - omega_p * omega_p);
    const double dur = solve_duration_for_area(omega_r, 1);
    REQUIRE(dur == Approx(5.0));
    Sequence seq;
    seq.pulses.push_back(make_raman_pulse(PulseLabel::D, omega_p, omega_c, 0.0, dur));
    seq.total_span = dur;
    const auto traj = integrate_sequence(DensityMatrix::ground(), seq, AtomParams{}, dur / 100.0);
    REQUIRE(std::abs(traj.states.back().rho33()) < 1e-9);
  }

  SECTION("invalid sequence is rejected") {
    Sequence seq;
    seq.pulses.push_back(make_raman_pulse(PulseLabel::D, 1.0, 1.0, 0.0, 1.0));
    seq.pulses.push_back(make_raman_pulse(PulseLabel::R1, 1.0, 1.0, 0.5, 1.0));
    seq.total_span = 3.0;
    REQUIRE_THROWS_AS(integrate_sequence(DensityMatrix::ground(), seq, AtomParams{}, 0.1),
                      std::invalid_argument);
  }

  SECTION("global error drops as dt^4 under refinement") {
    const double omega = two_pi * 0.5;
    AtomParams p;
    auto run_error = [&](double dt) {
      Sequence seq;
      seq.pulses.push_back(make_raman_pulse(PulseLabel::custom, omega, omega, 0.0, 2.0));
      seq.total_span = 2.0;
      DensityMatrix rho = DensityMatrix::ground();
      const long n = std::lround(2.0 / dt);
      for (long i = 0; i < n; ++i) rho = rk4_step(rho, i * dt, dt, seq, p);
      return max_abs_diff(rho.m, resonant_lambda_oracle(omega, omega, 2.0).m);
    };
    const double e1 = run_error(0.02);
    const double e2 = run_error(0.01);
    const double e3 = run_error(0.005);
    REQUIRE(e1 / e2 == Approx(16.0).margin(4.0));
    REQUIRE(e2 / e3 == Approx(16.0).margin(4.0));
  }
}
