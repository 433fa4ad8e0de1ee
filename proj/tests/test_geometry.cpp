#include <catch2/catch_amalgamated.hpp>

#include "ramanecho/geometry.hpp"
#include "ramanecho/units.hpp"

using namespace ramanecho;
using Catch::Approx;

namespace {
const double kOmega = wavelength_nm_to_omega(606.0);
const Vector3 kZ = Vector3::UnitZ();
}  // namespace

TEST_CASE("spin grating wavevector", "[geometry]") {
  SECTION("collinear degenerate beams write no grating") {
    const Vector3 k = spin_grating_wavevector({kZ, kOmega}, {kZ, kOmega});
    REQUIRE(k.norm() == 0.0);
  }
  SECTION("counterpropagating beams write a 2k grating") {
    const Vector3 k = spin_grating_wavevector({kZ, kOmega}, {-kZ, kOmega});
    REQUIRE(k.norm() == Approx(2.0 * kOmega / speed_of_light).epsilon(1e-12));
  }
  SECTION("small crossing angle gives 2 k sin(theta/2)") {
    const double theta = 0.05;
    const Vector3 tilted{std::sin(theta), 0.0, std::cos(theta)};
    const Vector3 k = spin_grating_wavevector({kZ, kOmega}, {tilted, kOmega});
    REQUIRE(k.norm() ==
            Approx(2.0 * (kOmega / speed_of_light) * std::sin(theta / 2.0)).epsilon(1e-9));
  }
  SECTION("the grating depends only on the writing beams") {
    const WaveVector p{kZ, kOmega};
    const WaveVector c1{-kZ, kOmega * 1.001};
    const Vector3 k1 = spin_grating_wavevector(p, c1);
    const Vector3 k2 = spin_grating_wavevector(p, c1);  // nothing else can enter
    REQUIRE((k1 - k2).norm() == 0.0);
  }
}

TEST_CASE("echo wavevector algebra", "[geometry]") {
  SECTION("reusing the coupling beam cancels: k_E = k_P, forward") {
    const WaveVector c1{kZ, kOmega};
    const EchoGeometry e = echo_wavevector({{kZ, kOmega}, c1, c1});
    REQUIRE((e.k_E_vector - Vector3(kZ * (kOmega / speed_of_light))).norm() == 0.0);
    REQUIRE(e.mismatch == 0.0);
    REQUIRE(e.classification == GeometryClass::forward);
  }
  SECTION("counterpropagating readout retraces the data path") {
    const EchoGeometry e = echo_wavevector({{kZ, kOmega}, {kZ, kOmega}, {-kZ, kOmega}});
    REQUIRE(e.classification == GeometryClass::backward_conjugate);
    REQUIRE(e.mismatch / (e.omega_E / speed_of_light) < 1e-12);
    REQUIRE(e.k_E_vector.dot(kZ) < 0.0);
  }
  SECTION("noncollinear writing with reused coupling reports its mismatch") {
    const double theta = 0.1;
    const Vector3 tilted{std::sin(theta), 0.0, std::cos(theta)};
    const WaveVector c1{tilted, kOmega};
    const EchoGeometry e = echo_wavevector({{kZ, kOmega}, c1, {-tilted, kOmega}});
    REQUIRE(e.mismatch > 0.0);
  }
  SECTION("linear in each term: scaling frequencies scales the mismatch") {
    const double theta = 0.17;
    const Vector3 tilted{std::sin(theta), 0.0, std::cos(theta)};
    auto mism = [&](double scale) {
      return echo_wavevector({{kZ, kOmega * scale}, {tilted, kOmega * scale},
                              {-kZ, kOmega * scale}})
          .mismatch;
    };
    REQUIRE(mism(2.0) == Approx(2.0 * mism(1.0)).epsilon(1e-12));
  }
  SECTION("nonpositive echo frequency is rejected") {
    REQUIRE_THROWS_AS(echo_wavevector({{kZ, kOmega}, {kZ, 3.0 * kOmega}, {-kZ, kOmega}}),
                      std::invalid_argument);
  }
}

TEST_CASE("geometry classification", "[geometry]") {
  // Writing beams crossed at 0.1 rad leave a nonzero grating; a readout that
  // ignores it violates the magnitude condition.
  const Vector3 tilted{std::sin(0.1), 0.0, std::cos(0.1)};

  SECTION("orthogonal readout of a crossed-beam grating is phase mismatched") {
    const EchoGeometry e =
        echo_wavevector({{kZ, kOmega}, {tilted, kOmega}, {Vector3::UnitX(), kOmega}});
    REQUIRE(e.classification == GeometryClass::mismatched);
    REQUIRE(phase_mismatch(e) > 0.0);
  }
  SECTION("readout rotated 10 degrees off the conjugate direction is mismatched") {
    const double angle = M_PI + 0.1 + 10.0 * M_PI / 180.0;  // -tilted, rotated in-plane
    const Vector3 rotated{std::sin(angle), 0.0, std::cos(angle)};
    const EchoGeometry e = echo_wavevector({{kZ, kOmega}, {tilted, kOmega}, {rotated, kOmega}});
    REQUIRE(phase_mismatch(e) > 0.0);
    REQUIRE(e.classification == GeometryClass::mismatched);
  }
  SECTION("collinear writing cancels, so a tilted readout stays on-shell") {
    const EchoGeometry e = echo_wavevector({{kZ, kOmega}, {kZ, kOmega}, {tilted, kOmega}});
    REQUIRE(phase_mismatch(e) == 0.0);
    REQUIRE(e.classification == GeometryClass::noncollinear);
  }
  SECTION("all four beams co-propagating is forward") {
    const EchoGeometry e = echo_wavevector({{kZ, kOmega}, {kZ, kOmega * (1.0 + 1e-9)},
                                            {kZ, kOmega * (1.0 + 1e-9)}});
    REQUIRE(e.classification == GeometryClass::forward);
  }
  SECTION("unit-norm invariant holds after construction") {
    const WaveVector w{Vector3{1.0, 1.0, 1.0}, kOmega};
    REQUIRE(w.direction.norm() == Approx(1.0).epsilon(1e-15));
  }
}
