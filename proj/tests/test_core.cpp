#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "dcesim/core.hpp"
#include "test_util.hpp"

using namespace dcesim;
using Catch::Approx;

TEST_CASE("cavity: unit normalization gives omega0 = 1") {
    // m = 1, L = 2 pi c/n0 (c = 1) makes k_m c/n0 = 1 exactly
    const double n0 = 1.5;
    const auto cfg = make_cavity(1, 2.0 * std::numbers::pi / n0, n0);
    CHECK(cfg.base_frequency == Approx(1.0).epsilon(1e-15));
}

TEST_CASE("cavity: omega0 is linear in the mode index") {
    const auto one = make_cavity(1, 3.7, 1.33);
    const auto two = make_cavity(2, 3.7, 1.33);
    CHECK(two.base_frequency == Approx(2.0 * one.base_frequency).epsilon(1e-15));
}

TEST_CASE("cavity: recomputing omega0 from stored fields is exact") {
    const auto cfg = make_cavity(3, 1.234, 1.77);
    const double k = 2.0 * std::numbers::pi * 3.0 / 1.234;
    CHECK(cfg.wavenumber == k);
    CHECK(cfg.base_frequency == k / 1.77);
}

TEST_CASE("cavity: invalid inputs name the offending field") {
    CHECK_THROWS_MATCHES(make_cavity(0, 1.0, 1.0), ValidationError,
                         Catch::Matchers::MessageMatches(
                             Catch::Matchers::ContainsSubstring("mode_index")));
    CHECK_THROWS_MATCHES(make_cavity(1, -1.0, 1.0), ValidationError,
                         Catch::Matchers::MessageMatches(
                             Catch::Matchers::ContainsSubstring("cavity_length")));
    CHECK_THROWS_MATCHES(make_cavity(1, 1.0, 0.0), ValidationError,
                         Catch::Matchers::MessageMatches(
                             Catch::Matchers::ContainsSubstring("refractive_index_base")));
}

TEST_CASE("unit round-trip: internal units and back to 1e-12 relative") {
    for (int trial = 0; trial < 200; ++trial) {
        const int m = 1 + static_cast<int>(test_util::uniform(0.0, 12.0));
        const double length = test_util::uniform(0.1, 50.0);
        const double n0 = test_util::uniform(1.0, 3.0);
        const auto cfg = make_cavity(m, length, n0);

        // Physical frequency -> units of omega0 -> back.
        const double omega_phys = test_util::uniform(0.1, 10.0);
        const double round = (omega_phys / cfg.base_frequency) * cfg.base_frequency;
        CHECK(round == Approx(omega_phys).epsilon(1e-12));

        // Physical time -> omega0*t -> back.
        const double t_phys = test_util::uniform(0.1, 1e4);
        CHECK((t_phys * cfg.base_frequency) / cfg.base_frequency ==
              Approx(t_phys).epsilon(1e-12));
    }
}

TEST_CASE("quasimode: definitional values") {
    const auto cfg = make_cavity(1, 2.0 * std::numbers::pi, 1.0);
    const auto q100 = make_quasimode(cfg, 100.0);
    CHECK(q100.linewidth == Approx(0.01).epsilon(1e-15));
    CHECK(q100.coherence_time == Approx(100.0).epsilon(1e-15));
    const auto q50 = make_quasimode(cfg, 50.0);
    CHECK(q50.linewidth == Approx(0.02).epsilon(1e-15));
}

TEST_CASE("quasimode: tau*gamma = 1 and gamma*Q = omega_m to machine precision") {
    const auto cfg = make_cavity(1, 2.0 * std::numbers::pi, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        const double q = std::exp(test_util::uniform(std::log(1.0), std::log(1e9)));
        const auto qm = make_quasimode(cfg, q);
        CHECK(qm.coherence_time * qm.linewidth == Approx(1.0).epsilon(4e-16));
        CHECK(qm.linewidth * qm.quality_factor ==
              Approx(qm.center_frequency).epsilon(4e-16));
    }
}

TEST_CASE("quasimode: the perfect cavity is not representable") {
    const auto cfg = make_cavity(1, 2.0 * std::numbers::pi, 1.0);
    CHECK_THROWS_AS(make_quasimode(cfg, std::numeric_limits<double>::infinity()),
                    ValidationError);
    CHECK_THROWS_AS(make_quasimode(cfg, 0.0), ValidationError);
    CHECK_THROWS_AS(make_quasimode(cfg, -3.0), ValidationError);
    CHECK_THROWS_AS(make_quasimode_from_linewidth(cfg, 0.0), ValidationError);
}

TEST_CASE("modulation: derived quantities hold by construction") {
    for (int trial = 0; trial < 200; ++trial) {
        const double eps = test_util::uniform(0.0, 0.5);
        const double omega = test_util::uniform(0.05, 10.0);
        const auto prof = make_modulation(eps, omega);
        // 2 nu0/omega0 = epsilon and alpha Omega/(2 omega0) = epsilon
        CHECK(2.0 * prof.coupling_rate == Approx(eps).margin(1e-12 * (1.0 + eps)));
        CHECK(prof.bessel_argument * omega / 2.0 == Approx(eps).margin(1e-12 * (1.0 + eps)));
    }
}

TEST_CASE("modulation: l = 0 resonance has alpha = epsilon") {
    const auto prof = make_modulation(0.02, 2.0);
    CHECK(prof.bessel_argument == 0.02);
    CHECK(prof.coupling_rate == 0.01);
}

TEST_CASE("modulation: zero drive and invalid amplitudes") {
    const auto off = make_modulation(0.0, 2.0);
    CHECK(off.coupling_rate == 0.0);
    CHECK(off.bessel_argument == 0.0);
    CHECK_THROWS_AS(make_modulation(1.0, 2.0), ValidationError);
    CHECK_THROWS_AS(make_modulation(1.5, 2.0), ValidationError);
    CHECK_THROWS_AS(make_modulation(-0.1, 2.0), ValidationError);
    CHECK_THROWS_AS(make_modulation(0.01, 0.0), ValidationError);
}

TEST_CASE("bogoliubov pair: vacuum initial condition") {
    const BogoliubovPair p{};
    CHECK(p.u == std::complex<double>(1.0, 0.0));
    CHECK(p.v == std::complex<double>(0.0, 0.0));
    CHECK(p.pair_number() == 0.0);
    CHECK(p.unitarity_defect() == 0.0);
}

TEST_CASE("method tags round-trip") {
    for (Method m : all_methods()) CHECK(parse_method(method_tag(m)) == m);
    CHECK_THROWS_AS(parse_method("quadratur"), ValidationError);
}

TEST_CASE("time grid: log default is strictly increasing with both ends") {
    const std::vector<double> t = make_times(TimeGrid{}, 0.01);
    REQUIRE(t.size() == 200);
    CHECK(t.front() == Approx(1e-3 * 100.0).epsilon(1e-12));
    CHECK(t.back() == Approx(10.0 * 100.0).epsilon(1e-12));
    for (std::size_t i = 1; i < t.size(); ++i) CHECK(t[i] > t[i - 1]);
}

TEST_CASE("time grid: linear spacing and validation") {
    const std::vector<double> t = make_times(TimeGrid{0.0, 1.0, 5, false}, 0.1);
    REQUIRE(t.size() == 5);
    CHECK(t[0] == 0.0);
    CHECK(t[4] == Approx(10.0));
    CHECK(t[2] == Approx(5.0));

    CHECK_THROWS_AS(make_times(TimeGrid{1e-3, 10.0, 0, true}, 0.1), ValidationError);
    CHECK_THROWS_AS(make_times(TimeGrid{0.0, 10.0, 5, true}, 0.1), ValidationError);
    CHECK_THROWS_AS(make_times(TimeGrid{10.0, 1.0, 5, false}, 0.1), ValidationError);
}
