#include <doctest.h>

#include "tma/array_model.hpp"
#include "tma/errors.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

using namespace tma;

namespace {

ArrayConfig default_config() {
    return ArrayConfig{};  // 8 pairs, d = lambda/2, L = 10, genes 0..7
}

ExcitationSchedule constant_schedule(const ArrayConfig& cfg, int level) {
    return ExcitationSchedule(cfg.element_pairs, cfg.time_steps, level);
}

ExcitationSchedule random_schedule(const ArrayConfig& cfg, std::mt19937& rng) {
    ExcitationSchedule s(cfg.element_pairs, cfg.time_steps);
    std::uniform_int_distribution<int> dist(0, cfg.max_gene);
    for (int& g : s.chromosome()) g = dist(rng);
    return s;
}

} // namespace

TEST_CASE("harmonic coefficient at the carrier equals the mean excitation") {
    const ArrayConfig cfg = default_config();
    const ExcitationSchedule s = constant_schedule(cfg, 1);
    for (int p : {0, 3, 7}) {
        const auto a = harmonic_coefficient(cfg, s, p, 0);
        CHECK(a.real() == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(a.imag() == 0.0);
    }
}

TEST_CASE("harmonic coefficient vanishes when the prefactor sine hits a period") {
    const ArrayConfig cfg = default_config();
    const ExcitationSchedule s = constant_schedule(cfg, 1);
    const auto a = harmonic_coefficient(cfg, s, 0, 10);  // sin(pi*m/L) = sin(pi)
    CHECK(std::abs(a) < 1e-12);
}

TEST_CASE("single active step gives the closed-form phasor") {
    const ArrayConfig cfg = default_config();
    ExcitationSchedule s(cfg.element_pairs, cfg.time_steps, 0);
    s.set_gene(2, 0, 5);
    const auto a = harmonic_coefficient(cfg, s, 2, 5);
    // (5/(5*pi)) * exp(-j*pi/2) = -j/pi
    CHECK(a.real() == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(a.imag() == doctest::Approx(-1.0 / std::numbers::pi).epsilon(1e-14));
}

TEST_CASE("uniform schedule puts 16 at broadside") {
    const ArrayConfig cfg = default_config();
    const ExcitationSchedule s = constant_schedule(cfg, 1);
    const auto grid = uniform_angle_grid(5);
    const HarmonicPattern p = harmonic_pattern(cfg, s, 0, grid);
    CHECK(p.magnitude.front() == doctest::Approx(16.0).epsilon(1e-14));
}

TEST_CASE("single fully-driven pair follows the lone-pair cosine") {
    const ArrayConfig cfg = default_config();
    ExcitationSchedule s(cfg.element_pairs, cfg.time_steps, 0);
    for (int q = 0; q < cfg.time_steps; ++q) s.set_gene(0, q, 7);
    const auto grid = uniform_angle_grid(101);
    const HarmonicPattern p = harmonic_pattern(cfg, s, 0, grid);
    for (size_t i = 0; i < grid.size(); ++i) {
        const double expected =
            14.0 * std::abs(std::cos(std::numbers::pi * cfg.spacing_wavelengths * std::sin(grid[i])));
        CHECK(p.magnitude[i] == doctest::Approx(expected).epsilon(1e-12));
    }
    CHECK(p.magnitude.front() == doctest::Approx(14.0).epsilon(1e-14));
}

TEST_CASE("static schedules radiate no harmonics") {
    const ArrayConfig cfg = default_config();
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> dist(0, cfg.max_gene);
    ExcitationSchedule s(cfg.element_pairs, cfg.time_steps);
    for (int p = 0; p < cfg.element_pairs; ++p) {
        const int level = dist(rng);
        for (int q = 0; q < cfg.time_steps; ++q) s.set_gene(p, q, level);
    }
    REQUIRE(s.is_static());
    const auto grid = uniform_angle_grid(2001);
    for (int m = 1; m < cfg.time_steps; ++m) {
        const HarmonicPattern p = harmonic_pattern(cfg, s, m, grid);
        for (double v : p.magnitude) CHECK(v <= 1e-12);
    }
}

TEST_CASE("instantaneous field examples") {
    const ArrayConfig cfg = default_config();
    const double tp = cfg.modulation_period_seconds;

    SUBCASE("all ones") {
        const ExcitationSchedule s = constant_schedule(cfg, 1);
        for (double t : {0.0, 0.37 * tp, 0.999 * tp}) {
            const auto e = instantaneous_field(cfg, s, 0.0, t);
            CHECK(e.real() == doctest::Approx(16.0).epsilon(1e-14));
            CHECK(e.imag() == 0.0);
        }
    }
    SUBCASE("all zeros") {
        const ExcitationSchedule s = constant_schedule(cfg, 0);
        const auto e = instantaneous_field(cfg, s, 0.3, 0.5 * tp);
        CHECK(std::abs(e) == 0.0);
    }
    SUBCASE("single pair in the first step") {
        ExcitationSchedule s(cfg.element_pairs, cfg.time_steps, 0);
        s.set_gene(0, 0, 3);
        const auto e = instantaneous_field(cfg, s, 0.0, 0.05 * tp);
        CHECK(e.real() == doctest::Approx(6.0).epsilon(1e-14));
    }
    SUBCASE("time outside the period") {
        const ExcitationSchedule s = constant_schedule(cfg, 1);
        CHECK_THROWS_AS(instantaneous_field(cfg, s, 0.0, tp), ConfigError);
        CHECK_THROWS_AS(instantaneous_field(cfg, s, 0.0, -1e-9), ConfigError);
    }
}

TEST_CASE("numeric Fourier oracle basics") {
    const ArrayConfig cfg = default_config();
    SUBCASE("mean of a constant waveform") {
        const ExcitationSchedule s = constant_schedule(cfg, 1);
        const auto a = numeric_fourier_coefficient(cfg, s, 4, 0);
        CHECK(a.real() == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(a.imag() == 0.0);
    }
    SUBCASE("silent waveform") {
        const ExcitationSchedule s = constant_schedule(cfg, 0);
        for (int m : {-3, 0, 5}) CHECK(std::abs(numeric_fourier_coefficient(cfg, s, 0, m)) == 0.0);
    }
}

TEST_CASE("analytic coefficients match the piecewise integration oracle") {
    const ArrayConfig cfg = default_config();
    std::mt19937 rng(42);
    for (int trial = 0; trial < 50; ++trial) {
        const ExcitationSchedule s = random_schedule(cfg, rng);
        for (int p = 0; p < cfg.element_pairs; ++p) {
            for (int m = -10; m <= 10; ++m) {
                const auto analytic = harmonic_coefficient(cfg, s, p, m);
                const auto oracle = numeric_fourier_coefficient(cfg, s, p, m);
                CHECK(std::abs(analytic - oracle) <= 1e-12);
            }
        }
    }
}

TEST_CASE("conjugate symmetry across harmonic sign") {
    const ArrayConfig cfg = default_config();
    std::mt19937 rng(3);
    const ExcitationSchedule s = random_schedule(cfg, rng);
    const auto grid = uniform_angle_grid(257);
    for (int m = 1; m <= 10; ++m) {
        for (int p = 0; p < cfg.element_pairs; ++p) {
            const auto plus = harmonic_coefficient(cfg, s, p, m);
            const auto minus = harmonic_coefficient(cfg, s, p, -m);
            CHECK(std::abs(minus - std::conj(plus)) <= 1e-12);
        }
        const HarmonicPattern pp = harmonic_pattern(cfg, s, m, grid);
        const HarmonicPattern pm = harmonic_pattern(cfg, s, -m, grid);
        for (size_t i = 0; i < grid.size(); ++i) {
            CHECK(std::abs(pp.magnitude[i] - pm.magnitude[i]) <= 1e-12);
        }
    }
}

TEST_CASE("patterns scale linearly with a uniform gene factor") {
    ArrayConfig cfg = default_config();
    cfg.max_gene = 21;  // room for the scaled copy
    std::mt19937 rng(11);
    ExcitationSchedule s(cfg.element_pairs, cfg.time_steps);
    std::uniform_int_distribution<int> dist(0, 7);
    for (int& g : s.chromosome()) g = dist(rng);

    const int factor = 3;
    ExcitationSchedule scaled = s;
    for (int& g : scaled.chromosome()) g *= factor;

    const auto grid = uniform_angle_grid(101);
    for (int m : {0, 1, 4, 9}) {
        const HarmonicPattern base = harmonic_pattern(cfg, s, m, grid);
        const HarmonicPattern big = harmonic_pattern(cfg, scaled, m, grid);
        for (size_t i = 0; i < grid.size(); ++i) {
            CHECK(big.magnitude[i] == doctest::Approx(factor * base.magnitude[i]).epsilon(1e-12));
        }
    }
}

TEST_CASE("broadside carrier level equals twice the mean total excitation") {
    const ArrayConfig cfg = default_config();
    std::mt19937 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        const ExcitationSchedule s = random_schedule(cfg, rng);
        const auto grid = uniform_angle_grid(3);
        const HarmonicPattern p = harmonic_pattern(cfg, s, 0, grid);
        const double expected = 2.0 * cfg.step_fraction() * static_cast<double>(s.gene_sum());
        CHECK(p.magnitude.front() == doctest::Approx(expected).epsilon(1e-14));
    }
}

TEST_CASE("dimension and grid validation") {
    const ArrayConfig cfg = default_config();
    const ExcitationSchedule wrong(cfg.element_pairs + 1, cfg.time_steps, 1);
    CHECK_THROWS_AS(harmonic_coefficient(cfg, wrong, 0, 0), ConfigError);

    const ExcitationSchedule s = constant_schedule(cfg, 1);
    CHECK_THROWS_AS(harmonic_coefficient(cfg, s, -1, 0), ConfigError);
    CHECK_THROWS_AS(harmonic_coefficient(cfg, s, cfg.element_pairs, 0), ConfigError);

    const std::vector<double> unsorted = {0.0, 0.3, 0.2};
    CHECK_THROWS_AS(harmonic_pattern(cfg, s, 0, unsorted), ConfigError);
    const std::vector<double> outside = {0.0, 2.0};
    CHECK_THROWS_AS(harmonic_pattern(cfg, s, 0, outside), ConfigError);
    CHECK_THROWS_AS(harmonic_pattern(cfg, s, 0, std::vector<double>{}), ConfigError);

    ExcitationSchedule hot = s;
    hot.set_gene(0, 0, cfg.max_gene + 1);
    CHECK_THROWS_AS(harmonic_pattern(cfg, hot, 0, uniform_angle_grid(5)), ConfigError);
}

TEST_CASE("config field validation") {
    ArrayConfig cfg = default_config();
    cfg.element_pairs = 0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = default_config();
    cfg.spacing_wavelengths = 0.0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = default_config();
    cfg.time_steps = 0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    CHECK_NOTHROW(default_config().validate());
    CHECK(default_config().step_fraction() == doctest::Approx(0.1));
    CHECK(default_config().modulation_frequency_hz() == doctest::Approx(1e5));
}
