#include <cmath>

#include "doctest.h"

#include "common.hpp"
#include "hofa/fourier.hpp"
#include "hofa/gowers.hpp"
#include "hofa/serial.hpp"

using namespace hofa;
using testutil::mixture;
using testutil::noise;
using testutil::zn;

TEST_SUITE("gowers") {

TEST_CASE("U1 is the absolute mean") {
    const GroupSpec g = zn(8);
    CHECK(std::abs(gowers_norm(character_function(g, {3}), 1)) < 1e-12);
    CHECK(std::abs(gowers_norm(constant_function(g, cplx(0.3, -0.4)), 1) - 0.5) < 1e-15);
    CHECK(std::abs(gowers_norm_bruteforce(constant_function(g, cplx(0.3, -0.4)), 1) - 0.5) < 1e-12);
}

TEST_CASE("recursive norm equals the brute-force norm") {
    for (const GroupSpec& g : {make_group({12}), make_group({2, 3, 4}), make_group({16}), make_group({3, 3})}) {
        for (std::uint64_t seed = 0; seed < 3; ++seed) {
            const GroupFunction f = seed == 2 ? mixture(g, seed) : noise(g, seed);
            for (int k = 1; k <= 3; ++k)
                CHECK(std::abs(gowers_norm(f, k) - gowers_norm_bruteforce(f, k)) < 1e-10);
        }
    }
    // one larger order at k = 2
    const GroupFunction f = noise(zn(101), 5);
    CHECK(std::abs(gowers_norm(f, 2) - gowers_norm_bruteforce(f, 2)) < 1e-10);
}

TEST_CASE("shift invariance is exact") {
    const GroupSpec g = make_group({2, 3, 4});
    const GroupFunction f = mixture(g, 17);
    for (const std::int64_t a : {1, 7, 23}) {
        const GroupFunction s = shift(f, element_of(g, a));
        for (int k = 1; k <= 3; ++k) {
            CHECK(gowers_norm(s, k) == gowers_norm(f, k));
            CHECK(gowers_norm_bruteforce(s, k) == gowers_norm_bruteforce(f, k));
        }
    }
}

TEST_CASE("modulation invariance for k >= 2") {
    const GroupSpec g = zn(12);
    const GroupFunction f = mixture(g, 23);
    for (const std::int64_t m : {1, 5}) {
        const GroupFunction fm = mul_functions(f, character_function(g, {m}));
        for (int k = 2; k <= 3; ++k)
            CHECK(std::abs(gowers_norm(fm, k) - gowers_norm(f, k)) < 1e-10);
    }
}

TEST_CASE("monotonicity in k for bounded functions") {
    const GroupSpec g = zn(12);
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const GroupFunction f = noise(g, seed);
        const double u1 = gowers_norm(f, 1);
        const double u2 = gowers_norm(f, 2);
        const double u3 = gowers_norm(f, 3);
        CHECK(u1 <= u2 + 1e-12);
        CHECK(u2 <= u3 + 1e-12);
    }
}

TEST_CASE("pinned quadratic phase constants") {
    const GroupFunction f = gen_quadratic_phase(5, 1);
    CHECK(std::abs(gowers_power_bruteforce(f, 2) - 0.2) < 1e-12);
    CHECK(std::abs(gowers_norm_bruteforce(f, 2) - 0.668740304976422) < 1e-10);
    CHECK(std::abs(gowers_norm_bruteforce(f, 3) - 1.0) < 1e-10);
    CHECK(std::abs(gowers_norm(f, 3) - 1.0) < 1e-10);
}

TEST_CASE("U2 responds only to the linear coefficient, with the sandwich") {
    const std::int64_t p = 31;
    const GroupFunction f =
        add_functions(gen_quadratic_phase(p, 1, 0, cplx(0.6, 0.0)),
                      scale_function(character_function(zn(p), {1}), cplx(0.5, 0.0)));
    const FourierSpectrum s = dft(f);
    double lmax = 0.0;
    for (const cplx v : s.coeffs) lmax = std::max(lmax, std::abs(v));
    const double u2 = gowers_norm(f, 2);
    CHECK(lmax <= u2 + 1e-12);
    CHECK(u2 <= std::sqrt(lmax) + 1e-12);
    CHECK(std::abs(u2 - 0.5) < 2.0 * std::pow(static_cast<double>(p), -0.25));
}

TEST_CASE("order validation") {
    const GroupFunction f = noise(zn(4), 1);
    CHECK_THROWS_AS(gowers_norm(f, 0), Error);
    CHECK_THROWS_AS(gowers_norm(f, 17), Error);
    CHECK_THROWS_AS(gowers_norm_bruteforce(f, 0), Error);
    try {
        gowers_norm(f, 0);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::InvalidOrder);
    }
}

TEST_CASE("evaluation caps") {
    const GroupFunction f = noise(zn(101), 1);
    EvalCaps tiny;
    tiny.max_evals = 1000;
    CHECK_THROWS_AS(gowers_power_bruteforce(f, 3, tiny), Error);
    CHECK_THROWS_AS(gowers_power(f, 3, tiny), Error);
    try {
        gowers_power_bruteforce(f, 3, tiny);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::EnumerationTooLarge);
    }
}

TEST_CASE("cube averages") {
    const GroupSpec g = zn(8);
    const GroupFunction f = mixture(g, 31);

    SUBCASE("equal corners reproduce the Gowers power") {
        for (int d = 1; d <= 3; ++d) {
            const CubeSystem sys = make_cube_system(d, std::vector<GroupFunction>(std::size_t(1) << d, f));
            const cplx avg = cube_average(sys);
            CHECK(std::abs(avg.imag()) < 1e-12);
            CHECK(std::abs(avg.real() - gowers_power(f, d)) < 1e-10);
        }
    }

    SUBCASE("mixed corners agree with the serial oracle") {
        std::vector<GroupFunction> corners;
        for (std::uint64_t s = 0; s < 4; ++s) corners.push_back(noise(g, 100 + s));
        const CubeSystem sys = make_cube_system(2, corners);
        CHECK(std::abs(cube_average(sys) - serial::cube_average(sys)) < 1e-12);
    }

    SUBCASE("system validation") {
        CHECK_THROWS_AS(make_cube_system(2, {f, f, f}), Error);
        CHECK_THROWS_AS(make_cube_system(0, {}), Error);
        std::vector<GroupFunction> bad = {f, f, f, noise(zn(9), 0)};
        CHECK_THROWS_AS(make_cube_system(2, bad), Error);
    }
}

TEST_CASE("additivity of the 2^k power for orthogonal characters") {
    const GroupSpec g = zn(8);
    const std::vector<GroupFunction> comps = {character_function(g, {1}), character_function(g, {2})};
    const AdditivityReport rep = additivity_check(comps, 2);
    CHECK(std::abs(rep.lhs - 2.0) < 1e-10);
    CHECK(std::abs(rep.rhs - 2.0) < 1e-10);
    CHECK(std::abs(rep.gap) < 1e-10);
}

TEST_CASE("additivity gap for planted quadratics stays under 2/sqrt(p)") {
    const std::int64_t p = 7;
    const std::vector<GroupFunction> comps = {gen_quadratic_phase(p, 1, 0, cplx(0.8, 0.0)),
                                              gen_quadratic_phase(p, 3, 0, cplx(0.6, 0.0))};
    const AdditivityReport rep = additivity_check(comps, 3);
    CHECK(std::abs(rep.rhs - (std::pow(0.8, 8) + std::pow(0.6, 8))) < 1e-12);
    CHECK(std::abs(rep.gap) <= 2.0 / std::sqrt(static_cast<double>(p)));
    CHECK_THROWS_AS(additivity_check({}, 2), Error);
}

} // TEST_SUITE
