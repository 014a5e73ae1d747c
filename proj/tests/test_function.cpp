#include <algorithm>
#include <cmath>
#include <limits>

#include "doctest.h"

#include "common.hpp"
#include "hofa/function.hpp"

using namespace hofa;
using testutil::max_abs_diff;
using testutil::noise;
using testutil::zn;

TEST_SUITE("function") {

TEST_CASE("constructors validate sizes") {
    const GroupSpec g = make_group({6});
    CHECK_THROWS_AS(make_function(g, std::vector<cplx>(5)), Error);
    CHECK(zero_function(g).values.size() == 6);
    const GroupFunction c = constant_function(g, cplx(0.5, -0.25));
    for (const cplx v : c.values) CHECK(v == cplx(0.5, -0.25));
}

TEST_CASE("characters are unit vectors and orthogonal") {
    const GroupSpec g = make_group({2, 3, 4});
    for (std::int64_t m = 0; m < g.order; ++m) {
        const GroupFunction f = character_function(g, element_of(g, m));
        CHECK(std::abs(inner(f, f) - 1.0) < 1e-12);
        CHECK(std::abs(lp_norm(f, 2.0) - 1.0) < 1e-12);
        const GroupFunction h = character_function(g, element_of(g, (m + 1) % g.order));
        CHECK(std::abs(inner(f, h)) < 1e-12);
    }
}

TEST_CASE("lp_norm: p = 1, 2, infinity") {
    const GroupSpec g = zn(4);
    const GroupFunction f = make_function(g, {cplx(3, 4), cplx(0, 0), cplx(1, 0), cplx(0, -2)});
    CHECK(lp_norm(f, std::numeric_limits<double>::infinity()) == 5.0);
    CHECK(std::abs(lp_norm(f, 1.0) - 2.0) < 1e-15);
    CHECK(std::abs(lp_norm(f, 2.0) - std::sqrt(30.0 / 4.0)) < 1e-15);
    CHECK_THROWS_AS(lp_norm(f, 0.5), Error);
}

TEST_CASE("shift preserves every lp norm exactly") {
    const GroupSpec g = make_group({3, 4});
    const GroupFunction f = testutil::mixture(g, 11);
    for (std::int64_t a = 0; a < g.order; ++a) {
        const GroupFunction s = shift(f, element_of(g, a));
        for (const double p : {1.0, 2.0, 3.0, std::numeric_limits<double>::infinity()})
            CHECK(lp_norm(s, p) == lp_norm(f, p));
    }
}

TEST_CASE("shift composes additively") {
    const GroupSpec g = zn(7);
    const GroupFunction f = noise(g, 1);
    const GroupFunction s = shift(shift(f, {2}), {3});
    CHECK(max_abs_diff(s, shift(f, {5})) == 0.0);
}

TEST_CASE("delta multiplicativity") {
    const GroupSpec g = make_group({2, 6});
    const GroupFunction f = noise(g, 5);
    const GroupFunction h = testutil::mixture(g, 6);
    for (std::int64_t t = 0; t < g.order; ++t) {
        const GroupFunction lhs = delta_index(mul_functions(f, h), t);
        const GroupFunction rhs = mul_functions(delta_index(f, t), delta_index(h, t));
        CHECK(max_abs_diff(lhs, rhs) < 1e-12);
    }
}

TEST_CASE("delta_multi is invariant under permuting the shifts") {
    const GroupSpec g = zn(9);
    const GroupFunction f = testutil::mixture(g, 7);
    std::vector<GroupElement> ts = {{1}, {4}, {7}};
    const GroupFunction base = delta_multi(f, ts);
    while (std::next_permutation(ts.begin(), ts.end()))
        CHECK(max_abs_diff(delta_multi(f, ts), base) < 1e-12);
    CHECK(max_abs_diff(delta_multi(f, {}), f) == 0.0);
}

TEST_CASE("psi additivity over disjoint subsets") {
    const GroupSpec g = make_group({4, 5});
    const GroupElement x = {1, 3};
    const std::vector<GroupElement> ts = {{1, 1}, {2, 4}, {3, 2}, {0, 1}};
    const std::vector<int> s1 = {1, 3};
    const std::vector<int> s2 = {2, 4};
    GroupElement direct = psi_eval(g, x, ts, {1, 2, 3, 4});
    GroupElement sum1 = psi_eval(g, x, ts, s1);
    for (const int i : s2) sum1 = add(g, sum1, ts[static_cast<std::size_t>(i - 1)]);
    CHECK(direct == sum1);
    CHECK(psi_eval(g, x, ts, {}) == x);
}

TEST_CASE("psi rejects bad subsets") {
    const GroupSpec g = zn(5);
    const std::vector<GroupElement> ts = {{1}, {2}};
    CHECK_THROWS_AS(psi_eval(g, {0}, ts, {0}), Error);
    CHECK_THROWS_AS(psi_eval(g, {0}, ts, {3}), Error);
    CHECK_THROWS_AS(psi_eval(g, {0}, ts, {1, 1}), Error);
}

TEST_CASE("quadratic phase values") {
    constexpr double tau = 6.283185307179586476925286766559;
    const GroupFunction f = gen_quadratic_phase(5, 2, 3, cplx(0.5, 0.0));
    REQUIRE(f.group.order == 5);
    for (std::int64_t x = 0; x < 5; ++x) {
        const double phase = tau * static_cast<double>((2 * x * x + 3 * x) % 5) / 5.0;
        CHECK(std::abs(f.values[static_cast<std::size_t>(x)] - 0.5 * std::polar(1.0, phase)) < 1e-12);
    }
    CHECK_THROWS_AS(gen_quadratic_phase(6, 1), Error);
    try {
        gen_quadratic_phase(6, 1);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NotPrimeCyclic);
    }
}

TEST_CASE("unimodular noise is seed deterministic") {
    const GroupSpec g = make_group({2, 3, 4});
    const GroupFunction a = gen_random_unimodular(g, 42);
    const GroupFunction b = gen_random_unimodular(g, 42);
    CHECK(a.values == b.values);
    const GroupFunction c = gen_random_unimodular(g, 43);
    CHECK(a.values != c.values);
    for (const cplx v : a.values) CHECK(std::abs(std::abs(v) - 1.0) < 1e-12);
}

TEST_CASE("pointwise arithmetic") {
    const GroupSpec g = zn(6);
    const GroupFunction f = noise(g, 1);
    const GroupFunction h = noise(g, 2);
    const GroupFunction s = add_functions(f, h);
    const GroupFunction d = sub_functions(s, h);
    CHECK(max_abs_diff(d, f) < 1e-15);
    const GroupFunction p = mul_functions(f, h);
    for (std::size_t i = 0; i < 6; ++i) CHECK(p.values[i] == f.values[i] * h.values[i]);
    const GroupFunction sc = scale_function(f, cplx(0, 2));
    for (std::size_t i = 0; i < 6; ++i) CHECK(sc.values[i] == cplx(0, 2) * f.values[i]);
    CHECK_THROWS_AS(add_functions(f, noise(zn(7), 1)), Error);
}

TEST_CASE("is_prime") {
    CHECK_FALSE(is_prime(0));
    CHECK_FALSE(is_prime(1));
    CHECK(is_prime(2));
    CHECK(is_prime(3));
    CHECK_FALSE(is_prime(4));
    CHECK(is_prime(101));
    CHECK_FALSE(is_prime(1001));
    CHECK(is_prime(7919));
}

} // TEST_SUITE
