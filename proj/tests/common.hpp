#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "hofa/fourier.hpp"
#include "hofa/function.hpp"

namespace testutil {

inline hofa::GroupSpec zn(std::int64_t n) { return hofa::make_group({n}); }

inline hofa::GroupFunction noise(const hofa::GroupSpec& g, std::uint64_t seed) {
    return hofa::gen_random_unimodular(g, seed);
}

inline hofa::GroupFunction noise(std::int64_t n, std::uint64_t seed) {
    return noise(zn(n), seed);
}

/** Non-unimodular test input: a fixed mixture of two unimodular draws. */
inline hofa::GroupFunction mixture(const hofa::GroupSpec& g, std::uint64_t seed) {
    return hofa::add_functions(hofa::scale_function(hofa::gen_random_unimodular(g, seed), 0.7),
                               hofa::scale_function(hofa::gen_random_unimodular(g, seed + 1000), hofa::cplx(0.2, 0.1)));
}

inline double max_abs_diff(const hofa::GroupFunction& a, const hofa::GroupFunction& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) m = std::max(m, std::abs(a.values[i] - b.values[i]));
    return m;
}

/** Two quadratic phases with equal weight 1/sqrt(2), a degenerate
 *  spectral cluster by construction. */
inline hofa::GroupFunction equal_weight_pair(std::int64_t p, std::int64_t q1, std::int64_t q2) {
    const double c = 1.0 / std::sqrt(2.0);
    return hofa::add_functions(hofa::gen_quadratic_phase(p, q1, 0, hofa::cplx(c, 0.0)),
                               hofa::gen_quadratic_phase(p, q2, 0, hofa::cplx(c, 0.0)));
}

/** |<a,b>| / (||a||_2 ||b||_2). */
inline double correlation(const hofa::GroupFunction& a, const hofa::GroupFunction& b) {
    const double na = hofa::lp_norm(a, 2.0), nb = hofa::lp_norm(b, 2.0);
    if (na == 0.0 || nb == 0.0) return 0.0;
    return std::abs(hofa::inner(a, b)) / (na * nb);
}

} // namespace testutil
