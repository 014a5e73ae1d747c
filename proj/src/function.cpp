#include "hofa/function.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "hofa/detail/reduce.hpp"
#include "hofa/detail/rng.hpp"

namespace hofa {

GroupFunction make_function(GroupSpec g, std::vector<cplx> values) {
    if (static_cast<std::int64_t>(values.size()) != g.order)
        fail(ErrorKind::DimensionMismatch,
             "make_function: " + std::to_string(values.size()) + " values for a group of order " +
                 std::to_string(g.order));
    return GroupFunction{std::move(g), std::move(values)};
}

GroupFunction zero_function(const GroupSpec& g) {
    return GroupFunction{g, std::vector<cplx>(static_cast<std::size_t>(g.order))};
}

GroupFunction constant_function(const GroupSpec& g, cplx c) {
    return GroupFunction{g, std::vector<cplx>(static_cast<std::size_t>(g.order), c)};
}

GroupFunction character_function(const GroupSpec& g, const CharacterIndex& m) {
    GroupFunction f = zero_function(g);
    const std::int64_t mi = index_of(g, m);
    for (std::int64_t x = 0; x < g.order; ++x)
        f.values[static_cast<std::size_t>(x)] = char_eval_index(g, mi, x);
    return f;
}

cplx inner(const GroupFunction& f, const GroupFunction& g) {
    require_same_group(f.group, g.group, "inner");
    std::vector<cplx> terms(f.values.size());
    for (std::size_t i = 0; i < f.values.size(); ++i)
        terms[i] = f.values[i] * std::conj(g.values[i]);
    return detail::pairwise_sum(terms) / static_cast<double>(f.values.size());
}

double lp_norm(const GroupFunction& f, double p) {
    if (std::isinf(p)) {
        double m = 0.0;
        for (const auto& v : f.values) m = std::max(m, std::abs(v));
        return m;
    }
    if (!(p >= 1.0))
        fail(ErrorKind::BadParameter, "lp_norm: p must be >= 1 or infinity");
    std::vector<double> terms(f.values.size());
    for (std::size_t i = 0; i < f.values.size(); ++i)
        terms[i] = std::pow(std::abs(f.values[i]), p);
    const double mean = detail::sorted_sum(terms) / static_cast<double>(terms.size());
    return std::pow(mean, 1.0 / p);
}

GroupFunction delta_index(const GroupFunction& f, std::int64_t t) {
    GroupFunction out = zero_function(f.group);
    for (std::int64_t x = 0; x < f.group.order; ++x) {
        const std::int64_t xt = add_index(f.group, x, t);
        out.values[static_cast<std::size_t>(x)] =
            f.values[static_cast<std::size_t>(xt)] * std::conj(f.values[static_cast<std::size_t>(x)]);
    }
    return out;
}

GroupFunction delta(const GroupFunction& f, const GroupElement& t) {
    return delta_index(f, index_of(f.group, t));
}

GroupFunction delta_multi(const GroupFunction& f, const std::vector<GroupElement>& ts) {
    GroupFunction out = f;
    for (const auto& t : ts) out = delta(out, t);
    return out;
}

GroupFunction shift(const GroupFunction& f, const GroupElement& a) {
    const std::int64_t ai = index_of(f.group, a);
    GroupFunction out = zero_function(f.group);
    for (std::int64_t x = 0; x < f.group.order; ++x)
        out.values[static_cast<std::size_t>(x)] =
            f.values[static_cast<std::size_t>(add_index(f.group, x, ai))];
    return out;
}

GroupElement psi_eval(const GroupSpec& g, const GroupElement& x, const std::vector<GroupElement>& ts,
                      const std::vector<int>& subset) {
    const int d = static_cast<int>(ts.size());
    std::vector<bool> seen(static_cast<std::size_t>(d) + 1, false);
    GroupElement out = x;
    for (int i : subset) {
        if (i < 1 || i > d)
            fail(ErrorKind::BadSubset,
                 "psi_eval: index " + std::to_string(i) + " outside {1.." + std::to_string(d) + "}");
        if (seen[static_cast<std::size_t>(i)])
            fail(ErrorKind::BadSubset, "psi_eval: repeated index " + std::to_string(i));
        seen[static_cast<std::size_t>(i)] = true;
        out = add(g, out, ts[static_cast<std::size_t>(i - 1)]);
    }
    return out;
}

bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    if (n < 4) return true;
    if (n % 2 == 0) return false;
    for (std::int64_t d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

GroupFunction gen_quadratic_phase(std::int64_t p, std::int64_t q, std::int64_t l, cplx c) {
    if (!is_prime(p))
        fail(ErrorKind::NotPrimeCyclic, "quadratic phase needs a prime modulus, got " + std::to_string(p));
    GroupSpec g = make_group({p});
    GroupFunction f = zero_function(g);
    const auto& table = (*g.roots)[0];
    const std::int64_t qm = ((q % p) + p) % p;
    const std::int64_t lm = ((l % p) + p) % p;
    for (std::int64_t x = 0; x < p; ++x) {
        const std::int64_t e = (qm * ((x * x) % p) + lm * x) % p;
        f.values[static_cast<std::size_t>(x)] = c * table[static_cast<std::size_t>(e)];
    }
    return f;
}

GroupFunction gen_random_unimodular(const GroupSpec& g, std::uint64_t seed) {
    detail::SplitMix64 rng(seed);
    GroupFunction f = zero_function(g);
    for (auto& v : f.values) {
        const double a = 2.0 * std::numbers::pi * rng.uniform();
        v = cplx(std::cos(a), std::sin(a));
    }
    return f;
}

GroupFunction add_functions(const GroupFunction& a, const GroupFunction& b) {
    require_same_group(a.group, b.group, "add_functions");
    GroupFunction out = a;
    for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] += b.values[i];
    return out;
}

GroupFunction sub_functions(const GroupFunction& a, const GroupFunction& b) {
    require_same_group(a.group, b.group, "sub_functions");
    GroupFunction out = a;
    for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] -= b.values[i];
    return out;
}

GroupFunction mul_functions(const GroupFunction& a, const GroupFunction& b) {
    require_same_group(a.group, b.group, "mul_functions");
    GroupFunction out = a;
    for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] *= b.values[i];
    return out;
}

GroupFunction scale_function(const GroupFunction& f, cplx c) {
    GroupFunction out = f;
    for (auto& v : out.values) v *= c;
    return out;
}

} // namespace hofa
