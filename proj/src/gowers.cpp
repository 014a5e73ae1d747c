#include "hofa/gowers.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>

#include "hofa/detail/reduce.hpp"

namespace hofa {

namespace {

// |A|^k with overflow guard; returns -1 when the product leaves int64 range.
std::int64_t checked_pow(std::int64_t n, int k) {
    std::int64_t p = 1;
    for (int i = 0; i < k; ++i) {
        if (p > (std::numeric_limits<std::int64_t>::max)() / n) return -1;
        p *= n;
    }
    return p;
}

void require_budget(std::int64_t n, int k, const EvalCaps& caps, const char* where) {
    const std::int64_t evals = checked_pow(n, k);
    if (evals < 0 || evals > caps.max_evals)
        fail(ErrorKind::EnumerationTooLarge, std::string(where) + ": |A|^" + std::to_string(k) +
                                                 " exceeds the evaluation cap");
}

void require_order(int k, const char* where) {
    if (k < 1 || k > 16) fail(ErrorKind::InvalidOrder, std::string(where) + ": k must be in [1, 16]");
}

// Flat-index addition backed by a full n x n table when that is cheap.
class FlatAdder {
public:
    explicit FlatAdder(const GroupSpec& g) : g_(&g), n_(g.order) {
        if (n_ <= 2048) {
            table_.resize(static_cast<std::size_t>(n_) * n_);
            for (std::int64_t a = 0; a < n_; ++a)
                for (std::int64_t b = 0; b < n_; ++b)
                    table_[static_cast<std::size_t>(a) * n_ + b] = static_cast<std::int32_t>(add_index(*g_, a, b));
        }
    }

    std::int64_t add(std::int64_t a, std::int64_t b) const {
        if (!table_.empty()) return table_[static_cast<std::size_t>(a) * n_ + b];
        return add_index(*g_, a, b);
    }

private:
    const GroupSpec* g_;
    std::int64_t n_;
    std::vector<std::int32_t> table_;
};

double power_recursive(const GroupFunction& f, int k) {
    const std::int64_t n = f.group.order;
    if (k == 1) {
        std::vector<cplx> scratch = f.values;
        return std::norm(detail::sorted_mean(scratch));
    }
    std::vector<double> per_t(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(static)
    for (std::int64_t t = 0; t < n; ++t)
        per_t[static_cast<std::size_t>(t)] = power_recursive(delta_index(f, t), k - 1);
    return detail::pairwise_sum(per_t) / static_cast<double>(n);
}

double consistency_scale(const GroupFunction& f, int k) {
    const double linf = lp_norm(f, std::numeric_limits<double>::infinity());
    if (linf <= 1.0) return 1.0;
    const double s = std::pow(linf, std::ldexp(1.0, k));
    return std::isfinite(s) ? s : (std::numeric_limits<double>::max)();
}

/** Shared enumeration core for the brute-force norm and cube averages:
 *  average over all (t_1..t_k) of the x-expectation of the corner product.
 *  Tuples are processed in fixed blocks whose partial sums are combined in
 *  block order, so the result is independent of the thread count. */
template <typename CornerValue>
cplx corner_average(const GroupSpec& g, int k, CornerValue corner_value) {
    const std::int64_t n = g.order;
    const int corners = 1 << k;
    const std::int64_t tuples = checked_pow(n, k);
    const FlatAdder adder(g);

    constexpr std::int64_t kBlock = 4096;
    const std::int64_t nblocks = (tuples + kBlock - 1) / kBlock;
    std::vector<cplx> block_sums(static_cast<std::size_t>(nblocks));

#pragma omp parallel
    {
        std::vector<std::int64_t> ts(static_cast<std::size_t>(k));
        std::vector<std::int64_t> ssum(static_cast<std::size_t>(corners));
        std::vector<cplx> xs(static_cast<std::size_t>(n));
#pragma omp for schedule(static)
        for (std::int64_t b = 0; b < nblocks; ++b) {
            cplx acc(0.0, 0.0);
            const std::int64_t hi = std::min(tuples, (b + 1) * kBlock);
            for (std::int64_t tup = b * kBlock; tup < hi; ++tup) {
                std::int64_t rem = tup;
                for (int i = 0; i < k; ++i) {
                    ts[static_cast<std::size_t>(i)] = rem % n;
                    rem /= n;
                }
                ssum[0] = 0;
                for (int s = 1; s < corners; ++s) {
                    const int low = std::countr_zero(static_cast<unsigned>(s));
                    ssum[static_cast<std::size_t>(s)] =
                        adder.add(ssum[static_cast<std::size_t>(s & (s - 1))], ts[static_cast<std::size_t>(low)]);
                }
                for (std::int64_t x = 0; x < n; ++x) {
                    cplx prod(1.0, 0.0);
                    for (int s = 0; s < corners; ++s)
                        prod *= corner_value(s, adder.add(x, ssum[static_cast<std::size_t>(s)]));
                    xs[static_cast<std::size_t>(x)] = prod;
                }
                acc += detail::sorted_mean(xs);
            }
            block_sums[static_cast<std::size_t>(b)] = acc;
        }
    }
    return detail::pairwise_sum(block_sums) / static_cast<double>(tuples);
}

} // namespace

double gowers_power(const GroupFunction& f, int k, const EvalCaps& caps) {
    require_order(k, "gowers_power");
    require_budget(f.group.order, k, caps, "gowers_power");
    return power_recursive(f, k);
}

double gowers_norm(const GroupFunction& f, int k, const EvalCaps& caps) {
    const double p = gowers_power(f, k, caps);
    return std::pow(p, 1.0 / std::ldexp(1.0, k));
}

double gowers_power_bruteforce(const GroupFunction& f, int k, const EvalCaps& caps) {
    require_order(k, "gowers_power_bruteforce");
    require_budget(f.group.order, k + 1, caps, "gowers_power_bruteforce");

    const int kpar = k & 1;
    std::vector<bool> conj_mask(static_cast<std::size_t>(1) << k);
    for (int s = 0; s < (1 << k); ++s)
        conj_mask[static_cast<std::size_t>(s)] = (std::popcount(static_cast<unsigned>(s)) & 1) != kpar;

    const cplx* vals = f.values.data();
    const cplx avg = corner_average(f.group, k, [&](int s, std::int64_t idx) {
        const cplx v = vals[static_cast<std::size_t>(idx)];
        return conj_mask[static_cast<std::size_t>(s)] ? std::conj(v) : v;
    });

    const double tol = 1e-9 * consistency_scale(f, k);
    if (std::abs(avg.imag()) > tol)
        fail(ErrorKind::InternalConsistency, "gowers_power_bruteforce: average has a nonreal part of " +
                                                 std::to_string(avg.imag()));
    double re = avg.real();
    if (re < 0.0) {
        if (re < -tol)
            fail(ErrorKind::InternalConsistency,
                 "gowers_power_bruteforce: average is negative beyond tolerance: " + std::to_string(re));
        re = 0.0;
    }
    return re;
}

double gowers_norm_bruteforce(const GroupFunction& f, int k, const EvalCaps& caps) {
    const double p = gowers_power_bruteforce(f, k, caps);
    return std::pow(p, 1.0 / std::ldexp(1.0, k));
}

CubeSystem make_cube_system(int d, std::vector<GroupFunction> assignment) {
    if (d < 1 || d > 16) fail(ErrorKind::InvalidOrder, "make_cube_system: d must be in [1, 16]");
    const std::size_t want = static_cast<std::size_t>(1) << d;
    if (assignment.size() != want)
        fail(ErrorKind::IncompleteSystem, "make_cube_system: expected " + std::to_string(want) +
                                              " corner functions, got " + std::to_string(assignment.size()));
    for (const auto& fn : assignment) require_same_group(assignment[0].group, fn.group, "make_cube_system");
    CubeSystem sys;
    sys.d = d;
    sys.group = assignment[0].group;
    sys.assignment = std::move(assignment);
    return sys;
}

cplx cube_average(const CubeSystem& sys, const EvalCaps& caps) {
    if (sys.assignment.size() != static_cast<std::size_t>(1) << sys.d)
        fail(ErrorKind::IncompleteSystem, "cube_average: assignment does not cover every corner");
    require_budget(sys.group.order, sys.d + 1, caps, "cube_average");

    return corner_average(sys.group, sys.d, [&](int s, std::int64_t idx) {
        const cplx v = sys.assignment[static_cast<std::size_t>(s)].values[static_cast<std::size_t>(idx)];
        return (std::popcount(static_cast<unsigned>(s)) & 1) ? std::conj(v) : v;
    });
}

AdditivityReport additivity_check(const std::vector<GroupFunction>& components, int k, const EvalCaps& caps) {
    if (components.empty()) fail(ErrorKind::BadParameter, "additivity_check: no components given");
    for (const auto& c : components) require_same_group(components[0].group, c.group, "additivity_check");

    GroupFunction sum = components[0];
    for (std::size_t i = 1; i < components.size(); ++i) sum = add_functions(sum, components[i]);

    AdditivityReport rep;
    rep.k = k;
    rep.lhs = gowers_power(sum, k, caps);
    for (const auto& c : components) rep.component_powers.push_back(gowers_power(c, k, caps));
    std::vector<double> ps = rep.component_powers;
    rep.rhs = detail::pairwise_sum(ps);
    rep.gap = std::abs(rep.lhs - rep.rhs);
    return rep;
}

} // namespace hofa
