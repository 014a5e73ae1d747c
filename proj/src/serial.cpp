#include "hofa/serial.hpp"

#include <bit>
#include <cmath>

namespace hofa::serial {

namespace {

std::int64_t ipow(std::int64_t n, int k) {
    std::int64_t p = 1;
    for (int i = 0; i < k; ++i) p *= n;
    return p;
}

void decode_tuple(std::int64_t tup, std::int64_t n, int k, std::vector<std::int64_t>& ts) {
    for (int i = k - 1; i >= 0; --i) {
        ts[static_cast<std::size_t>(i)] = tup % n;
        tup /= n;
    }
}

void subset_sums(const GroupSpec& g, const std::vector<std::int64_t>& ts, int corners,
                 std::vector<std::int64_t>& ssum) {
    ssum[0] = 0;
    for (int s = 1; s < corners; ++s) {
        const int low = std::countr_zero(static_cast<unsigned>(s));
        ssum[static_cast<std::size_t>(s)] =
            add_index(g, ssum[static_cast<std::size_t>(s & (s - 1))], ts[static_cast<std::size_t>(low)]);
    }
}

} // namespace

double gowers_power_bruteforce(const GroupFunction& f, int k) {
    const GroupSpec& g = f.group;
    const std::int64_t n = g.order;
    const std::int64_t tuples = ipow(n, k);
    const int corners = 1 << k;
    const int kpar = k & 1;

    std::vector<std::int64_t> ts(static_cast<std::size_t>(k)), ssum(static_cast<std::size_t>(corners));
    cplx total(0.0, 0.0);
    for (std::int64_t tup = 0; tup < tuples; ++tup) {
        decode_tuple(tup, n, k, ts);
        subset_sums(g, ts, corners, ssum);
        for (std::int64_t x = 0; x < n; ++x) {
            cplx prod(1.0, 0.0);
            for (int s = 0; s < corners; ++s) {
                const cplx v = f.values[static_cast<std::size_t>(
                    add_index(g, x, ssum[static_cast<std::size_t>(s)]))];
                prod *= ((std::popcount(static_cast<unsigned>(s)) & 1) != kpar) ? std::conj(v) : v;
            }
            total += prod;
        }
    }
    return (total / static_cast<double>(tuples * n)).real();
}

cplx cube_average(const CubeSystem& sys) {
    const GroupSpec& g = sys.group;
    const std::int64_t n = g.order;
    const std::int64_t tuples = ipow(n, sys.d);
    const int corners = 1 << sys.d;

    std::vector<std::int64_t> ts(static_cast<std::size_t>(sys.d)), ssum(static_cast<std::size_t>(corners));
    cplx total(0.0, 0.0);
    for (std::int64_t tup = 0; tup < tuples; ++tup) {
        decode_tuple(tup, n, sys.d, ts);
        subset_sums(g, ts, corners, ssum);
        for (std::int64_t x = 0; x < n; ++x) {
            cplx prod(1.0, 0.0);
            for (int s = 0; s < corners; ++s) {
                const cplx v = sys.assignment[static_cast<std::size_t>(s)].values[static_cast<std::size_t>(
                    add_index(g, x, ssum[static_cast<std::size_t>(s)]))];
                prod *= (std::popcount(static_cast<unsigned>(s)) & 1) ? std::conj(v) : v;
            }
            total += prod;
        }
    }
    return total / static_cast<double>(tuples * n);
}

MultilinearTensor vtilde(const GroupFunction& f, int k) {
    const GroupSpec& g = f.group;
    const std::int64_t n = g.order;
    const std::int64_t tuples = ipow(n, k);
    const int corners = 1 << k;

    MultilinearTensor T{g, k, std::vector<cplx>(static_cast<std::size_t>(tuples))};
    std::vector<std::int64_t> ts(static_cast<std::size_t>(k)), ssum(static_cast<std::size_t>(corners));
    for (std::int64_t tup = 0; tup < tuples; ++tup) {
        decode_tuple(tup, n, k, ts);
        subset_sums(g, ts, corners, ssum);
        cplx acc(0.0, 0.0);
        for (std::int64_t x = 0; x < n; ++x) {
            cplx prod(1.0, 0.0);
            for (int s = 0; s < corners; ++s) {
                const cplx v = f.values[static_cast<std::size_t>(
                    add_index(g, x, ssum[static_cast<std::size_t>(s)]))];
                prod *= (std::popcount(static_cast<unsigned>(s)) & 1) ? std::conj(v) : v;
            }
            acc += prod;
        }
        T.values[static_cast<std::size_t>(tup)] = acc / static_cast<double>(n);
    }
    return T;
}

KernelMatrix shift_averaged_matrix(const GroupFunction& f) {
    const GroupSpec& g = f.group;
    const std::int64_t n = g.order;
    KernelMatrix K{g, std::vector<cplx>(static_cast<std::size_t>(n) * n)};
    for (std::int64_t x = 0; x < n; ++x)
        for (std::int64_t y = 0; y < n; ++y) {
            cplx acc(0.0, 0.0);
            for (std::int64_t a = 0; a < n; ++a)
                acc += f.values[static_cast<std::size_t>(add_index(g, x, a))] *
                       std::conj(f.values[static_cast<std::size_t>(add_index(g, y, a))]);
            K.entries[static_cast<std::size_t>(x) * n + y] = acc / static_cast<double>(n);
        }
    return K;
}

KernelMatrix quadratic_kernel(const GroupFunction& f, double eps) {
    if (eps <= 0.0) fail(ErrorKind::InvalidEpsilon, "quadratic_kernel: eps must be > 0");
    const GroupSpec& g = f.group;
    const std::int64_t n = g.order;
    KernelMatrix K{g, std::vector<cplx>(static_cast<std::size_t>(n) * n, cplx(0.0, 0.0))};

    std::vector<cplx> d(static_cast<std::size_t>(n));
    for (std::int64_t t = 0; t < n; ++t) {
        for (std::int64_t x = 0; x < n; ++x)
            d[static_cast<std::size_t>(x)] = f.values[static_cast<std::size_t>(add_index(g, x, t))] *
                                             std::conj(f.values[static_cast<std::size_t>(x)]);
        std::vector<std::pair<std::int64_t, cplx>> kept;
        for (std::int64_t m = 0; m < n; ++m) {
            cplx lam(0.0, 0.0);
            for (std::int64_t x = 0; x < n; ++x)
                lam += d[static_cast<std::size_t>(x)] * std::conj(char_eval_index(g, m, x));
            lam /= static_cast<double>(n);
            if (std::abs(lam) >= eps) kept.emplace_back(m, lam);
        }
        for (std::int64_t y = 0; y < n; ++y) {
            cplx v(0.0, 0.0);
            for (const auto& [m, lam] : kept) v += lam * char_eval_index(g, m, y);
            K.entries[static_cast<std::size_t>(add_index(g, y, t)) * n + y] = v;
        }
    }
    hermitize(K);
    return K;
}

} // namespace hofa::serial
