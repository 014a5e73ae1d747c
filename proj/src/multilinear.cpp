#include "hofa/multilinear.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <numeric>

#include "hofa/detail/reduce.hpp"

namespace hofa {

namespace {

std::int64_t pow_i64(std::int64_t n, int k) {
    std::int64_t p = 1;
    for (int i = 0; i < k; ++i) p *= n;
    return p;
}

void require_tensor(const MultilinearTensor& T, const char* where) {
    if (T.k < 1) fail(ErrorKind::InvalidOrder, std::string(where) + ": tensor order must be >= 1");
    const std::int64_t want = pow_i64(T.group.order, T.k);
    if (static_cast<std::int64_t>(T.values.size()) != want)
        fail(ErrorKind::DimensionMismatch, std::string(where) + ": tensor storage is not |A|^k");
}

} // namespace

std::int64_t tensor_index(const MultilinearTensor& T, const std::vector<std::int64_t>& ts) {
    if (static_cast<int>(ts.size()) != T.k)
        fail(ErrorKind::DimensionMismatch, "tensor_index: expected " + std::to_string(T.k) + " arguments");
    const std::int64_t n = T.group.order;
    std::int64_t idx = 0;
    for (const std::int64_t t : ts) {
        if (t < 0 || t >= n) fail(ErrorKind::IndexOutOfRange, "tensor_index: argument out of range");
        idx = idx * n + t;
    }
    return idx;
}

cplx tensor_at(const MultilinearTensor& T, const std::vector<std::int64_t>& ts) {
    return T.values[static_cast<std::size_t>(tensor_index(T, ts))];
}

MultilinearTensor vtilde(const GroupFunction& f, int k, const EvalCaps& caps) {
    if (k < 1 || k > 4) fail(ErrorKind::InvalidOrder, "vtilde: k must be in [1, 4]");
    const std::int64_t n = f.group.order;
    {
        std::int64_t evals = 1;
        for (int i = 0; i < k + 1; ++i) {
            if (evals > caps.max_evals / n) fail(ErrorKind::EnumerationTooLarge, "vtilde: |A|^(k+1) exceeds the evaluation cap");
            evals *= n;
        }
        if (evals > caps.max_evals) fail(ErrorKind::EnumerationTooLarge, "vtilde: |A|^(k+1) exceeds the evaluation cap");
    }

    const int corners = 1 << k;
    const std::int64_t tuples = pow_i64(n, k);
    MultilinearTensor T{f.group, k, std::vector<cplx>(static_cast<std::size_t>(tuples))};
    const cplx* vals = f.values.data();
    const GroupSpec& g = f.group;

#pragma omp parallel
    {
        std::vector<std::int64_t> ts(static_cast<std::size_t>(k));
        std::vector<std::int64_t> ssum(static_cast<std::size_t>(corners));
        std::vector<cplx> xs(static_cast<std::size_t>(n));
#pragma omp for schedule(static)
        for (std::int64_t tup = 0; tup < tuples; ++tup) {
            std::int64_t rem = tup;
            for (int i = k - 1; i >= 0; --i) {
                ts[static_cast<std::size_t>(i)] = rem % n;
                rem /= n;
            }
            ssum[0] = 0;
            for (int s = 1; s < corners; ++s) {
                const int low = std::countr_zero(static_cast<unsigned>(s));
                ssum[static_cast<std::size_t>(s)] =
                    add_index(g, ssum[static_cast<std::size_t>(s & (s - 1))], ts[static_cast<std::size_t>(low)]);
            }
            for (std::int64_t x = 0; x < n; ++x) {
                cplx prod(1.0, 0.0);
                for (int s = 0; s < corners; ++s) {
                    const cplx v = vals[static_cast<std::size_t>(add_index(g, x, ssum[static_cast<std::size_t>(s)]))];
                    prod *= (std::popcount(static_cast<unsigned>(s)) & 1) ? std::conj(v) : v;
                }
                xs[static_cast<std::size_t>(x)] = prod;
            }
            T.values[static_cast<std::size_t>(tup)] = detail::sorted_mean(xs);
        }
    }
    return T;
}

double symmetry_defect(const MultilinearTensor& T) {
    require_tensor(T, "symmetry_defect");
    const std::int64_t n = T.group.order;
    const std::int64_t tuples = static_cast<std::int64_t>(T.values.size());

    std::vector<int> perm(static_cast<std::size_t>(T.k));
    std::iota(perm.begin(), perm.end(), 0);
    double defect = 0.0;
    std::vector<std::int64_t> ts(static_cast<std::size_t>(T.k));
    while (std::next_permutation(perm.begin(), perm.end())) {
        for (std::int64_t tup = 0; tup < tuples; ++tup) {
            std::int64_t rem = tup;
            for (int i = T.k - 1; i >= 0; --i) {
                ts[static_cast<std::size_t>(i)] = rem % n;
                rem /= n;
            }
            std::int64_t pidx = 0;
            for (int i = 0; i < T.k; ++i) pidx = pidx * n + ts[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])];
            defect = std::max(defect, std::abs(T.values[static_cast<std::size_t>(tup)] -
                                               T.values[static_cast<std::size_t>(pidx)]));
        }
    }
    return defect;
}

NonvanishingReport nonvanishing_check(const GroupFunction& f, int k, double theta, const EvalCaps& caps) {
    if (theta < 0.0) fail(ErrorKind::BadParameter, "nonvanishing_check: theta must be >= 0");
    NonvanishingReport rep;
    rep.k = k;
    rep.theta = theta;
    rep.uk1 = gowers_norm(f, k + 1, caps);
    const MultilinearTensor T = vtilde(f, k, caps);
    for (const cplx& z : T.values) rep.max_abs = std::max(rep.max_abs, std::abs(z));
    rep.pass = (rep.uk1 <= theta) || (rep.max_abs > 0.0);
    return rep;
}

std::int64_t extract_bilinear(const MultilinearTensor& T) {
    require_tensor(T, "extract_bilinear");
    if (T.k != 2) fail(ErrorKind::InvalidOrder, "extract_bilinear: tensor order must be 2");
    if (T.group.factors.size() != 1 || !is_prime(T.group.factors[0]))
        fail(ErrorKind::NotPrimeCyclic, "extract_bilinear: group must be Z_p with p prime");
    const std::int64_t p = T.group.order;

    for (const cplx& z : T.values)
        if (std::abs(std::abs(z) - 1.0) > 1e-6)
            fail(ErrorKind::NotUnimodular, "extract_bilinear: form has entries off the unit circle");

    if (symmetry_defect(T) > 1e-6)
        fail(ErrorKind::NotBilinear, "extract_bilinear: form is not symmetric");
    for (std::int64_t a = 0; a < p; ++a)
        for (std::int64_t b = 0; b < p; ++b)
            for (std::int64_t t2 = 0; t2 < p; ++t2) {
                const cplx lhs = T.values[static_cast<std::size_t>(((a + b) % p) * p + t2)];
                const cplx rhs = T.values[static_cast<std::size_t>(a * p + t2)] *
                                 T.values[static_cast<std::size_t>(b * p + t2)];
                if (std::abs(lhs - rhs) > 1e-8)
                    fail(ErrorKind::NotBilinear, "extract_bilinear: form is not additive in the first argument");
            }

    const double ang = std::arg(T.values[static_cast<std::size_t>(p + 1)]);
    std::int64_t B = std::llround(static_cast<double>(p) * ang / (2.0 * std::numbers::pi));
    B = ((B % p) + p) % p;

    for (std::int64_t t1 = 0; t1 < p; ++t1)
        for (std::int64_t t2 = 0; t2 < p; ++t2) {
            const double phase = 2.0 * std::numbers::pi * static_cast<double>((B * t1 % p) * t2 % p) / static_cast<double>(p);
            const cplx want(std::cos(phase), std::sin(phase));
            if (std::abs(T.values[static_cast<std::size_t>(t1 * p + t2)] - want) > 1e-8)
                fail(ErrorKind::NotBilinear, "extract_bilinear: form does not match a bilinear phase");
        }
    return B;
}

} // namespace hofa
