#include "hofa/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "hofa/detail/reduce.hpp"
#include "hofa/detail/rng.hpp"
#include "hofa/gowers.hpp"

namespace hofa {

namespace {

void require_square(const KernelMatrix& K, const char* where) {
    const std::int64_t n = K.group.order;
    if (K.entries.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n))
        fail(ErrorKind::DimensionMismatch, std::string(where) + ": kernel storage is not |A| x |A|");
}

void hermitize_raw(cplx* a, std::int64_t n) {
    for (std::int64_t x = 0; x < n; ++x) {
        a[x * n + x] = cplx(a[x * n + x].real(), 0.0);
        for (std::int64_t y = x + 1; y < n; ++y) {
            const cplx avg = (a[x * n + y] + std::conj(a[y * n + x])) * 0.5;
            a[x * n + y] = avg;
            a[y * n + x] = std::conj(avg);
        }
    }
}

double off_diag_norm(const cplx* a, std::int64_t n) {
    double s = 0.0;
    for (std::int64_t x = 0; x < n; ++x)
        for (std::int64_t y = 0; y < n; ++y)
            if (x != y) s += std::norm(a[x * n + y]);
    return std::sqrt(s);
}

/** Cyclic complex Jacobi on a Hermitian matrix (row-major, overwritten).
 *  V receives the accumulated unitary; column r of V is the eigenvector of
 *  the r-th diagonal entry. Plain sequential sweeps: deterministic. */
void jacobi_hermitian(std::vector<cplx>& A, std::int64_t n, std::vector<cplx>& V) {
    V.assign(static_cast<std::size_t>(n) * n, cplx(0.0, 0.0));
    for (std::int64_t i = 0; i < n; ++i) V[static_cast<std::size_t>(i) * n + i] = cplx(1.0, 0.0);
    if (n <= 1) return;

    cplx* a = A.data();
    cplx* v = V.data();

    double fro = 0.0;
    for (const cplx& z : A) fro += std::norm(z);
    fro = std::sqrt(fro);
    const double tol = 1e-15 * std::max(fro, 1e-300);

    constexpr int kMaxSweeps = 100;
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        if (off_diag_norm(a, n) <= tol) break;
        for (std::int64_t p = 0; p < n - 1; ++p) {
            for (std::int64_t q = p + 1; q < n; ++q) {
                const cplx beta = a[p * n + q];
                const double ab = std::abs(beta);
                if (ab == 0.0) continue;
                const cplx ph = beta / ab;
                const double alpha = a[p * n + p].real();
                const double gamma = a[q * n + q].real();
                const double tau = (alpha - gamma) / (2.0 * ab);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                for (std::int64_t r = 0; r < n; ++r) {
                    const cplx ap = a[r * n + p];
                    const cplx aq = a[r * n + q];
                    a[r * n + p] = c * ap + s * std::conj(ph) * aq;
                    a[r * n + q] = -s * ph * ap + c * aq;
                }
                for (std::int64_t r = 0; r < n; ++r) {
                    const cplx pr = a[p * n + r];
                    const cplx qr = a[q * n + r];
                    a[p * n + r] = c * pr + s * ph * qr;
                    a[q * n + r] = -s * std::conj(ph) * pr + c * qr;
                }
                a[p * n + q] = cplx(0.0, 0.0);
                a[q * n + p] = cplx(0.0, 0.0);
                a[p * n + p] = cplx(a[p * n + p].real(), 0.0);
                a[q * n + q] = cplx(a[q * n + q].real(), 0.0);

                for (std::int64_t r = 0; r < n; ++r) {
                    const cplx vp = v[r * n + p];
                    const cplx vq = v[r * n + q];
                    v[r * n + p] = c * vp + s * std::conj(ph) * vq;
                    v[r * n + q] = -s * ph * vp + c * vq;
                }
            }
        }
    }
}

GroupFunction normalized_or_empty(const GroupFunction& f) {
    const double norm2 = lp_norm(f, 2.0);
    if (norm2 < 1e-12) return GroupFunction{};
    return scale_function(f, cplx(1.0 / norm2, 0.0));
}

} // namespace

GroupFunction apply(const KernelMatrix& K, const GroupFunction& v) {
    require_square(K, "apply");
    require_same_group(K.group, v.group, "apply");
    const std::int64_t n = K.group.order;
    GroupFunction out = zero_function(K.group);
#pragma omp parallel
    {
        std::vector<cplx> scratch(static_cast<std::size_t>(n));
#pragma omp for schedule(static)
        for (std::int64_t x = 0; x < n; ++x) {
            for (std::int64_t y = 0; y < n; ++y)
                scratch[static_cast<std::size_t>(y)] =
                    K.entries[static_cast<std::size_t>(x) * n + y] * v.values[static_cast<std::size_t>(y)];
            out.values[static_cast<std::size_t>(x)] = detail::pairwise_sum(scratch) / static_cast<double>(n);
        }
    }
    return out;
}

void hermitize(KernelMatrix& K) {
    require_square(K, "hermitize");
    hermitize_raw(K.entries.data(), K.group.order);
}

KernelMatrix shift_averaged_matrix(const GroupFunction& f, double eps) {
    if (eps < 0.0) fail(ErrorKind::InvalidEpsilon, "shift_averaged_matrix: eps must be >= 0");
    const std::int64_t n = f.group.order;
    FourierSpectrum spec = dft(f);
    FourierSpectrum power{f.group, std::vector<cplx>(static_cast<std::size_t>(n), cplx(0.0, 0.0))};
    for (std::int64_t m = 0; m < n; ++m) {
        const double mag = std::abs(spec.coeffs[static_cast<std::size_t>(m)]);
        if (mag >= eps) power.coeffs[static_cast<std::size_t>(m)] = cplx(mag * mag, 0.0);
    }
    const GroupFunction g = idft(power);

    KernelMatrix K{f.group, std::vector<cplx>(static_cast<std::size_t>(n) * n)};
#pragma omp parallel for schedule(static)
    for (std::int64_t x = 0; x < n; ++x)
        for (std::int64_t y = 0; y < n; ++y)
            K.entries[static_cast<std::size_t>(x) * n + y] = g.values[static_cast<std::size_t>(sub_index(f.group, x, y))];
    hermitize(K);
    return K;
}

KernelMatrix quadratic_kernel(const GroupFunction& f, double eps) {
    if (eps <= 0.0) fail(ErrorKind::InvalidEpsilon, "quadratic_kernel: eps must be > 0");
    const std::int64_t n = f.group.order;
    KernelMatrix K{f.group, std::vector<cplx>(static_cast<std::size_t>(n) * n, cplx(0.0, 0.0))};
#pragma omp parallel for schedule(static)
    for (std::int64_t t = 0; t < n; ++t) {
        const GroupFunction d = delta_index(f, t);
        const GroupFunction col = idft(truncate(dft(d), eps));
        for (std::int64_t y = 0; y < n; ++y)
            K.entries[static_cast<std::size_t>(add_index(f.group, y, t)) * n + y] = col.values[static_cast<std::size_t>(y)];
    }
    hermitize(K);
    return K;
}

Eigensystem hermitian_eig(const KernelMatrix& K) {
    require_square(K, "hermitian_eig");
    const std::int64_t n = K.group.order;

    double defect = 0.0;
    for (std::int64_t x = 0; x < n; ++x)
        for (std::int64_t y = x; y < n; ++y)
            defect = std::max(defect, std::abs(K.entries[static_cast<std::size_t>(x) * n + y] -
                                               std::conj(K.entries[static_cast<std::size_t>(y) * n + x])));
    if (defect > 1e-6)
        fail(ErrorKind::NonHermitian, "hermitian_eig: symmetry defect " + std::to_string(defect) + " exceeds 1e-6");

    std::vector<cplx> A = K.entries;
    hermitize_raw(A.data(), n);
    std::vector<cplx> V;
    jacobi_hermitian(A, n, V);

    std::vector<int> order(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = static_cast<int>(i);
    std::stable_sort(order.begin(), order.end(), [&](int u, int w) {
        return A[static_cast<std::size_t>(u) * n + u].real() > A[static_cast<std::size_t>(w) * n + w].real();
    });

    Eigensystem es;
    es.group = K.group;
    const double scale = std::sqrt(static_cast<double>(n));
    for (std::int64_t r = 0; r < n; ++r) {
        const int i = order[static_cast<std::size_t>(r)];
        es.values.push_back(A[static_cast<std::size_t>(i) * n + i].real() / static_cast<double>(n));
        GroupFunction vec = zero_function(K.group);
        for (std::int64_t x = 0; x < n; ++x)
            vec.values[static_cast<std::size_t>(x)] = V[static_cast<std::size_t>(x) * n + i] * scale;
        es.vectors.push_back(std::move(vec));
    }
    return es;
}

std::vector<std::vector<int>> cluster_eigenvalues(const std::vector<double>& values, double delta) {
    if (delta <= 0.0) fail(ErrorKind::BadParameter, "cluster_eigenvalues: delta must be > 0");
    for (std::size_t i = 1; i < values.size(); ++i)
        if (values[i] > values[i - 1] + 1e-9)
            fail(ErrorKind::BadParameter, "cluster_eigenvalues: values must be sorted descending");

    std::vector<std::vector<int>> clusters;
    std::vector<int> cur;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i] < delta) break;
        if (!cur.empty() && values[i - 1] - values[i] >= delta) {
            clusters.push_back(std::move(cur));
            cur.clear();
        }
        cur.push_back(static_cast<int>(i));
    }
    if (!cur.empty()) clusters.push_back(std::move(cur));
    return clusters;
}

std::vector<GroupFunction> disambiguate_cluster(const GroupFunction& f, int order, double eps,
                                                const std::vector<GroupFunction>& basis,
                                                const DisambiguateOptions& opts) {
    if (basis.empty()) fail(ErrorKind::BadParameter, "disambiguate_cluster: empty basis");
    for (const auto& b : basis) require_same_group(f.group, b.group, "disambiguate_cluster");
    if (order != 1 && order != 2)
        fail(ErrorKind::UnsupportedOrder, "disambiguate_cluster: order must be 1 or 2");
    const std::size_t m = basis.size();
    if (m == 1) return basis;

    std::vector<GroupFunction> candidates;
    {
        GroupFunction w = zero_function(f.group);
        for (std::size_t i = 0; i < m; ++i)
            w = add_functions(w, scale_function(basis[i], cplx(2.0 * static_cast<double>(i + 1), 0.0)));
        GroupFunction nw = normalized_or_empty(w);
        if (!nw.values.empty()) candidates.push_back(std::move(nw));
    }
    for (int c = 0; c < opts.max_candidates; ++c) {
        detail::SplitMix64 rng(detail::mix_seed(opts.seed, 0x5eedu, static_cast<std::uint64_t>(c)));
        GroupFunction w = zero_function(f.group);
        for (std::size_t i = 0; i < m; ++i) {
            const auto [g1, g2] = rng.gaussian_pair();
            w = add_functions(w, scale_function(basis[i], cplx(g1, g2)));
        }
        GroupFunction nw = normalized_or_empty(w);
        if (!nw.values.empty()) candidates.push_back(std::move(nw));
    }

    double best_sep = -1.0;
    std::vector<GroupFunction> best_vectors;
    for (const GroupFunction& v : candidates) {
        const KernelMatrix Kv = (order == 1) ? shift_averaged_matrix(v, eps) : quadratic_kernel(v, eps);

        std::vector<cplx> R(m * m);
        for (std::size_t j = 0; j < m; ++j) {
            const GroupFunction kb = apply(Kv, basis[j]);
            for (std::size_t i = 0; i < m; ++i) R[i * m + j] = inner(kb, basis[i]);
        }
        hermitize_raw(R.data(), static_cast<std::int64_t>(m));
        std::vector<cplx> U;
        jacobi_hermitian(R, static_cast<std::int64_t>(m), U);

        std::vector<double> mu(m);
        for (std::size_t i = 0; i < m; ++i) mu[i] = R[i * m + i].real();
        double sep = std::numeric_limits<double>::infinity();
        for (std::size_t r = 0; r < m; ++r)
            for (std::size_t s = r + 1; s < m; ++s) sep = std::min(sep, std::abs(mu[r] - mu[s]));

        if (sep <= best_sep) continue;
        best_sep = sep;
        if (sep <= opts.separation_tol) continue;

        std::vector<int> ord(m);
        for (std::size_t i = 0; i < m; ++i) ord[i] = static_cast<int>(i);
        std::stable_sort(ord.begin(), ord.end(), [&](int u, int w) { return mu[static_cast<std::size_t>(u)] > mu[static_cast<std::size_t>(w)]; });

        std::vector<GroupFunction> mapped;
        for (std::size_t r = 0; r < m; ++r) {
            const std::size_t col = static_cast<std::size_t>(ord[r]);
            GroupFunction w = zero_function(f.group);
            for (std::size_t i = 0; i < m; ++i)
                w = add_functions(w, scale_function(basis[i], U[i * m + col]));
            GroupFunction nw = normalized_or_empty(w);
            mapped.push_back(nw.values.empty() ? w : std::move(nw));
        }
        best_vectors = std::move(mapped);
    }

    if (best_vectors.empty())
        fail(ErrorKind::SeparationFailed,
             "disambiguate_cluster: no candidate separated the cluster (best gap " + std::to_string(best_sep) +
                 ", tolerance " + std::to_string(opts.separation_tol) + ")");
    return best_vectors;
}

DecompositionReport decompose(const GroupFunction& f, int order, double eps, double delta,
                              std::int64_t m_max, const DisambiguateOptions& opts) {
    if (order != 1 && order != 2) fail(ErrorKind::UnsupportedOrder, "decompose: order must be 1 or 2");
    if (delta <= 0.0) fail(ErrorKind::BadParameter, "decompose: delta must be > 0");

    const KernelMatrix K = (order == 1) ? shift_averaged_matrix(f, eps) : quadratic_kernel(f, eps);
    const Eigensystem es = hermitian_eig(K);
    const auto clusters = cluster_eigenvalues(es.values, delta);

    struct Part {
        double value;
        GroupFunction vector;
    };
    std::vector<Part> parts;
    for (const auto& cluster : clusters) {
        std::vector<GroupFunction> resolved;
        if (cluster.size() == 1) {
            resolved.push_back(es.vectors[static_cast<std::size_t>(cluster[0])]);
        } else {
            std::vector<GroupFunction> basis;
            for (int idx : cluster) basis.push_back(es.vectors[static_cast<std::size_t>(idx)]);
            resolved = disambiguate_cluster(f, order, eps, basis, opts);
        }
        for (auto& v : resolved) {
            const double lam = inner(apply(K, v), v).real();
            if (lam >= delta) parts.push_back(Part{lam, std::move(v)});
        }
    }
    std::stable_sort(parts.begin(), parts.end(), [](const Part& a, const Part& b) { return a.value > b.value; });
    if (m_max >= 0 && static_cast<std::int64_t>(parts.size()) > m_max)
        parts.resize(static_cast<std::size_t>(m_max));

    DecompositionReport rep;
    rep.order = order;
    rep.epsilon = eps;
    rep.delta = delta;
    rep.m_max = m_max;
    rep.seed = opts.seed;
    rep.residual = f;
    for (const Part& p : parts) {
        rep.eigenvalues.push_back(p.value);
        GroupFunction comp = scale_function(p.vector, inner(f, p.vector));
        rep.residual = sub_functions(rep.residual, comp);
        rep.vectors.push_back(p.vector);
        rep.components.push_back(std::move(comp));
    }
    rep.residual_uk = gowers_norm(rep.residual, order + 1);
    rep.cross_gram = 0.0;
    for (std::size_t i = 0; i < rep.vectors.size(); ++i)
        for (std::size_t j = i + 1; j < rep.vectors.size(); ++j)
            rep.cross_gram = std::max(rep.cross_gram, std::abs(inner(rep.vectors[i], rep.vectors[j])));
    return rep;
}

} // namespace hofa
