#include "hofa/regularity.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <map>

#include "hofa/detail/reduce.hpp"
#include "hofa/detail/rng.hpp"

namespace hofa {

namespace {

struct SigAcc {
    cplx sum{0.0, 0.0};
    std::int64_t count = 0;
};
using SigMap = std::map<std::vector<std::int32_t>, SigAcc>;

/** One draw of the order-k test: the iterated difference
 *  Delta_{t_1..t_kc} f(x) (corner product over the kc-cube) together with
 *  the cell labels of all 2^kc corners. */
struct CubeEval {
    const GroupSpec* g = nullptr;
    const cplx* vals = nullptr;
    const std::int32_t* cells = nullptr;
    int kc = 0;
    int corners = 0;
    int kpar = 0;

    void eval(std::int64_t x, const std::int64_t* ts, std::vector<std::int64_t>& ssum, cplx& d,
              std::vector<std::int32_t>& sig) const {
        ssum[0] = 0;
        for (int s = 1; s < corners; ++s) {
            const int low = std::countr_zero(static_cast<unsigned>(s));
            ssum[static_cast<std::size_t>(s)] =
                add_index(*g, ssum[static_cast<std::size_t>(s & (s - 1))], ts[low]);
        }
        cplx prod(1.0, 0.0);
        for (int s = 0; s < corners; ++s) {
            const std::int64_t idx = add_index(*g, x, ssum[static_cast<std::size_t>(s)]);
            const cplx v = vals[static_cast<std::size_t>(idx)];
            prod *= ((std::popcount(static_cast<unsigned>(s)) & 1) != kpar) ? std::conj(v) : v;
            sig[static_cast<std::size_t>(s)] = cells[static_cast<std::size_t>(idx)];
        }
        d = prod;
    }
};

constexpr std::int64_t kBlock = 4096;

/** Pass one: per-signature sums of the difference. Blocks are merged in
 *  block order, so the map contents depend only on the item sequence. */
template <typename MakeItem>
SigMap signature_means(const CubeEval& ce, std::int64_t count, MakeItem make_item) {
    const std::int64_t nblocks = (count + kBlock - 1) / kBlock;
    std::vector<SigMap> maps(static_cast<std::size_t>(nblocks));
#pragma omp parallel
    {
        std::vector<std::int64_t> ts(static_cast<std::size_t>(ce.kc));
        std::vector<std::int64_t> ssum(static_cast<std::size_t>(ce.corners));
        std::vector<std::int32_t> sig(static_cast<std::size_t>(ce.corners));
        cplx d;
#pragma omp for schedule(static)
        for (std::int64_t b = 0; b < nblocks; ++b) {
            SigMap& local = maps[static_cast<std::size_t>(b)];
            const std::int64_t hi = std::min(count, (b + 1) * kBlock);
            for (std::int64_t i = b * kBlock; i < hi; ++i) {
                std::int64_t x = 0;
                make_item(i, x, ts);
                ce.eval(x, ts.data(), ssum, d, sig);
                SigAcc& acc = local[sig];
                acc.sum += d;
                acc.count += 1;
            }
        }
    }
    SigMap merged;
    for (auto& m : maps)
        for (auto& [key, acc] : m) {
            SigAcc& tot = merged[key];
            tot.sum += acc.sum;
            tot.count += acc.count;
        }
    return merged;
}

/** Pass two: mean and second moment of |difference - g(signature)|^2. */
template <typename MakeItem>
std::pair<double, double> residual_moments(const CubeEval& ce, const SigMap& means, cplx fallback,
                                           std::int64_t count, MakeItem make_item) {
    const std::int64_t nblocks = (count + kBlock - 1) / kBlock;
    std::vector<double> sums(static_cast<std::size_t>(nblocks)), sums2(static_cast<std::size_t>(nblocks));
#pragma omp parallel
    {
        std::vector<std::int64_t> ts(static_cast<std::size_t>(ce.kc));
        std::vector<std::int64_t> ssum(static_cast<std::size_t>(ce.corners));
        std::vector<std::int32_t> sig(static_cast<std::size_t>(ce.corners));
        cplx d;
#pragma omp for schedule(static)
        for (std::int64_t b = 0; b < nblocks; ++b) {
            double sy = 0.0, sy2 = 0.0;
            const std::int64_t hi = std::min(count, (b + 1) * kBlock);
            for (std::int64_t i = b * kBlock; i < hi; ++i) {
                std::int64_t x = 0;
                make_item(i, x, ts);
                ce.eval(x, ts.data(), ssum, d, sig);
                const auto it = means.find(sig);
                const cplx gval =
                    (it == means.end()) ? fallback : it->second.sum / static_cast<double>(it->second.count);
                const double y = std::norm(d - gval);
                sy += y;
                sy2 += y * y;
            }
            sums[static_cast<std::size_t>(b)] = sy;
            sums2[static_cast<std::size_t>(b)] = sy2;
        }
    }
    const double m1 = detail::pairwise_sum(sums) / static_cast<double>(count);
    const double m2 = detail::pairwise_sum(sums2) / static_cast<double>(count);
    return {m1, m2};
}

std::int64_t checked_pow(std::int64_t n, int k) {
    std::int64_t p = 1;
    for (int i = 0; i < k; ++i) {
        if (p > (std::numeric_limits<std::int64_t>::max)() / n) return -1;
        p *= n;
    }
    return p;
}

} // namespace

Partition make_partition(GroupSpec g, std::vector<std::int32_t> cell_of) {
    if (static_cast<std::int64_t>(cell_of.size()) != g.order)
        fail(ErrorKind::DimensionMismatch, "make_partition: one label per group element required");
    std::int32_t maxl = -1;
    for (const std::int32_t c : cell_of) {
        if (c < 0) fail(ErrorKind::ValidationError, "make_partition: negative cell label");
        maxl = std::max(maxl, c);
    }
    std::vector<char> seen(static_cast<std::size_t>(maxl) + 1, 0);
    for (const std::int32_t c : cell_of) seen[static_cast<std::size_t>(c)] = 1;
    for (std::int32_t c = 0; c <= maxl; ++c)
        if (!seen[static_cast<std::size_t>(c)])
            fail(ErrorKind::ValidationError, "make_partition: cell " + std::to_string(c) + " is empty");
    Partition P;
    P.group = std::move(g);
    P.cell_of = std::move(cell_of);
    P.n_cells = maxl + 1;
    return P;
}

Partition one_cell_partition(const GroupSpec& g) {
    return make_partition(g, std::vector<std::int32_t>(static_cast<std::size_t>(g.order), 0));
}

Partition singleton_partition(const GroupSpec& g) {
    std::vector<std::int32_t> cells(static_cast<std::size_t>(g.order));
    for (std::int64_t i = 0; i < g.order; ++i) cells[static_cast<std::size_t>(i)] = static_cast<std::int32_t>(i);
    return make_partition(g, std::move(cells));
}

CharacterTestReport character_test(const GroupFunction& f, const Partition& P, int k, double eps,
                                   std::int64_t samples, std::uint64_t seed, TestMode mode,
                                   const EvalCaps& caps) {
    require_same_group(f.group, P.group, "character_test");
    if (k < 1 || k > 4) fail(ErrorKind::InvalidOrder, "character_test: k must be in [1, 4]");
    if (eps <= 0.0) fail(ErrorKind::InvalidEpsilon, "character_test: eps must be > 0");
    if (samples < 1) fail(ErrorKind::InvalidSamples, "character_test: need at least one sample");
    if (lp_norm(f, std::numeric_limits<double>::infinity()) > 1.0 + 1e-9)
        fail(ErrorKind::ValidationError, "character_test: ||f||_inf must be <= 1");

    const std::int64_t n = f.group.order;
    const int kc = k + 1;
    const std::int64_t full = checked_pow(n, kc + 1);
    const bool fits = (full > 0 && full <= caps.max_evals);
    if (mode == TestMode::Exhaustive && !fits)
        fail(ErrorKind::CapExceeded, "character_test: exhaustive enumeration exceeds the evaluation cap");
    const bool exhaustive = (mode == TestMode::Exhaustive) || (mode == TestMode::Auto && fits);

    CubeEval ce;
    ce.g = &f.group;
    ce.vals = f.values.data();
    ce.cells = P.cell_of.data();
    ce.kc = kc;
    ce.corners = 1 << kc;
    ce.kpar = kc & 1;

    CharacterTestReport rep;
    rep.k = k;
    rep.epsilon = eps;
    rep.seed = seed;
    rep.exhaustive = exhaustive;

    double m1 = 0.0, m2 = 0.0;
    if (exhaustive) {
        rep.samples = full;
        const auto decode = [n, kc](std::int64_t i, std::int64_t& x, std::vector<std::int64_t>& ts) {
            std::int64_t rem = i;
            x = rem % n;
            rem /= n;
            for (int j = 0; j < kc; ++j) {
                ts[static_cast<std::size_t>(j)] = rem % n;
                rem /= n;
            }
        };
        const SigMap means = signature_means(ce, full, decode);
        std::tie(m1, m2) = residual_moments(ce, means, cplx(0.0, 0.0), full, decode);
        rep.stderr_estimate = 0.0;
    } else {
        rep.samples = samples;
        const auto draw = [n, kc, seed](std::uint64_t pass) {
            return [n, kc, seed, pass](std::int64_t i, std::int64_t& x, std::vector<std::int64_t>& ts) {
                detail::SplitMix64 rng(detail::mix_seed(seed, pass, static_cast<std::uint64_t>(i)));
                x = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(n)));
                for (int j = 0; j < kc; ++j)
                    ts[static_cast<std::size_t>(j)] = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(n)));
            };
        };
        const SigMap means = signature_means(ce, samples, draw(1));
        cplx global(0.0, 0.0);
        for (const auto& [key, acc] : means) global += acc.sum;
        global /= static_cast<double>(samples);
        std::tie(m1, m2) = residual_moments(ce, means, global, samples, draw(2));
        rep.stderr_estimate = std::sqrt(std::max(0.0, m2 - m1 * m1) / static_cast<double>(samples));
    }
    rep.residual_estimate = std::sqrt(std::max(0.0, m1));
    rep.pass = rep.residual_estimate < eps;
    return rep;
}

namespace {

struct CanonicalParts {
    std::vector<GroupFunction> components;
    GroupFunction h;
};

/** Best Fourier truncation of f: up to `bound` largest coefficients
 *  (ties broken by index), zeros dropped. */
CanonicalParts canonical_fourier_parts(const GroupFunction& f, std::int64_t bound) {
    const FourierSpectrum s = dft(f);
    const std::int64_t n = f.group.order;
    std::vector<std::int64_t> idx(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i) idx[static_cast<std::size_t>(i)] = i;
    std::stable_sort(idx.begin(), idx.end(), [&](std::int64_t a, std::int64_t b) {
        const double ma = std::abs(s.coeffs[static_cast<std::size_t>(a)]);
        const double mb = std::abs(s.coeffs[static_cast<std::size_t>(b)]);
        if (ma != mb) return ma > mb;
        return a < b;
    });

    CanonicalParts parts;
    parts.h = f;
    const std::int64_t keep = std::min<std::int64_t>(bound, n);
    for (std::int64_t r = 0; r < keep; ++r) {
        const std::int64_t m = idx[static_cast<std::size_t>(r)];
        const cplx lam = s.coeffs[static_cast<std::size_t>(m)];
        if (std::abs(lam) == 0.0) break;
        GroupFunction comp =
            scale_function(character_function(f.group, element_of(f.group, m)), lam);
        parts.h = sub_functions(parts.h, comp);
        parts.components.push_back(std::move(comp));
    }
    return parts;
}

} // namespace

ComplexityReport complexity_check_c1(const GroupFunction& f, const GroupFunction& h,
                                     const std::vector<GroupFunction>& components,
                                     const std::vector<Partition>& partitions,
                                     const std::vector<std::int64_t>& n_params,
                                     const std::vector<double>& eps_params, int k,
                                     std::int64_t samples, std::uint64_t seed, const EvalCaps& caps) {
    if (k != 1 && k != 2) fail(ErrorKind::UnsupportedOrder, "complexity_check_c1: k must be 1 or 2");
    const std::size_t np = static_cast<std::size_t>(2 * k);
    if (n_params.size() != np || eps_params.size() != np)
        fail(ErrorKind::BadParameter, "complexity_check_c1: parameter vectors must have length 2k");
    if (partitions.size() != static_cast<std::size_t>(k))
        fail(ErrorKind::BadParameter, "complexity_check_c1: expected one partition per level (k total)");
    if (samples < 1) fail(ErrorKind::InvalidSamples, "complexity_check_c1: need at least one sample");
    require_same_group(f.group, h.group, "complexity_check_c1");
    for (const auto& c : components) require_same_group(f.group, c.group, "complexity_check_c1");
    for (const auto& P : partitions) require_same_group(f.group, P.group, "complexity_check_c1");

    GroupFunction recon = h;
    for (const auto& c : components) recon = add_functions(recon, c);
    double mismatch = 0.0;
    for (std::size_t i = 0; i < recon.values.size(); ++i)
        mismatch = std::max(mismatch, std::abs(f.values[i] - recon.values[i]));
    if (mismatch > 1e-9)
        fail(ErrorKind::DecompositionMismatch,
             "complexity_check_c1: f differs from h + sum of components by " + std::to_string(mismatch));

    ComplexityReport rep;
    rep.k = k;
    rep.n_cells = partitions[0].n_cells;

    const double count_bound = static_cast<double>(n_params[np - 1]);
    rep.clauses.push_back(ComplexityClause{"CountExceeded",
                                           static_cast<double>(components.size()) <= count_bound,
                                           static_cast<double>(components.size()), count_bound});

    double supmax = 0.0;
    for (const auto& c : components)
        supmax = std::max(supmax, lp_norm(c, std::numeric_limits<double>::infinity()));
    rep.clauses.push_back(ComplexityClause{"SupNormExceeded", supmax <= 1.0 + 1e-9, supmax, 1.0});

    const double h2 = lp_norm(h, 2.0);
    rep.clauses.push_back(ComplexityClause{"ErrorTooLarge", h2 < eps_params[np - 1], h2, eps_params[np - 1]});

    const double ceps = eps_params[np - 2];
    bool all_char = true;
    double worst = 0.0;
    for (std::size_t i = 0; i < components.size(); ++i) {
        if (lp_norm(components[i], std::numeric_limits<double>::infinity()) > 1.0 + 1e-9) {
            all_char = false; // not testable; the sup-norm clause has already failed
            continue;
        }
        const CharacterTestReport r =
            character_test(components[i], partitions[0], k, ceps, samples,
                           detail::mix_seed(seed, 0xc4a7u, static_cast<std::uint64_t>(i)), TestMode::Auto, caps);
        worst = std::max(worst, r.residual_estimate);
        all_char = all_char && r.pass;
        rep.char_tests.push_back(r);
    }
    rep.clauses.push_back(ComplexityClause{"CharacterTestFailed", all_char, worst, ceps});

    if (k == 1) {
        rep.clauses.push_back(ComplexityClause{"BaseNotOneCell", partitions[0].n_cells == 1,
                                               static_cast<double>(partitions[0].n_cells), 1.0});
    } else {
        std::int64_t fails = 0;
        for (std::int32_t cell = 0; cell < partitions[0].n_cells; ++cell) {
            GroupFunction ind = zero_function(f.group);
            for (std::int64_t x = 0; x < f.group.order; ++x)
                if (partitions[0].cell_of[static_cast<std::size_t>(x)] == cell)
                    ind.values[static_cast<std::size_t>(x)] = cplx(1.0, 0.0);
            CanonicalParts parts = canonical_fourier_parts(ind, n_params[0]);
            const ComplexityReport sub = complexity_check_c1(
                ind, parts.h, parts.components, {partitions[1]}, {n_params[1], n_params[0]},
                {eps_params[1], eps_params[0]}, 1, samples,
                detail::mix_seed(seed, 0xce11u, static_cast<std::uint64_t>(cell)), caps);
            fails += sub.pass ? 0 : 1;
            rep.cell_reports.push_back(sub);
        }
        rep.clauses.push_back(
            ComplexityClause{"CellCertificationFailed", fails == 0, static_cast<double>(fails), 0.0});
    }

    rep.pass = true;
    for (const auto& cl : rep.clauses) rep.pass = rep.pass && cl.pass;
    return rep;
}

PipelineReport furreg_pipeline(const GroupFunction& f, int k, const SpectralParams& sp,
                               const RegularityParams& rp, const EvalCaps& caps) {
    PipelineReport rep;
    rep.decomposition = decompose(f, k, sp.epsilon, sp.delta, sp.m_max, sp.disambig);
    rep.complexity = complexity_check_c1(f, rep.decomposition.residual, rep.decomposition.components,
                                         rp.partitions, rp.n_params, rp.eps_params, k, rp.samples,
                                         rp.seed, caps);
    return rep;
}

} // namespace hofa
