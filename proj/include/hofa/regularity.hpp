#pragma once

#include <string>

#include "hofa/gowers.hpp"
#include "hofa/spectral.hpp"

namespace hofa {

/** A partition of the group into labeled cells. Labels are dense: every
 *  label in [0, n_cells) names a nonempty cell. */
struct Partition {
    GroupSpec group;
    std::vector<std::int32_t> cell_of;
    std::int32_t n_cells = 0;
};

Partition make_partition(GroupSpec g, std::vector<std::int32_t> cell_of);
Partition one_cell_partition(const GroupSpec& g);
Partition singleton_partition(const GroupSpec& g);

enum class TestMode {
    Auto,       ///< exhaustive when |A|^{k+2} fits the cap, sampled otherwise
    Exhaustive, ///< forced; CapExceeded when too large
    Sampled,
};

struct CharacterTestReport {
    int k = 0;
    double epsilon = 0.0;
    double residual_estimate = 0.0; ///< sqrt of the mean squared residual
    std::int64_t samples = 0;       ///< draws per pass (enumeration size when exhaustive)
    std::uint64_t seed = 0;
    bool pass = false;              ///< residual_estimate < epsilon
    bool exhaustive = false;
    double stderr_estimate = 0.0;   ///< standard error of the mean square (sampled mode)
};

/**
 * The order-k character test of f modulo P: how well is the iterated
 * difference Delta_{t_1..t_{k+1}} f(x) determined by the cells of P?
 *
 * Each draw (x, t_1..t_{k+1}) gets the signature (cell(psi_S(x,t)))_S over
 * all S subset of [k+1]; g is the per-signature empirical mean of the
 * difference, the L2-optimal signature-measurable predictor. The report
 * carries residual_estimate = sqrt(E |Delta f - g|^2). Sampled mode is a
 * two-pass estimator (means from pass one, residual on fresh pass-two
 * draws) with one RNG substream per sample, so results depend only on
 * (seed, samples), never on thread count.
 */
CharacterTestReport character_test(const GroupFunction& f, const Partition& P, int k, double eps,
                                   std::int64_t samples, std::uint64_t seed,
                                   TestMode mode = TestMode::Auto, const EvalCaps& caps = {});

/** One verdict of the complexity checker, named after the failure it
 *  guards against; pass means the failure did not occur. */
struct ComplexityClause {
    std::string name;
    bool pass = false;
    double measured = 0.0;
    double bound = 0.0;
};

struct ComplexityReport {
    int k = 0;
    bool pass = false;
    std::int32_t n_cells = 0; ///< cell count of the governing partition
    std::vector<ComplexityClause> clauses;
    std::vector<CharacterTestReport> char_tests; ///< one per component tested
    std::vector<ComplexityReport> cell_reports;  ///< k = 2: one per cell of partitions[0]
};

/**
 * Degree-k complexity certificate for the decomposition f = h + sum f_i
 * (k = 1 or 2). Parameter vectors have length 2k and are consumed from
 * the back: the top level checks
 *   component count <= n_params[2k-1],
 *   ||f_i||_inf <= 1,
 *   ||h||_2 < eps_params[2k-1],
 *   every f_i an order-k character modulo partitions[0] at eps_params[2k-2];
 * at k = 1 the governing partition must be the one-cell partition (the
 * base case allows only globally constant structure), while at k = 2
 * every cell indicator of partitions[0] is itself certified at k = 1
 * against partitions[1] with the remaining parameters, using its best
 * Fourier truncation (largest coefficients first, ties by index) as the
 * canonical sub-decomposition.
 *
 * Mismatched f vs h + sum f_i (beyond 1e-9 entrywise) throws
 * DecompositionMismatch; clause failures are reported, not thrown.
 */
ComplexityReport complexity_check_c1(const GroupFunction& f, const GroupFunction& h,
                                     const std::vector<GroupFunction>& components,
                                     const std::vector<Partition>& partitions,
                                     const std::vector<std::int64_t>& n_params,
                                     const std::vector<double>& eps_params, int k,
                                     std::int64_t samples, std::uint64_t seed,
                                     const EvalCaps& caps = {});

struct SpectralParams {
    double epsilon = 0.1;
    double delta = 0.05;
    std::int64_t m_max = -1;
    DisambiguateOptions disambig{};
};

struct RegularityParams {
    std::vector<Partition> partitions;
    std::vector<std::int64_t> n_params;
    std::vector<double> eps_params;
    std::int64_t samples = 100'000;
    std::uint64_t seed = 2026;
};

struct PipelineReport {
    DecompositionReport decomposition;
    ComplexityReport complexity;
};

/** Decompose-then-certify: run the order-k spectral decomposition, then
 *  hand its structured part and residual to complexity_check_c1. Measures
 *  one concrete decomposition; makes no existence claim. */
PipelineReport furreg_pipeline(const GroupFunction& f, int k, const SpectralParams& sp,
                               const RegularityParams& rp, const EvalCaps& caps = {});

} // namespace hofa
