#pragma once

#include <cstdint>

#include "hofa/fourier.hpp"
#include "hofa/function.hpp"

namespace hofa {

/** Kernel K(x,y) stored row-major, acting on functions with averaged
 *  operator semantics: (Kv)(x) = (1/|A|) sum_y K(x,y) v(y). With that
 *  convention a rank-one kernel v(x) conj(v(y)) built from an
 *  expectation-unit v has operator eigenvalue 1. */
struct KernelMatrix {
    GroupSpec group;
    std::vector<cplx> entries;
};

GroupFunction apply(const KernelMatrix& K, const GroupFunction& v);

/** In-place (K + K*)/2; the exact symmetrization used before eigensolves. */
void hermitize(KernelMatrix& K);

/** M(x,y) = E_a f(x+a) conj(f(y+a)), restricted to frequencies with
 *  |lambda_m| >= eps. Closed form: M(x,y) = sum_m |lambda_m|^2 chi_m(x-y).
 *  Its operator eigenpairs are (|lambda_m|^2, chi_m). */
KernelMatrix shift_averaged_matrix(const GroupFunction& f, double eps = 0.0);

/** Order-2 kernel: for every difference t the column slice
 *  K(y+t, y) = sum_{m : |lambda_m(Delta_t f)| >= eps} lambda_m(Delta_t f) chi_m(y),
 *  then symmetrized. Throws InvalidEpsilon on eps <= 0. */
KernelMatrix quadratic_kernel(const GroupFunction& f, double eps);

/** Operator eigenvalues sorted descending with expectation-unit
 *  eigenvectors. Input must be Hermitian to 1e-6 entrywise (otherwise
 *  NonHermitian); it is symmetrized exactly before the solve. Cyclic
 *  complex Jacobi, deterministic for a given matrix. */
struct Eigensystem {
    GroupSpec group;
    std::vector<double> values;
    std::vector<GroupFunction> vectors;
};

Eigensystem hermitian_eig(const KernelMatrix& K);

/** Groups a descending eigenvalue list: values below delta are dropped,
 *  the rest split into maximal runs whose consecutive gaps stay below
 *  delta. Returns index lists into the input. */
std::vector<std::vector<int>> cluster_eigenvalues(const std::vector<double>& values, double delta);

struct DisambiguateOptions {
    double separation_tol = 1e-3; ///< required min eigenvalue gap inside a candidate restriction
    int max_candidates = 32;      ///< random span vectors tried after the deterministic witness
    std::uint64_t seed = 2026;
};

/** Resolves the basis ambiguity of a degenerate (or nearly degenerate)
 *  eigenvalue cluster. Candidate span vectors v are scored by the
 *  eigenvalue separation of the kernel of v restricted to the cluster
 *  span; the best-separated candidate's eigenbasis is returned. Throws
 *  SeparationFailed when no candidate separates beyond the tolerance. */
std::vector<GroupFunction> disambiguate_cluster(const GroupFunction& f, int order, double eps,
                                                const std::vector<GroupFunction>& basis,
                                                const DisambiguateOptions& opts = {});

struct DecompositionReport {
    int order = 0;
    double epsilon = 0.0;
    double delta = 0.0;
    std::int64_t m_max = -1;
    std::uint64_t seed = 0;
    std::vector<double> eigenvalues;      ///< operator eigenvalues, descending
    std::vector<GroupFunction> vectors;   ///< expectation-unit structured parts
    std::vector<GroupFunction> components;///< f_i = inner(f, v_i) v_i
    GroupFunction residual;               ///< f - sum_i f_i
    double residual_uk = 0.0;             ///< U_{order+1}(residual)
    double cross_gram = 0.0;              ///< max_{i != j} |inner(v_i, v_j)|
};

/** Order-k structure decomposition (k = 1 or 2, otherwise
 *  UnsupportedOrder): build the kernel, solve it, cluster at delta,
 *  disambiguate degenerate clusters, project f on the surviving
 *  eigenvectors, and keep at most m_max components (m_max < 0 means
 *  unlimited). */
DecompositionReport decompose(const GroupFunction& f, int order, double eps, double delta,
                              std::int64_t m_max = -1, const DisambiguateOptions& opts = {});

} // namespace hofa
