#pragma once

#include "hofa/function.hpp"

namespace hofa {

/** Work ceiling for exhaustive enumerations, counted in inner-loop
 *  evaluations (|A|^{k+1} for the brute-force norm). */
struct EvalCaps {
    std::int64_t max_evals = 100'000'000;
};

/** U_k(f) through the recursion U_{k+1}(f)^{2^{k+1}} = E_t U_k(Delta_t f)^{2^k},
 *  base U_1(f) = |E f|. Cost ~ |A|^k. */
double gowers_norm(const GroupFunction& f, int k, const EvalCaps& caps = {});

/** U_k(f)^{2^k} (the additive quantity; avoids taking nested roots). */
double gowers_power(const GroupFunction& f, int k, const EvalCaps& caps = {});

/** Independent route: the direct average of Delta_{t_1..t_k} f(x) over
 *  A^{k+1}, each summand evaluated as its 2^k-corner product. The average
 *  must come out real and nonnegative to 1e-9 (relative to ||f||_inf^{2^k});
 *  worse raises InternalConsistency, tiny negativity is clamped to zero. */
double gowers_norm_bruteforce(const GroupFunction& f, int k, const EvalCaps& caps = {});
double gowers_power_bruteforce(const GroupFunction& f, int k, const EvalCaps& caps = {});

/** A function for every corner of the d-cube, indexed by subset bitmask
 *  (bit i-1 set <=> i in S). */
struct CubeSystem {
    int d = 0;
    GroupSpec group;
    std::vector<GroupFunction> assignment; // size 2^d
};

CubeSystem make_cube_system(int d, std::vector<GroupFunction> assignment);

/** E_{x,t} prod_{S subset [d]} f_S(psi_S(x,t))^{c(|S|)} with conjugation
 *  applied |S| times. With every f_S = f this equals U_d(f)^{2^d}. */
cplx cube_average(const CubeSystem& sys, const EvalCaps& caps = {});

struct AdditivityReport {
    int k = 0;
    double lhs = 0.0;                     ///< U_k(sum phi_i)^{2^k}
    double rhs = 0.0;                     ///< sum_i U_k(phi_i)^{2^k}
    double gap = 0.0;                     ///< |lhs - rhs|
    std::vector<double> component_powers; ///< U_k(phi_i)^{2^k}
};

/** Measures how far U_k^{2^k} is from being additive across the given
 *  components (recursive route). */
AdditivityReport additivity_check(const std::vector<GroupFunction>& components, int k,
                                  const EvalCaps& caps = {});

} // namespace hofa
