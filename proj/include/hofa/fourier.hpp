#pragma once

#include "hofa/function.hpp"

namespace hofa {

/** Fourier coefficients lambda_m = inner(f, chi_m), indexed like group
 *  elements (the dual group is identified with the group itself). */
struct FourierSpectrum {
    GroupSpec group;
    std::vector<cplx> coeffs;
};

enum class DftAlgorithm {
    Direct,     ///< per-factor O(n^2) summation in fixed index order (default)
    Radix2Auto, ///< iterative radix-2 on power-of-two factors, Direct elsewhere
};

/** Forward transform, applied factor by factor (tensor decomposition).
 *  The direct path sums in a fixed order with table-driven roots, so the
 *  output is reproducible bit for bit. */
FourierSpectrum dft(const GroupFunction& f, DftAlgorithm alg = DftAlgorithm::Direct);

/** Inverse transform: f(x) = sum_m lambda_m chi_m(x). */
GroupFunction idft(const FourierSpectrum& s, DftAlgorithm alg = DftAlgorithm::Direct);

/** Hard thresholding: zero every coefficient with |lambda_m| < eps.
 *  Ties (|lambda_m| == eps) are kept. Throws InvalidEpsilon on eps < 0. */
FourierSpectrum truncate(const FourierSpectrum& s, double eps);

/** Number of nonzero coefficients. */
std::int64_t support_size(const FourierSpectrum& s);

/** (sum_m |lambda_m|^4)^(1/4). */
double u2_from_spectrum(const FourierSpectrum& s);

/** (sum_m |lambda_m|^2)^(1/2); equals lp_norm(f,2) by Parseval. */
double l2_from_spectrum(const FourierSpectrum& s);

} // namespace hofa
