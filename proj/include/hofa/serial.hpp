#pragma once

#include "hofa/gowers.hpp"
#include "hofa/multilinear.hpp"
#include "hofa/spectral.hpp"

namespace hofa::serial {

/** Single-threaded textbook implementations: plain loops in natural order,
 *  no blocking, no transform reuse. They double as independent oracles for
 *  the parallel kernels and as the baseline of the benchmark target. */

double gowers_power_bruteforce(const GroupFunction& f, int k);
cplx cube_average(const CubeSystem& sys);
MultilinearTensor vtilde(const GroupFunction& f, int k);

/** Direct O(|A|^3) average E_a f(x+a) conj(f(y+a)), no transform. */
KernelMatrix shift_averaged_matrix(const GroupFunction& f);

/** Coefficients of every Delta_t f by direct character sums, then the
 *  thresholded column synthesis, then (K + K*)/2. */
KernelMatrix quadratic_kernel(const GroupFunction& f, double eps);

} // namespace hofa::serial
