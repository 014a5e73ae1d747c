#pragma once

#include "hofa/gowers.hpp"

namespace hofa {

/** Values of a k-argument form on A^k, indexed by flat group indices with
 *  the last argument fastest. */
struct MultilinearTensor {
    GroupSpec group;
    int k = 0;
    std::vector<cplx> values; // |A|^k entries
};

std::int64_t tensor_index(const MultilinearTensor& T, const std::vector<std::int64_t>& ts);
cplx tensor_at(const MultilinearTensor& T, const std::vector<std::int64_t>& ts);

/** The order-k form of f: T(t_1..t_k) = E_x Delta_{t_1..t_k} f(x) (the
 *  corner product over the k-cube, conjugated on odd-size subsets). Its
 *  mean square ties back to the norm: E_t |T(t)|^2 = U_{k+1}(f)^{2^{k+1}}.
 *  Supports 1 <= k <= 4. */
MultilinearTensor vtilde(const GroupFunction& f, int k, const EvalCaps& caps = {});

/** max over index permutations sigma and tuples t of |T(t) - T(sigma t)|. */
double symmetry_defect(const MultilinearTensor& T);

struct NonvanishingReport {
    int k = 0;
    double theta = 0.0;
    double uk1 = 0.0;     ///< U_{k+1}(f)
    double max_abs = 0.0; ///< max_t |T(t)|
    bool pass = false;    ///< uk1 <= theta or the form is somewhere nonzero
};

/** Checks the dichotomy "large U_{k+1} forces a nonvanishing order-k
 *  form": pass is false only when uk1 > theta yet the form is
 *  identically zero. */
NonvanishingReport nonvanishing_check(const GroupFunction& f, int k, double theta,
                                      const EvalCaps& caps = {});

/** For a 2-form on a prime cyclic group Z_p that is unimodular (to 1e-6)
 *  and bilinear (to 1e-8), returns the coefficient B in [0, p) with
 *  T(t_1, t_2) = e(B t_1 t_2 / p). Throws NotPrimeCyclic / NotUnimodular /
 *  NotBilinear when the premises fail, InvalidOrder when T.k != 2. */
std::int64_t extract_bilinear(const MultilinearTensor& T);

} // namespace hofa
