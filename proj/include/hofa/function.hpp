#pragma once

#include <cstdint>
#include <vector>

#include "hofa/group.hpp"

namespace hofa {

/** A complex-valued function on a finite abelian group, stored densely in
 *  flat-index order. All norms and inner products are expectation
 *  normalized: inner(f,g) = (1/|A|) sum_x f(x) conj(g(x)), so characters
 *  are unit vectors. */
struct GroupFunction {
    GroupSpec group;
    std::vector<cplx> values;
};

GroupFunction make_function(GroupSpec g, std::vector<cplx> values);
GroupFunction zero_function(const GroupSpec& g);
GroupFunction constant_function(const GroupSpec& g, cplx c);

/** chi_m as a GroupFunction. */
GroupFunction character_function(const GroupSpec& g, const CharacterIndex& m);

cplx inner(const GroupFunction& f, const GroupFunction& g);

/** (E |f|^p)^(1/p); p may be infinity. Summands are reduced in
 *  order-canonical (sorted) order, so the result is exactly invariant under
 *  any permutation of the values, shifts included. */
double lp_norm(const GroupFunction& f, double p);

/** Multiplicative difference Delta_t f(x) = f(x+t) conj(f(x)). */
GroupFunction delta(const GroupFunction& f, const GroupElement& t);
GroupFunction delta_index(const GroupFunction& f, std::int64_t t);

/** Iterated difference Delta_{t_1..t_k} f; an empty list returns f. */
GroupFunction delta_multi(const GroupFunction& f, const std::vector<GroupElement>& ts);

/** shift(f, a)(x) = f(x + a). */
GroupFunction shift(const GroupFunction& f, const GroupElement& a);

/** Cube corner map psi_S(x, t_1..t_d) = x + sum_{i in S} t_i for a subset S
 *  of {1..d} given as 1-based indices. Throws BadSubset on out-of-range or
 *  repeated indices. */
GroupElement psi_eval(const GroupSpec& g, const GroupElement& x, const std::vector<GroupElement>& ts,
                      const std::vector<int>& subset);

/** c * e((q x^2 + l x)/p) on Z_p, p prime (throws NotPrimeCyclic otherwise). */
GroupFunction gen_quadratic_phase(std::int64_t p, std::int64_t q, std::int64_t l = 0,
                                  cplx c = cplx(1.0, 0.0));

/** Seeded unimodular noise: values exp(2*pi*i*u_x) with u_x drawn from a
 *  SplitMix64 stream in flat-index order. Identical output for identical
 *  (group, seed) on every platform. */
GroupFunction gen_random_unimodular(const GroupSpec& g, std::uint64_t seed);

// pointwise arithmetic
GroupFunction add_functions(const GroupFunction& a, const GroupFunction& b);
GroupFunction sub_functions(const GroupFunction& a, const GroupFunction& b);
GroupFunction mul_functions(const GroupFunction& a, const GroupFunction& b);
GroupFunction scale_function(const GroupFunction& f, cplx c);

bool is_prime(std::int64_t n);

} // namespace hofa
