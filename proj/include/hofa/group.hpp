#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <vector>

#include "hofa/errors.hpp"

namespace hofa {

using cplx = std::complex<double>;

/** Default ceiling on the group order. Everything here is desk scale by
 *  design; the cap exists to fail fast on typo'd factor lists. */
inline constexpr std::int64_t kDefaultOrderCap = 1 << 16;

/**
 * A finite abelian group presented as a product of cyclic factors
 * Z_{n_1} x ... x Z_{n_r}. Elements are coordinate vectors; a flat index
 * enumerates elements in row-major order with the last factor fastest.
 *
 * The spec carries a table of the powers of exp(2*pi*i/n_j) for each factor,
 * computed independently per entry (not by repeated multiplication), so
 * character evaluation is bit-stable and accurate to a few ulp.
 */
struct GroupSpec {
    std::vector<std::int64_t> factors;
    std::int64_t order = 0;
    std::vector<std::int64_t> strides;
    std::shared_ptr<const std::vector<std::vector<cplx>>> roots;

    bool operator==(const GroupSpec& o) const { return factors == o.factors; }
    bool operator!=(const GroupSpec& o) const { return !(*this == o); }
};

/** An element (or equally a character index) in coordinate form. */
using GroupElement = std::vector<std::int64_t>;
using CharacterIndex = GroupElement;

/** Builds a validated GroupSpec. Throws EmptyFactors, FactorTooSmall (any
 *  factor < 2), or OrderExceedsCap. */
GroupSpec make_group(std::vector<std::int64_t> factors, std::int64_t order_cap = kDefaultOrderCap);

/** Componentwise sum mod the factors. Throws DimensionMismatch. */
GroupElement add(const GroupSpec& g, const GroupElement& a, const GroupElement& b);

/** Componentwise negation mod the factors. */
GroupElement neg(const GroupSpec& g, const GroupElement& a);

/** Row-major flat index of an element; inverse of element_of.
 *  Throws DimensionMismatch / IndexOutOfRange. */
std::int64_t index_of(const GroupSpec& g, const GroupElement& a);
GroupElement element_of(const GroupSpec& g, std::int64_t index);

/** Flat-index arithmetic (same semantics as add/neg on coordinates). */
std::int64_t add_index(const GroupSpec& g, std::int64_t a, std::int64_t b);
std::int64_t neg_index(const GroupSpec& g, std::int64_t a);
std::int64_t sub_index(const GroupSpec& g, std::int64_t a, std::int64_t b);

/** chi_m(x) = prod_j exp(2*pi*i * m_j x_j / n_j), read from the root tables. */
cplx char_eval(const GroupSpec& g, const CharacterIndex& m, const GroupElement& x);

/** char_eval on flat indices. */
cplx char_eval_index(const GroupSpec& g, std::int64_t m, std::int64_t x);

void require_same_group(const GroupSpec& a, const GroupSpec& b, const char* where);

} // namespace hofa
