#pragma once

#include <algorithm>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace hofa::detail {

using cplx = std::complex<double>;

/** Pairwise (balanced-tree) summation. The tree shape depends only on the
 *  length, never on scheduling, so results are reproducible run to run. */
template <typename T>
T pairwise_sum(std::span<const T> v) {
    const std::size_t n = v.size();
    if (n == 0) return T{};
    if (n <= 8) {
        T acc = v[0];
        for (std::size_t i = 1; i < n; ++i) acc += v[i];
        return acc;
    }
    const std::size_t half = n / 2;
    return pairwise_sum(v.subspan(0, half)) + pairwise_sum(v.subspan(half));
}

template <typename T>
T pairwise_sum(const std::vector<T>& v) {
    return pairwise_sum(std::span<const T>(v));
}

inline bool lex_less(const cplx& a, const cplx& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
}

/** Order-canonical mean: summands are sorted before the pairwise reduction,
 *  so the result depends only on the multiset of values. Shifting a function
 *  permutes the summands of its expectation, hence expectations computed this
 *  way are exactly shift invariant. Sorts a scratch copy. */
inline cplx sorted_mean(std::vector<cplx>& scratch) {
    if (scratch.empty()) return {};
    std::sort(scratch.begin(), scratch.end(), lex_less);
    return pairwise_sum(scratch) / static_cast<double>(scratch.size());
}

inline double sorted_sum(std::vector<double>& scratch) {
    if (scratch.empty()) return 0.0;
    std::sort(scratch.begin(), scratch.end());
    return pairwise_sum(std::span<const double>(scratch));
}

} // namespace hofa::detail
