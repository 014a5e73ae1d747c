#include "hofa/fourier.hpp"

#include <cmath>

#include "hofa/detail/reduce.hpp"

namespace hofa {

namespace {

bool is_pow2(std::int64_t n) { return n > 0 && (n & (n - 1)) == 0; }

// One length-n direct transform along a line gathered into `line`.
// forward: out[m] = (1/n) sum_x line[x] conj(w^{m x}); inverse drops the 1/n
// and uses w^{+m x}.
void line_direct(const std::vector<cplx>& table, std::vector<cplx>& line, std::vector<cplx>& out,
                 bool forward) {
    const std::int64_t n = static_cast<std::int64_t>(line.size());
    const double scale = forward ? 1.0 / static_cast<double>(n) : 1.0;
    for (std::int64_t m = 0; m < n; ++m) {
        cplx acc(0.0, 0.0);
        for (std::int64_t x = 0; x < n; ++x) {
            const cplx w = table[static_cast<std::size_t>((m * x) % n)];
            acc += line[static_cast<std::size_t>(x)] * (forward ? std::conj(w) : w);
        }
        out[static_cast<std::size_t>(m)] = acc * scale;
    }
}

// Iterative radix-2 butterfly transform for power-of-two lines.
void line_radix2(const std::vector<cplx>& table, std::vector<cplx>& line, std::vector<cplx>& out,
                 bool forward) {
    const std::size_t n = line.size();
    out = line;
    // bit reversal
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(out[i], out[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t step = n / len;
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t k = 0; k < len / 2; ++k) {
                cplx w = table[k * step];
                if (forward) w = std::conj(w);
                const cplx u = out[i + k];
                const cplx v = out[i + k + len / 2] * w;
                out[i + k] = u + v;
                out[i + k + len / 2] = u - v;
            }
        }
    }
    if (forward) {
        const double scale = 1.0 / static_cast<double>(n);
        for (auto& v : out) v *= scale;
    }
}

void transform(const GroupSpec& g, std::vector<cplx>& data, bool forward, DftAlgorithm alg) {
    const std::int64_t total = g.order;
    for (std::size_t axis = 0; axis < g.factors.size(); ++axis) {
        const std::int64_t n = g.factors[axis];
        const std::int64_t stride = g.strides[axis];
        const auto& table = (*g.roots)[axis];
        const bool fast = alg == DftAlgorithm::Radix2Auto && is_pow2(n) && n >= 2;

        std::vector<cplx> line(static_cast<std::size_t>(n)), out(static_cast<std::size_t>(n));
        const std::int64_t lines = total / n;
        for (std::int64_t li = 0; li < lines; ++li) {
            // base index of the li-th line along this axis
            const std::int64_t outer = li / stride;
            const std::int64_t inner = li % stride;
            const std::int64_t base = outer * stride * n + inner;
            for (std::int64_t x = 0; x < n; ++x)
                line[static_cast<std::size_t>(x)] = data[static_cast<std::size_t>(base + x * stride)];
            if (fast)
                line_radix2(table, line, out, forward);
            else
                line_direct(table, line, out, forward);
            for (std::int64_t m = 0; m < n; ++m)
                data[static_cast<std::size_t>(base + m * stride)] = out[static_cast<std::size_t>(m)];
        }
    }
}

} // namespace

FourierSpectrum dft(const GroupFunction& f, DftAlgorithm alg) {
    if (static_cast<std::int64_t>(f.values.size()) != f.group.order)
        fail(ErrorKind::DimensionMismatch, "dft: value count does not match the group order");
    FourierSpectrum s{f.group, f.values};
    transform(f.group, s.coeffs, true, alg);
    return s;
}

GroupFunction idft(const FourierSpectrum& s, DftAlgorithm alg) {
    if (static_cast<std::int64_t>(s.coeffs.size()) != s.group.order)
        fail(ErrorKind::DimensionMismatch, "idft: coefficient count does not match the group order");
    GroupFunction f{s.group, s.coeffs};
    transform(s.group, f.values, false, alg);
    return f;
}

FourierSpectrum truncate(const FourierSpectrum& s, double eps) {
    if (!(eps >= 0.0))
        fail(ErrorKind::InvalidEpsilon, "truncate: threshold must be nonnegative");
    FourierSpectrum out = s;
    for (auto& c : out.coeffs)
        if (std::abs(c) < eps) c = cplx(0.0, 0.0);
    return out;
}

std::int64_t support_size(const FourierSpectrum& s) {
    std::int64_t k = 0;
    for (const auto& c : s.coeffs)
        if (c != cplx(0.0, 0.0)) ++k;
    return k;
}

double u2_from_spectrum(const FourierSpectrum& s) {
    std::vector<double> terms(s.coeffs.size());
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const double a = std::norm(s.coeffs[i]);
        terms[i] = a * a;
    }
    return std::pow(detail::pairwise_sum(terms), 0.25);
}

double l2_from_spectrum(const FourierSpectrum& s) {
    std::vector<double> terms(s.coeffs.size());
    for (std::size_t i = 0; i < terms.size(); ++i) terms[i] = std::norm(s.coeffs[i]);
    return std::sqrt(detail::pairwise_sum(terms));
}

} // namespace hofa
