#include "hofa/group.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace hofa {

GroupSpec make_group(std::vector<std::int64_t> factors, std::int64_t order_cap) {
    if (factors.empty()) fail(ErrorKind::EmptyFactors, "a group needs at least one cyclic factor");
    for (auto n : factors) {
        if (n < 2)
            fail(ErrorKind::FactorTooSmall,
                 "cyclic factor " + std::to_string(n) + " is smaller than 2");
    }
    std::int64_t order = 1;
    for (auto n : factors) {
        if (order > order_cap / n)
            fail(ErrorKind::OrderExceedsCap,
                 "group order exceeds the cap " + std::to_string(order_cap));
        order *= n;
    }

    GroupSpec g;
    g.factors = std::move(factors);
    g.order = order;
    g.strides.assign(g.factors.size(), 1);
    for (std::size_t j = g.factors.size() - 1; j > 0; --j)
        g.strides[j - 1] = g.strides[j] * g.factors[j];

    auto tables = std::make_shared<std::vector<std::vector<cplx>>>();
    tables->reserve(g.factors.size());
    for (auto n : g.factors) {
        std::vector<cplx> row(static_cast<std::size_t>(n));
        for (std::int64_t r = 0; r < n; ++r) {
            const double a = 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(n);
            row[static_cast<std::size_t>(r)] = cplx(std::cos(a), std::sin(a));
        }
        tables->push_back(std::move(row));
    }
    g.roots = std::move(tables);
    return g;
}

static void require_dim(const GroupSpec& g, const GroupElement& a, const char* where) {
    if (a.size() != g.factors.size())
        fail(ErrorKind::DimensionMismatch,
             std::string(where) + ": element has " + std::to_string(a.size()) +
                 " coordinates, group has " + std::to_string(g.factors.size()) + " factors");
}

static std::int64_t mod_factor(std::int64_t v, std::int64_t n) {
    std::int64_t r = v % n;
    return r < 0 ? r + n : r;
}

GroupElement add(const GroupSpec& g, const GroupElement& a, const GroupElement& b) {
    require_dim(g, a, "add");
    require_dim(g, b, "add");
    GroupElement out(a.size());
    for (std::size_t j = 0; j < a.size(); ++j)
        out[j] = mod_factor(a[j] + b[j], g.factors[j]);
    return out;
}

GroupElement neg(const GroupSpec& g, const GroupElement& a) {
    require_dim(g, a, "neg");
    GroupElement out(a.size());
    for (std::size_t j = 0; j < a.size(); ++j)
        out[j] = mod_factor(-a[j], g.factors[j]);
    return out;
}

std::int64_t index_of(const GroupSpec& g, const GroupElement& a) {
    require_dim(g, a, "index_of");
    std::int64_t idx = 0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        if (a[j] < 0 || a[j] >= g.factors[j])
            fail(ErrorKind::IndexOutOfRange,
                 "coordinate " + std::to_string(a[j]) + " outside factor Z_" +
                     std::to_string(g.factors[j]));
        idx += a[j] * g.strides[j];
    }
    return idx;
}

GroupElement element_of(const GroupSpec& g, std::int64_t index) {
    if (index < 0 || index >= g.order)
        fail(ErrorKind::IndexOutOfRange,
             "flat index " + std::to_string(index) + " outside [0, " + std::to_string(g.order) + ")");
    GroupElement out(g.factors.size());
    for (std::size_t j = 0; j < g.factors.size(); ++j) {
        out[j] = (index / g.strides[j]) % g.factors[j];
    }
    return out;
}

std::int64_t add_index(const GroupSpec& g, std::int64_t a, std::int64_t b) {
    std::int64_t out = 0;
    for (std::size_t j = 0; j < g.factors.size(); ++j) {
        const std::int64_t n = g.factors[j];
        const std::int64_t s = g.strides[j];
        const std::int64_t ca = (a / s) % n;
        const std::int64_t cb = (b / s) % n;
        std::int64_t c = ca + cb;
        if (c >= n) c -= n;
        out += c * s;
    }
    return out;
}

std::int64_t neg_index(const GroupSpec& g, std::int64_t a) {
    std::int64_t out = 0;
    for (std::size_t j = 0; j < g.factors.size(); ++j) {
        const std::int64_t n = g.factors[j];
        const std::int64_t s = g.strides[j];
        const std::int64_t ca = (a / s) % n;
        out += (ca == 0 ? 0 : n - ca) * s;
    }
    return out;
}

std::int64_t sub_index(const GroupSpec& g, std::int64_t a, std::int64_t b) {
    return add_index(g, a, neg_index(g, b));
}

cplx char_eval(const GroupSpec& g, const CharacterIndex& m, const GroupElement& x) {
    require_dim(g, m, "char_eval");
    require_dim(g, x, "char_eval");
    cplx out(1.0, 0.0);
    const auto& tables = *g.roots;
    for (std::size_t j = 0; j < m.size(); ++j) {
        const std::int64_t n = g.factors[j];
        const std::int64_t mj = mod_factor(m[j], n);
        const std::int64_t xj = x[j];
        if (xj < 0 || xj >= n)
            fail(ErrorKind::IndexOutOfRange, "char_eval: coordinate outside its factor");
        out *= tables[j][static_cast<std::size_t>((mj * xj) % n)];
    }
    return out;
}

cplx char_eval_index(const GroupSpec& g, std::int64_t m, std::int64_t x) {
    cplx out(1.0, 0.0);
    const auto& tables = *g.roots;
    for (std::size_t j = 0; j < g.factors.size(); ++j) {
        const std::int64_t n = g.factors[j];
        const std::int64_t s = g.strides[j];
        const std::int64_t mj = (m / s) % n;
        const std::int64_t xj = (x / s) % n;
        out *= tables[j][static_cast<std::size_t>((mj * xj) % n)];
    }
    return out;
}

void require_same_group(const GroupSpec& a, const GroupSpec& b, const char* where) {
    if (a != b)
        fail(ErrorKind::GroupMismatch, std::string(where) + ": operands live on different groups");
}

} // namespace hofa
