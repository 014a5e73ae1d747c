#include "hofa/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace hofa::io {

namespace {

json cplx_json(const cplx& z) { return json::array({z.real(), z.imag()}); }

cplx cplx_from(const json& j, const char* where) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        fail(ErrorKind::ValidationError, std::string(where) + ": complex values must be [re, im] pairs");
    return {j[0].get<double>(), j[1].get<double>()};
}

json values_json(const std::vector<cplx>& vals) {
    json arr = json::array();
    for (const cplx& z : vals) arr.push_back(cplx_json(z));
    return arr;
}

std::vector<cplx> values_from(const json& j, std::int64_t expected, const char* where) {
    if (!j.is_array())
        fail(ErrorKind::ValidationError, std::string(where) + ": values must be an array");
    if (static_cast<std::int64_t>(j.size()) != expected)
        fail(ErrorKind::ValidationError, std::string(where) + ": expected " + std::to_string(expected) +
                                             " values, got " + std::to_string(j.size()));
    std::vector<cplx> vals;
    vals.reserve(j.size());
    for (const json& el : j) vals.push_back(cplx_from(el, where));
    return vals;
}

GroupSpec group_from(const json& j, const char* where) {
    if (!j.is_object() || !j.contains("group"))
        fail(ErrorKind::ValidationError, std::string(where) + ": missing \"group\"");
    const json& g = j["group"];
    if (!g.is_array())
        fail(ErrorKind::ValidationError, std::string(where) + ": \"group\" must be an array of factors");
    std::vector<std::int64_t> factors;
    for (const json& el : g) {
        if (!el.is_number_integer())
            fail(ErrorKind::ValidationError, std::string(where) + ": group factors must be integers");
        factors.push_back(el.get<std::int64_t>());
    }
    return make_group(std::move(factors));
}

void require_kind(const json& j, const char* kind, bool optional, const char* where) {
    if (!j.is_object()) fail(ErrorKind::ValidationError, std::string(where) + ": expected a JSON object");
    if (!j.contains("kind")) {
        if (optional) return;
        fail(ErrorKind::ValidationError, std::string(where) + ": missing \"kind\"");
    }
    if (!j["kind"].is_string() || j["kind"].get<std::string>() != kind)
        fail(ErrorKind::ValidationError, std::string(where) + ": expected kind \"" + kind + "\"");
}

} // namespace

json function_json(const GroupFunction& f) {
    json j;
    j["kind"] = "function";
    j["group"] = f.group.factors;
    j["values"] = values_json(f.values);
    return j;
}

GroupFunction function_from_json(const json& j) {
    require_kind(j, "function", /*optional=*/true, "function_from_json");
    GroupSpec g = group_from(j, "function_from_json");
    if (!j.contains("values")) fail(ErrorKind::ValidationError, "function_from_json: missing \"values\"");
    std::vector<cplx> vals = values_from(j["values"], g.order, "function_from_json");
    return make_function(std::move(g), std::move(vals));
}

json spectrum_json(const FourierSpectrum& s) {
    json j;
    j["kind"] = "spectrum";
    j["group"] = s.group.factors;
    j["values"] = values_json(s.coeffs);
    return j;
}

FourierSpectrum spectrum_from_json(const json& j) {
    require_kind(j, "spectrum", /*optional=*/false, "spectrum_from_json");
    GroupSpec g = group_from(j, "spectrum_from_json");
    if (!j.contains("values")) fail(ErrorKind::ValidationError, "spectrum_from_json: missing \"values\"");
    std::vector<cplx> vals = values_from(j["values"], g.order, "spectrum_from_json");
    return FourierSpectrum{std::move(g), std::move(vals)};
}

json partition_json(const Partition& P) {
    json j;
    j["kind"] = "partition";
    j["group"] = P.group.factors;
    j["cells"] = P.cell_of;
    return j;
}

Partition partition_from_json(const json& j) {
    require_kind(j, "partition", /*optional=*/true, "partition_from_json");
    GroupSpec g = group_from(j, "partition_from_json");
    if (!j.contains("cells") || !j["cells"].is_array())
        fail(ErrorKind::ValidationError, "partition_from_json: missing \"cells\" array");
    std::vector<std::int32_t> cells;
    for (const json& el : j["cells"]) {
        if (!el.is_number_integer())
            fail(ErrorKind::ValidationError, "partition_from_json: cell labels must be integers");
        cells.push_back(el.get<std::int32_t>());
    }
    return make_partition(std::move(g), std::move(cells));
}

json tensor_json(const MultilinearTensor& T) {
    json j;
    j["kind"] = "tensor";
    j["group"] = T.group.factors;
    j["k"] = T.k;
    j["shape"] = std::vector<std::int64_t>(static_cast<std::size_t>(T.k), T.group.order);
    j["values"] = values_json(T.values);
    return j;
}

MultilinearTensor tensor_from_json(const json& j) {
    require_kind(j, "tensor", /*optional=*/false, "tensor_from_json");
    GroupSpec g = group_from(j, "tensor_from_json");
    if (!j.contains("k") || !j["k"].is_number_integer())
        fail(ErrorKind::ValidationError, "tensor_from_json: missing integer \"k\"");
    const int k = j["k"].get<int>();
    if (k < 1 || k > 8) fail(ErrorKind::ValidationError, "tensor_from_json: k out of range");
    std::int64_t expected = 1;
    for (int i = 0; i < k; ++i) expected *= g.order;
    if (j.contains("shape")) {
        const json& sh = j["shape"];
        if (!sh.is_array() || static_cast<int>(sh.size()) != k)
            fail(ErrorKind::ValidationError, "tensor_from_json: shape must list k extents");
        for (const json& el : sh)
            if (!el.is_number_integer() || el.get<std::int64_t>() != g.order)
                fail(ErrorKind::ValidationError, "tensor_from_json: every extent must equal |A|");
    }
    if (!j.contains("values")) fail(ErrorKind::ValidationError, "tensor_from_json: missing \"values\"");
    std::vector<cplx> vals = values_from(j["values"], expected, "tensor_from_json");
    return MultilinearTensor{std::move(g), k, std::move(vals)};
}

json report_json(const AdditivityReport& r) {
    json j;
    j["kind"] = "additivity-report";
    j["k"] = r.k;
    j["lhs"] = r.lhs;
    j["rhs"] = r.rhs;
    j["gap"] = r.gap;
    j["component_powers"] = r.component_powers;
    return j;
}

json report_json(const NonvanishingReport& r) {
    json j;
    j["kind"] = "nonvanishing-report";
    j["k"] = r.k;
    j["theta"] = r.theta;
    j["uk1"] = r.uk1;
    j["max_abs"] = r.max_abs;
    j["pass"] = r.pass;
    return j;
}

json report_json(const CharacterTestReport& r) {
    json j;
    j["kind"] = "character-test-report";
    j["k"] = r.k;
    j["epsilon"] = r.epsilon;
    j["residual_estimate"] = r.residual_estimate;
    j["samples"] = r.samples;
    j["seed"] = r.seed;
    j["pass"] = r.pass;
    j["exhaustive"] = r.exhaustive;
    j["stderr_estimate"] = r.stderr_estimate;
    return j;
}

json report_json(const ComplexityReport& r) {
    json j;
    j["kind"] = "complexity-report";
    j["k"] = r.k;
    j["pass"] = r.pass;
    j["n_cells"] = r.n_cells;
    json clauses = json::array();
    for (const auto& c : r.clauses) {
        json cj;
        cj["name"] = c.name;
        cj["pass"] = c.pass;
        cj["measured"] = c.measured;
        cj["bound"] = c.bound;
        clauses.push_back(std::move(cj));
    }
    j["clauses"] = std::move(clauses);
    json tests = json::array();
    for (const auto& t : r.char_tests) tests.push_back(report_json(t));
    j["char_tests"] = std::move(tests);
    json cells = json::array();
    for (const auto& c : r.cell_reports) cells.push_back(report_json(c));
    j["cell_reports"] = std::move(cells);
    return j;
}

json report_json(const DecompositionReport& r) {
    json j;
    j["kind"] = "decomposition-report";
    j["order"] = r.order;
    j["epsilon"] = r.epsilon;
    j["delta"] = r.delta;
    j["m_max"] = r.m_max;
    j["seed"] = r.seed;
    j["eigenvalues"] = r.eigenvalues;
    json vecs = json::array();
    for (const auto& v : r.vectors) vecs.push_back(function_json(v));
    j["vectors"] = std::move(vecs);
    json comps = json::array();
    for (const auto& c : r.components) comps.push_back(function_json(c));
    j["components"] = std::move(comps);
    j["residual"] = function_json(r.residual);
    j["residual_uk"] = r.residual_uk;
    j["cross_gram"] = r.cross_gram;
    return j;
}

json report_json(const PipelineReport& r) {
    json j;
    j["kind"] = "pipeline-report";
    j["decomposition"] = report_json(r.decomposition);
    j["complexity"] = report_json(r.complexity);
    return j;
}

std::string function_to_csv(const GroupFunction& f) {
    if (f.group.factors.size() != 1)
        fail(ErrorKind::ValidationError, "function_to_csv: CSV covers single-factor cyclic groups only");
    std::string out = "index,re,im\n";
    char buf[128];
    for (std::int64_t i = 0; i < f.group.order; ++i) {
        const cplx z = f.values[static_cast<std::size_t>(i)];
        std::snprintf(buf, sizeof buf, "%lld,%.17g,%.17g\n", static_cast<long long>(i), z.real(), z.imag());
        out += buf;
    }
    return out;
}

namespace {

double parse_double_field(std::string_view s, const char* where) {
    double v = 0.0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    const auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc{} || res.ptr != last)
        fail(ErrorKind::ParseError, std::string(where) + ": bad numeric field \"" + std::string(s) + "\"");
    return v;
}

std::int64_t parse_int_field(std::string_view s, const char* where) {
    std::int64_t v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
        fail(ErrorKind::ParseError, std::string(where) + ": bad integer field \"" + std::string(s) + "\"");
    return v;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

} // namespace

GroupFunction function_from_csv(const std::string& text) {
    std::vector<std::pair<std::int64_t, cplx>> rows;
    std::size_t pos = 0;
    bool first_line = true;
    while (pos < text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string::npos) end = text.size();
        std::string_view line = trim(std::string_view(text).substr(pos, end - pos));
        pos = end + 1;
        if (line.empty()) continue;
        if (first_line && line.substr(0, 5) == "index") {
            first_line = false;
            continue;
        }
        first_line = false;
        const std::size_t c1 = line.find(',');
        const std::size_t c2 = (c1 == std::string_view::npos) ? std::string_view::npos : line.find(',', c1 + 1);
        if (c2 == std::string_view::npos)
            fail(ErrorKind::ParseError, "function_from_csv: expected index,re,im");
        const std::int64_t idx = parse_int_field(trim(line.substr(0, c1)), "function_from_csv");
        const double re = parse_double_field(trim(line.substr(c1 + 1, c2 - c1 - 1)), "function_from_csv");
        const double im = parse_double_field(trim(line.substr(c2 + 1)), "function_from_csv");
        rows.emplace_back(idx, cplx(re, im));
    }
    const std::int64_t n = static_cast<std::int64_t>(rows.size());
    if (n == 0) fail(ErrorKind::ValidationError, "function_from_csv: no rows");
    GroupSpec g = make_group({n});
    std::vector<cplx> vals(static_cast<std::size_t>(n));
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    for (const auto& [idx, z] : rows) {
        if (idx < 0 || idx >= n || seen[static_cast<std::size_t>(idx)])
            fail(ErrorKind::ValidationError, "function_from_csv: indices must cover 0..n-1 exactly once");
        seen[static_cast<std::size_t>(idx)] = 1;
        vals[static_cast<std::size_t>(idx)] = z;
    }
    return make_function(std::move(g), std::move(vals));
}

json parse_json(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        fail(ErrorKind::ParseError, std::string("invalid JSON: ") + e.what());
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::ParseError, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorKind::ValidationError, "cannot write " + path);
    out << content;
    if (!out) fail(ErrorKind::ValidationError, "write failed for " + path);
}

namespace {
bool ends_with(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}
} // namespace

GroupFunction load_function(const std::string& path) {
    const std::string text = read_file(path);
    if (ends_with(path, ".csv")) return function_from_csv(text);
    return function_from_json(parse_json(text));
}

void save_function(const std::string& path, const GroupFunction& f) {
    if (ends_with(path, ".csv"))
        write_file(path, function_to_csv(f));
    else
        write_file(path, function_json(f).dump(2) + "\n");
}

Partition load_partition(const std::string& path) { return partition_from_json(parse_json(read_file(path))); }

} // namespace hofa::io
