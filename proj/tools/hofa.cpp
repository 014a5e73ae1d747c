#include <cmath>
#include <cstdint>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "hofa/io.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

using hofa::cplx;
using hofa::EvalCaps;
using hofa::GroupFunction;
using hofa::GroupSpec;
using hofa::Partition;
using json = nlohmann::json;

struct Common {
    std::string input;
    std::string gen;
    std::string output;
    std::uint64_t seed = 2026;
    int threads = 0;
    std::int64_t cap_evals = 100'000'000;
};

// ---- generator specs: name:key=val,key=val with bracket-aware commas ----

std::vector<std::string> split_top(const std::string& s, char delim) {
    std::vector<std::string> parts;
    std::string cur;
    int depth = 0;
    for (const char c : s) {
        if (c == '[') ++depth;
        if (c == ']') {
            --depth;
            if (depth < 0) hofa::fail(hofa::ErrorKind::BadParameter, "unbalanced ']' in generator spec");
        }
        if (c == delim && depth == 0) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (depth != 0) hofa::fail(hofa::ErrorKind::BadParameter, "unbalanced '[' in generator spec");
    parts.push_back(cur);
    return parts;
}

struct GenSpec {
    std::string name;
    std::map<std::string, std::string> kv;
};

GenSpec parse_gen_spec(const std::string& s) {
    GenSpec g;
    const std::size_t colon = s.find(':');
    g.name = s.substr(0, colon);
    if (colon != std::string::npos && colon + 1 < s.size()) {
        for (const std::string& part : split_top(s.substr(colon + 1), ',')) {
            const std::size_t eq = part.find('=');
            if (eq == std::string::npos || eq == 0)
                hofa::fail(hofa::ErrorKind::BadParameter, "generator spec: expected key=value, got \"" + part + "\"");
            const std::string key = part.substr(0, eq);
            if (g.kv.count(key))
                hofa::fail(hofa::ErrorKind::BadParameter, "generator spec: duplicate key \"" + key + "\"");
            g.kv[key] = part.substr(eq + 1);
        }
    }
    return g;
}

std::int64_t to_int(const std::string& v, const std::string& key) {
    try {
        std::size_t used = 0;
        const std::int64_t r = std::stoll(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return r;
    } catch (const std::exception&) {
        hofa::fail(hofa::ErrorKind::BadParameter, "generator spec: key \"" + key + "\" wants an integer, got \"" + v + "\"");
    }
}

double to_double(const std::string& v, const std::string& key) {
    try {
        std::size_t used = 0;
        const double r = std::stod(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return r;
    } catch (const std::exception&) {
        hofa::fail(hofa::ErrorKind::BadParameter, "generator spec: key \"" + key + "\" wants a number, got \"" + v + "\"");
    }
}

std::vector<std::int64_t> to_int_list(const std::string& v, const std::string& key) {
    if (v.size() < 2 || v.front() != '[' || v.back() != ']')
        hofa::fail(hofa::ErrorKind::BadParameter, "generator spec: key \"" + key + "\" wants [a,b,...], got \"" + v + "\"");
    std::vector<std::int64_t> out;
    for (const std::string& part : split_top(v.substr(1, v.size() - 2), ','))
        out.push_back(to_int(part, key));
    return out;
}

class KeyReader {
  public:
    KeyReader(GenSpec spec) : spec_(std::move(spec)) {}

    std::optional<std::string> take(const std::string& key) {
        const auto it = spec_.kv.find(key);
        if (it == spec_.kv.end()) return std::nullopt;
        std::string v = it->second;
        spec_.kv.erase(it);
        return v;
    }

    std::string require(const std::string& key) {
        auto v = take(key);
        if (!v)
            hofa::fail(hofa::ErrorKind::BadParameter,
                       "generator \"" + spec_.name + "\" needs key \"" + key + "\"");
        return *v;
    }

    void finish() const {
        if (!spec_.kv.empty())
            hofa::fail(hofa::ErrorKind::BadParameter, "generator \"" + spec_.name + "\" does not take key \"" +
                                                          spec_.kv.begin()->first + "\"");
    }

    const std::string& name() const { return spec_.name; }

  private:
    GenSpec spec_;
};

GroupFunction generator_parse(const std::string& spec, std::uint64_t default_seed) {
    KeyReader r(parse_gen_spec(spec));
    if (r.name() == "quad") {
        const std::int64_t p = to_int(r.require("p"), "p");
        std::int64_t q = 1, l = 0;
        double re = 1.0, im = 0.0;
        if (auto v = r.take("q")) q = to_int(*v, "q");
        if (auto v = r.take("l")) l = to_int(*v, "l");
        if (auto v = r.take("re")) re = to_double(*v, "re");
        if (auto v = r.take("im")) im = to_double(*v, "im");
        r.finish();
        if (!hofa::is_prime(p))
            hofa::fail(hofa::ErrorKind::BadParameter, "quad: p = " + std::to_string(p) + " is not prime");
        return hofa::gen_quadratic_phase(p, q, l, cplx(re, im));
    }
    if (r.name() == "char") {
        const GroupSpec g = hofa::make_group(to_int_list(r.require("group"), "group"));
        const std::string mv = r.require("m");
        r.finish();
        hofa::CharacterIndex m;
        if (!mv.empty() && mv.front() == '[') {
            m = to_int_list(mv, "m");
        } else {
            if (g.factors.size() != 1)
                hofa::fail(hofa::ErrorKind::BadParameter, "char: m must be [..] with one entry per factor");
            m = {to_int(mv, "m")};
        }
        return hofa::character_function(g, m);
    }
    if (r.name() == "noise") {
        const GroupSpec g = hofa::make_group(to_int_list(r.require("group"), "group"));
        std::uint64_t seed = default_seed;
        if (auto v = r.take("seed")) seed = static_cast<std::uint64_t>(to_int(*v, "seed"));
        r.finish();
        return hofa::gen_random_unimodular(g, seed);
    }
    if (r.name() == "const") {
        const GroupSpec g = hofa::make_group(to_int_list(r.require("group"), "group"));
        double re = 1.0, im = 0.0;
        if (auto v = r.take("re")) re = to_double(*v, "re");
        if (auto v = r.take("im")) im = to_double(*v, "im");
        r.finish();
        return hofa::constant_function(g, cplx(re, im));
    }
    hofa::fail(hofa::ErrorKind::UnknownGenerator, "no generator named \"" + r.name() + "\"");
}

bool looks_like_generator(const std::string& s) {
    const std::size_t colon = s.find(':');
    if (colon == std::string::npos) return false;
    const std::string name = s.substr(0, colon);
    return name == "quad" || name == "char" || name == "noise" || name == "const";
}

GroupFunction resolve_function_arg(const std::string& s, std::uint64_t seed) {
    if (looks_like_generator(s)) return generator_parse(s, seed);
    return hofa::io::load_function(s);
}

GroupFunction resolve_input(const Common& c) {
    const bool has_input = !c.input.empty();
    const bool has_gen = !c.gen.empty();
    if (has_input == has_gen)
        hofa::fail(hofa::ErrorKind::ValidationError, "provide exactly one of --input or --gen");
    if (has_gen) return generator_parse(c.gen, c.seed);
    return hofa::io::load_function(c.input);
}

void apply_threads(const Common& c) {
#ifdef _OPENMP
    if (c.threads > 0) omp_set_num_threads(c.threads);
#else
    (void)c;
#endif
}

void emit(const Common& c, const std::string& command, json config, json input_function, json results) {
    config["seed"] = c.seed;
    config["threads"] = c.threads;
    config["cap_evals"] = c.cap_evals;
    if (!c.input.empty()) config["input"] = c.input;
    if (!c.gen.empty()) config["gen"] = c.gen;
    if (!c.output.empty()) config["output"] = c.output;

    json env;
    env["command"] = command;
    env["config"] = std::move(config);
    if (!input_function.is_null()) env["input_function"] = std::move(input_function);
    env["results"] = std::move(results);

    const std::string text = env.dump(2) + "\n";
    if (c.output.empty())
        std::cout << text;
    else
        hofa::io::write_file(c.output, text);
}

std::vector<Partition> resolve_partitions(const std::vector<std::string>& paths, int k, const GroupSpec& g) {
    std::vector<Partition> parts;
    if (paths.empty()) {
        for (int i = 0; i < k; ++i) parts.push_back(hofa::one_cell_partition(g));
        return parts;
    }
    if (static_cast<int>(paths.size()) != k)
        hofa::fail(hofa::ErrorKind::BadParameter, "expected " + std::to_string(k) + " partitions, got " +
                                                      std::to_string(paths.size()));
    for (const std::string& p : paths) parts.push_back(hofa::io::load_partition(p));
    return parts;
}

hofa::TestMode mode_from(const std::string& s) {
    if (s == "auto") return hofa::TestMode::Auto;
    if (s == "exhaustive") return hofa::TestMode::Exhaustive;
    return hofa::TestMode::Sampled;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"analysis of functions on finite abelian groups: uniformity norms,\n"
                 "order-k Fourier decompositions, multilinear forms, regularity checks"};
    app.require_subcommand(1);
    app.fallthrough();

    Common c;
    app.add_option("-o,--output", c.output, "write the JSON report here instead of stdout");
    app.add_option("--seed", c.seed, "seed for every randomized step (default 2026)");
    app.add_option("--threads", c.threads, "cap the worker thread count (0 = library default)");
    app.add_option("--cap-evals", c.cap_evals, "ceiling on exhaustive enumeration work");

    const auto add_io = [&](CLI::App* sc) {
        sc->add_option("--input", c.input, "function file (.json or .csv)");
        sc->add_option("--gen", c.gen, "generator spec, e.g. quad:p=7,q=2 or noise:group=[2,2,2]");
    };

    // gowers
    int gow_k = 2;
    bool gow_brute = false;
    auto* gowers = app.add_subcommand("gowers", "Gowers uniformity norm U_k");
    add_io(gowers);
    gowers->add_option("--k", gow_k, "norm order")->required();
    gowers->add_flag("--brute", gow_brute, "use the direct enumeration instead of the recursion");
    gowers->callback([&] {
        apply_threads(c);
        const GroupFunction f = resolve_input(c);
        const EvalCaps caps{c.cap_evals};
        const double power =
            gow_brute ? hofa::gowers_power_bruteforce(f, gow_k, caps) : hofa::gowers_power(f, gow_k, caps);
        const double norm = std::pow(power, 1.0 / std::ldexp(1.0, gow_k));
        json config{{"k", gow_k}, {"method", gow_brute ? "bruteforce" : "recursive"}};
        json results{{"kind", "gowers-report"}, {"k", gow_k}, {"power", power}, {"norm", norm}};
        emit(c, "gowers", std::move(config), hofa::io::function_json(f), std::move(results));
    });

    // fourier
    double fr_eps = 0.0;
    std::string fr_alg = "direct";
    auto* fourier = app.add_subcommand("fourier", "Fourier coefficients, optionally thresholded");
    add_io(fourier);
    fourier->add_option("--eps", fr_eps, "zero coefficients with |coefficient| < eps (0 keeps all)");
    fourier->add_option("--algorithm", fr_alg, "direct or radix2")
        ->check(CLI::IsMember({"direct", "radix2"}));
    fourier->callback([&] {
        apply_threads(c);
        const GroupFunction f = resolve_input(c);
        const auto alg = fr_alg == "radix2" ? hofa::DftAlgorithm::Radix2Auto : hofa::DftAlgorithm::Direct;
        const hofa::FourierSpectrum full = hofa::dft(f, alg);
        const hofa::FourierSpectrum out = fr_eps > 0.0 ? hofa::truncate(full, fr_eps) : full;
        json config{{"eps", fr_eps}, {"algorithm", fr_alg}};
        json results{{"kind", "fourier-report"},
                     {"spectrum", hofa::io::spectrum_json(out)},
                     {"support", hofa::support_size(out)},
                     {"u2", hofa::u2_from_spectrum(full)},
                     {"l2", hofa::l2_from_spectrum(full)}};
        emit(c, "fourier", std::move(config), hofa::io::function_json(f), std::move(results));
    });

    // decompose
    int dc_order = 2;
    double dc_eps = 0.1, dc_delta = 0.05, dc_septol = 1e-3;
    std::int64_t dc_mmax = -1;
    int dc_cands = 32;
    auto* dec = app.add_subcommand("decompose", "order-k spectral decomposition");
    add_io(dec);
    dec->add_option("--order", dc_order, "structure order (1 or 2)")->required();
    dec->add_option("--eps", dc_eps, "coefficient threshold inside the kernel");
    dec->add_option("--delta", dc_delta, "eigenvalue floor and clustering gap");
    dec->add_option("--m-max", dc_mmax, "keep at most this many components (-1 = all)");
    dec->add_option("--sep-tol", dc_septol, "required eigenvalue separation when disambiguating");
    dec->add_option("--max-candidates", dc_cands, "random span vectors tried when disambiguating");
    dec->callback([&] {
        apply_threads(c);
        const GroupFunction f = resolve_input(c);
        hofa::DisambiguateOptions opts;
        opts.separation_tol = dc_septol;
        opts.max_candidates = dc_cands;
        opts.seed = c.seed;
        const hofa::DecompositionReport rep = hofa::decompose(f, dc_order, dc_eps, dc_delta, dc_mmax, opts);
        json config{{"order", dc_order}, {"eps", dc_eps},           {"delta", dc_delta},
                    {"m_max", dc_mmax},  {"sep_tol", dc_septol},    {"max_candidates", dc_cands}};
        emit(c, "decompose", std::move(config), hofa::io::function_json(f), hofa::io::report_json(rep));
    });

    // multilinear
    int ml_k = 2;
    double ml_theta = -1.0;
    bool ml_extract = false;
    auto* ml = app.add_subcommand("multilinear", "order-k form of f and its diagnostics");
    add_io(ml);
    ml->add_option("--k", ml_k, "form order (1..4)")->required();
    ml->add_option("--theta", ml_theta, "also run the nonvanishing check at this threshold");
    ml->add_flag("--extract-bilinear", ml_extract, "recover the bilinear coefficient (k = 2, Z_p)");
    ml->callback([&] {
        apply_threads(c);
        const GroupFunction f = resolve_input(c);
        const EvalCaps caps{c.cap_evals};
        const hofa::MultilinearTensor T = hofa::vtilde(f, ml_k, caps);
        json results{{"kind", "multilinear-report"},
                     {"tensor", hofa::io::tensor_json(T)},
                     {"symmetry_defect", hofa::symmetry_defect(T)}};
        if (ml_theta >= 0.0)
            results["nonvanishing"] = hofa::io::report_json(hofa::nonvanishing_check(f, ml_k, ml_theta, caps));
        if (ml_extract) results["bilinear_coefficient"] = hofa::extract_bilinear(T);
        json config{{"k", ml_k}, {"theta", ml_theta}, {"extract_bilinear", ml_extract}};
        emit(c, "multilinear", std::move(config), hofa::io::function_json(f), std::move(results));
    });

    // character-test
    int ct_k = 1;
    double ct_eps = 0.1;
    std::int64_t ct_samples = 100'000;
    std::string ct_partition;
    std::string ct_mode = "auto";
    auto* ct = app.add_subcommand("character-test", "order-k character test modulo a partition");
    add_io(ct);
    ct->add_option("--k", ct_k, "test order")->required();
    ct->add_option("--eps", ct_eps, "residual tolerance");
    ct->add_option("--samples", ct_samples, "draws per pass in sampled mode");
    ct->add_option("--partition", ct_partition, "partition file (default: the one-cell partition)");
    ct->add_option("--mode", ct_mode, "auto, exhaustive, or sampled")
        ->check(CLI::IsMember({"auto", "exhaustive", "sampled"}));
    ct->callback([&] {
        apply_threads(c);
        const GroupFunction f = resolve_input(c);
        const Partition P =
            ct_partition.empty() ? hofa::one_cell_partition(f.group) : hofa::io::load_partition(ct_partition);
        const EvalCaps caps{c.cap_evals};
        const hofa::CharacterTestReport rep =
            hofa::character_test(f, P, ct_k, ct_eps, ct_samples, c.seed, mode_from(ct_mode), caps);
        json config{{"k", ct_k}, {"eps", ct_eps}, {"samples", ct_samples}, {"mode", ct_mode}};
        if (!ct_partition.empty()) config["partition"] = ct_partition;
        emit(c, "character-test", std::move(config), hofa::io::function_json(f), hofa::io::report_json(rep));
    });

    // complexity
    int cx_k = 1;
    std::int64_t cx_samples = 100'000;
    std::vector<std::string> cx_components, cx_partitions;
    std::vector<std::int64_t> cx_nparams;
    std::vector<double> cx_epsparams;
    std::string cx_residual;
    auto* cx = app.add_subcommand("complexity", "complexity certificate for f = h + sum of components");
    add_io(cx);
    cx->add_option("--k", cx_k, "certificate order (1 or 2)")->required();
    cx->add_option("--component", cx_components, "component (file or generator spec); repeatable");
    cx->add_option("--residual", cx_residual, "h (file or generator spec); default f - sum of components");
    cx->add_option("--partition", cx_partitions, "partition files, one per level (default: one-cell)");
    cx->add_option("--n-params", cx_nparams, "count bounds n_1..n_2k")->delimiter(',')->required();
    cx->add_option("--eps-params", cx_epsparams, "tolerances eps_1..eps_2k")->delimiter(',')->required();
    cx->add_option("--samples", cx_samples, "draws per pass for sampled character tests");
    cx->callback([&] {
        apply_threads(c);
        const GroupFunction f = resolve_input(c);
        std::vector<GroupFunction> comps;
        for (const std::string& s : cx_components) comps.push_back(resolve_function_arg(s, c.seed));
        GroupFunction h = f;
        if (cx_residual.empty()) {
            for (const auto& comp : comps) h = hofa::sub_functions(h, comp);
        } else {
            h = resolve_function_arg(cx_residual, c.seed);
        }
        const std::vector<Partition> parts = resolve_partitions(cx_partitions, cx_k, f.group);
        const EvalCaps caps{c.cap_evals};
        const hofa::ComplexityReport rep = hofa::complexity_check_c1(f, h, comps, parts, cx_nparams,
                                                                     cx_epsparams, cx_k, cx_samples, c.seed, caps);
        json config{{"k", cx_k},
                    {"components", cx_components},
                    {"partitions", cx_partitions},
                    {"n_params", cx_nparams},
                    {"eps_params", cx_epsparams},
                    {"samples", cx_samples}};
        if (!cx_residual.empty()) config["residual"] = cx_residual;
        emit(c, "complexity", std::move(config), hofa::io::function_json(f), hofa::io::report_json(rep));
    });

    // pipeline
    int pl_k = 2;
    double pl_eps = 0.1, pl_delta = 0.05, pl_septol = 1e-3;
    std::int64_t pl_mmax = -1, pl_samples = 100'000;
    int pl_cands = 32;
    std::vector<std::string> pl_partitions;
    std::vector<std::int64_t> pl_nparams;
    std::vector<double> pl_epsparams;
    auto* pl = app.add_subcommand("pipeline", "decompose, then certify the decomposition");
    add_io(pl);
    pl->add_option("--order", pl_k, "structure order (1 or 2)")->required();
    pl->add_option("--eps", pl_eps, "coefficient threshold inside the kernel");
    pl->add_option("--delta", pl_delta, "eigenvalue floor and clustering gap");
    pl->add_option("--m-max", pl_mmax, "keep at most this many components (-1 = all)");
    pl->add_option("--sep-tol", pl_septol, "required eigenvalue separation when disambiguating");
    pl->add_option("--max-candidates", pl_cands, "random span vectors tried when disambiguating");
    pl->add_option("--partition", pl_partitions, "partition files, one per level (default: one-cell)");
    pl->add_option("--n-params", pl_nparams, "count bounds n_1..n_2k")->delimiter(',')->required();
    pl->add_option("--eps-params", pl_epsparams, "tolerances eps_1..eps_2k")->delimiter(',')->required();
    pl->add_option("--samples", pl_samples, "draws per pass for sampled character tests");
    pl->callback([&] {
        apply_threads(c);
        const GroupFunction f = resolve_input(c);
        hofa::SpectralParams sp;
        sp.epsilon = pl_eps;
        sp.delta = pl_delta;
        sp.m_max = pl_mmax;
        sp.disambig.separation_tol = pl_septol;
        sp.disambig.max_candidates = pl_cands;
        sp.disambig.seed = c.seed;
        hofa::RegularityParams rp;
        rp.partitions = resolve_partitions(pl_partitions, pl_k, f.group);
        rp.n_params = pl_nparams;
        rp.eps_params = pl_epsparams;
        rp.samples = pl_samples;
        rp.seed = c.seed;
        const EvalCaps caps{c.cap_evals};
        const hofa::PipelineReport rep = hofa::furreg_pipeline(f, pl_k, sp, rp, caps);
        json config{{"order", pl_k},       {"eps", pl_eps},
                    {"delta", pl_delta},   {"m_max", pl_mmax},
                    {"sep_tol", pl_septol},{"max_candidates", pl_cands},
                    {"partitions", pl_partitions}, {"n_params", pl_nparams},
                    {"eps_params", pl_epsparams},  {"samples", pl_samples}};
        emit(c, "pipeline", std::move(config), hofa::io::function_json(f), hofa::io::report_json(rep));
    });

    // additivity
    int ad_k = 3;
    std::vector<std::string> ad_components;
    auto* ad = app.add_subcommand("additivity", "additivity gap of U_k^{2^k} across components");
    ad->add_option("--k", ad_k, "norm order")->required();
    ad->add_option("--component", ad_components, "component (file or generator spec); repeatable")
        ->required();
    ad->callback([&] {
        apply_threads(c);
        if (ad_components.size() < 2)
            hofa::fail(hofa::ErrorKind::BadParameter, "additivity needs at least two --component entries");
        std::vector<GroupFunction> comps;
        for (const std::string& s : ad_components) comps.push_back(resolve_function_arg(s, c.seed));
        const EvalCaps caps{c.cap_evals};
        const hofa::AdditivityReport rep = hofa::additivity_check(comps, ad_k, caps);
        json input = json::array();
        for (const auto& comp : comps) input.push_back(hofa::io::function_json(comp));
        json config{{"k", ad_k}, {"components", ad_components}};
        json results = hofa::io::report_json(rep);
        json env_input;
        env_input["components"] = std::move(input);
        emit(c, "additivity", std::move(config), std::move(env_input), std::move(results));
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const hofa::Error& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return hofa::is_analysis_error(e.kind()) ? 3 : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return 3;
    }
    return 0;
}
