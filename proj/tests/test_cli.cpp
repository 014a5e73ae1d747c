#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"

#include "common.hpp"
#include "hofa/io.hpp"

using hofa::io::json;

namespace {

struct RunResult {
    int code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/** Invoke the installed binary with the given argument string and capture
 *  exit code, stdout, and stderr. */
RunResult run_cli(const std::string& args) {
    static int counter = 0;
    const std::string tag = std::to_string(counter++);
    const std::string out_path = "cli_stdout_" + tag + ".txt";
    const std::string err_path = "cli_stderr_" + tag + ".txt";
    const std::string cmd =
        std::string("\"") + HOFA_CLI_PATH + "\" " + args + " >" + out_path + " 2>" + err_path;
    const int raw = std::system(cmd.c_str());
    RunResult r;
    r.code = (raw == -1) ? -1 : WEXITSTATUS(raw);
    r.out = slurp(out_path);
    r.err = slurp(err_path);
    std::remove(out_path.c_str());
    std::remove(err_path.c_str());
    return r;
}

json run_json(const std::string& args) {
    const RunResult r = run_cli(args);
    CAPTURE(args);
    CAPTURE(r.err);
    REQUIRE(r.code == 0);
    return json::parse(r.out);
}

/** Minimal JSON Schema checker covering the subset our published schemas
 *  use: type, enum, required, properties, items, minItems, maxItems, and
 *  local $ref into #/$defs. */
class SchemaChecker {
  public:
    explicit SchemaChecker(json root) : root_(std::move(root)) {}

    std::vector<std::string> validate(const json& value) {
        errors_.clear();
        check(root_, value, "$");
        return errors_;
    }

  private:
    const json& resolve(const json& schema) {
        if (!schema.contains("$ref")) return schema;
        const std::string ref = schema.at("$ref").get<std::string>();
        const std::string prefix = "#/$defs/";
        if (ref.rfind(prefix, 0) != 0) {
            errors_.push_back("unsupported $ref: " + ref);
            return schema;
        }
        return root_.at("$defs").at(ref.substr(prefix.size()));
    }

    static bool type_ok(const std::string& t, const json& v) {
        if (t == "object") return v.is_object();
        if (t == "array") return v.is_array();
        if (t == "string") return v.is_string();
        if (t == "boolean") return v.is_boolean();
        if (t == "integer") return v.is_number_integer();
        if (t == "number") return v.is_number();
        if (t == "null") return v.is_null();
        return false;
    }

    void check(const json& schema_in, const json& v, const std::string& path) {
        const json& schema = resolve(schema_in);
        if (schema.contains("type")) {
            const std::string t = schema.at("type").get<std::string>();
            if (!type_ok(t, v)) {
                errors_.push_back(path + ": expected type " + t);
                return;
            }
        }
        if (schema.contains("enum")) {
            bool hit = false;
            for (const json& cand : schema.at("enum"))
                if (cand == v) hit = true;
            if (!hit) errors_.push_back(path + ": value not in enum");
        }
        if (v.is_object()) {
            if (schema.contains("required"))
                for (const json& key : schema.at("required"))
                    if (!v.contains(key.get<std::string>()))
                        errors_.push_back(path + ": missing required key " + key.get<std::string>());
            if (schema.contains("properties"))
                for (const auto& [key, sub] : schema.at("properties").items())
                    if (v.contains(key)) check(sub, v.at(key), path + "." + key);
        }
        if (v.is_array()) {
            if (schema.contains("minItems") && v.size() < schema.at("minItems").get<std::size_t>())
                errors_.push_back(path + ": fewer than minItems elements");
            if (schema.contains("maxItems") && v.size() > schema.at("maxItems").get<std::size_t>())
                errors_.push_back(path + ": more than maxItems elements");
            if (schema.contains("items")) {
                std::size_t i = 0;
                for (const json& el : v) check(schema.at("items"), el, path + "[" + std::to_string(i++) + "]");
            }
        }
    }

    json root_;
    std::vector<std::string> errors_;
};

void expect_valid(const char* schema_name, const json& doc) {
    const std::string path = std::string(HOFA_SCHEMA_DIR) + "/" + schema_name;
    SchemaChecker checker(json::parse(slurp(path)));
    const auto errors = checker.validate(doc);
    CAPTURE(schema_name);
    for (const std::string& e : errors) {
        CAPTURE(e);
        CHECK(false);
    }
    CHECK(errors.empty());
}

struct TempFile {
    std::string path;
    explicit TempFile(std::string p) : path(std::move(p)) {}
    ~TempFile() { std::remove(path.c_str()); }
};

} // namespace

TEST_SUITE("cli") {

TEST_CASE("gowers on a quadratic phase matches the documented value") {
    const json rep = run_json("gowers --gen quad:p=5 --k 2");
    CHECK(rep.at("command") == "gowers");
    CHECK(rep.at("config").at("seed") == 2026);
    CHECK(rep.at("results").at("kind") == "gowers-report");
    const double norm = rep.at("results").at("norm").get<double>();
    CHECK(std::abs(norm - 0.668740304976422) < 1e-12);
    const double power = rep.at("results").at("power").get<double>();
    CHECK(std::abs(power - std::pow(norm, 4.0)) < 1e-15);
    expect_valid("gowers.schema.json", rep);

    const json brute = run_json("gowers --gen quad:p=5 --k 2 --brute");
    CHECK(brute.at("config").at("method") == "bruteforce");
    CHECK(std::abs(brute.at("results").at("norm").get<double>() - norm) < 1e-10);
}

TEST_CASE("fourier reports spectrum, support, and the u2 identity") {
    const json rep = run_json("fourier --gen quad:p=5 --eps 0.3");
    CHECK(rep.at("results").at("support") == 5);
    CHECK(std::abs(rep.at("results").at("u2").get<double>() - 0.668740304976422) < 1e-12);
    CHECK(std::abs(rep.at("results").at("l2").get<double>() - 1.0) < 1e-12);
    CHECK(rep.at("results").at("spectrum").at("kind") == "spectrum");
    expect_valid("fourier.schema.json", rep);

    const json cut = run_json("fourier --gen quad:p=5 --eps 0.5");
    CHECK(cut.at("results").at("support") == 0);

    const json r2 = run_json("fourier --gen noise:group=[16],seed=4 --algorithm radix2");
    const json r1 = run_json("fourier --gen noise:group=[16],seed=4 --algorithm direct");
    const double d = std::abs(r2.at("results").at("u2").get<double>() - r1.at("results").at("u2").get<double>());
    CHECK(d < 1e-12);
}

TEST_CASE("decompose recovers a single character at order 1") {
    const json rep = run_json("decompose --gen char:group=[8],m=3 --order 1 --eps 0.0 --delta 0.1");
    CHECK(rep.at("results").at("kind") == "decomposition-report");
    REQUIRE(rep.at("results").at("eigenvalues").size() == 1);
    CHECK(std::abs(rep.at("results").at("eigenvalues").at(0).get<double>() - 1.0) < 1e-10);
    CHECK(rep.at("results").at("components").size() == 1);
    for (const json& v : rep.at("results").at("residual").at("values")) {
        CHECK(std::abs(v.at(0).get<double>()) < 1e-10);
        CHECK(std::abs(v.at(1).get<double>()) < 1e-10);
    }
    expect_valid("decompose.schema.json", rep);
}

TEST_CASE("decompose order 2 on a pure quadratic phase is rank one") {
    const json rep = run_json("decompose --gen quad:p=7,q=2 --order 2 --eps 0.2 --delta 0.1");
    REQUIRE(rep.at("results").at("eigenvalues").size() == 1);
    CHECK(std::abs(rep.at("results").at("eigenvalues").at(0).get<double>() - 1.0) < 1e-9);
    expect_valid("decompose.schema.json", rep);
}

TEST_CASE("multilinear reports the tensor, nonvanishing check, and bilinear coefficient") {
    const json rep = run_json("multilinear --gen quad:p=5 --k 2 --theta 0.3 --extract-bilinear");
    CHECK(rep.at("results").at("tensor").at("shape") == json({5, 5}));
    CHECK(rep.at("results").at("symmetry_defect").get<double>() < 1e-12);
    CHECK(rep.at("results").at("nonvanishing").at("pass") == true);
    CHECK(rep.at("results").at("bilinear_coefficient") == 2);
    expect_valid("multilinear.schema.json", rep);

    const json bare = run_json("multilinear --gen quad:p=5 --k 2");
    CHECK(!bare.at("results").contains("nonvanishing"));
    CHECK(!bare.at("results").contains("bilinear_coefficient"));
}

TEST_CASE("character-test verdicts at both orders") {
    const json pass = run_json("character-test --gen quad:p=5 --k 2 --eps 0.3 --mode exhaustive");
    CHECK(pass.at("results").at("pass") == true);
    CHECK(pass.at("results").at("residual_estimate").get<double>() < 1e-9);
    expect_valid("character-test.schema.json", pass);

    const json fail = run_json("character-test --gen quad:p=5 --k 1 --eps 0.3 --mode exhaustive");
    CHECK(fail.at("results").at("pass") == false);
    CHECK(std::abs(fail.at("results").at("residual_estimate").get<double>() - 0.9797958971132712) < 1e-9);
}

TEST_CASE("complexity certifies a quadratic phase as its own order-2 decomposition") {
    const json rep = run_json("complexity --gen quad:p=7 --k 2 --component quad:p=7 "
                              "--n-params 4,4,4,4 --eps-params 0.3,0.3,0.3,0.3 --samples 1000");
    CHECK(rep.at("results").at("kind") == "complexity-report");
    CHECK(rep.at("results").at("pass") == true);
    REQUIRE(rep.at("results").at("clauses").size() == 5);
    CHECK(rep.at("results").at("clauses").at(0).at("name") == "CountExceeded");
    CHECK(rep.at("results").at("cell_reports").size() >= 1);
    expect_valid("complexity.schema.json", rep);
}

TEST_CASE("pipeline decomposes and certifies a planted character") {
    const json rep = run_json("pipeline --gen char:group=[8],m=3 --order 1 --eps 0.0 --delta 0.1 "
                              "--n-params 4,4 --eps-params 0.3,0.3 --samples 1000");
    CHECK(rep.at("results").at("kind") == "pipeline-report");
    CHECK(rep.at("results").at("decomposition").at("components").size() == 1);
    CHECK(rep.at("results").at("complexity").at("pass") == true);
    expect_valid("pipeline.schema.json", rep);
}

TEST_CASE("additivity gap vanishes for orthogonal characters") {
    const json rep = run_json("additivity --k 2 --component char:group=[8],m=1 "
                              "--component char:group=[8],m=2");
    CHECK(rep.at("results").at("kind") == "additivity-report");
    CHECK(rep.at("results").at("gap").get<double>() < 1e-10);
    CHECK(rep.at("input_function").at("components").size() == 2);
    expect_valid("additivity.schema.json", rep);
}

TEST_CASE("validation failures exit with code 2") {
    CHECK(run_cli("gowers --gen quad:p=5 --k 0").code == 2);
    CHECK(run_cli("gowers --gen quad:p=6 --k 2").code == 2);
    CHECK(run_cli("gowers --gen wibble:x=1 --k 2").code == 2);
    CHECK(run_cli("gowers --gen quad:p=5,zz=3 --k 2").code == 2);
    CHECK(run_cli("gowers --gen char:group=[8,m=1 --k 2").code == 2);
    CHECK(run_cli("gowers --k 2").code == 2);                                   // no input at all
    CHECK(run_cli("gowers --gen quad:p=5 --input x.json --k 2").code == 2);     // both inputs
    CHECK(run_cli("gowers --gen quad:p=5").code == 2);                          // missing required --k
    CHECK(run_cli("frobnicate").code == 2);                                     // unknown subcommand
    CHECK(run_cli("additivity --k 2 --component quad:p=5").code == 2);          // needs two components
    CHECK(run_cli("gowers --gen noise:group=[101] --k 3 --brute --cap-evals 1000").code == 2);
    CHECK(run_cli("character-test --gen quad:p=5 --k 3 --mode exhaustive --cap-evals 10").code == 2);

    const RunResult r = run_cli("gowers --gen quad:p=6 --k 2");
    CHECK(r.err.find("error:") != std::string::npos);
    CHECK(r.out.empty());
}

TEST_CASE("analysis failures exit with code 3") {
    const hofa::GroupFunction pair = testutil::equal_weight_pair(11, 1, 3);
    TempFile f("cli_sepfail.json");
    hofa::io::save_function(f.path, pair);
    const RunResult r = run_cli("decompose --input " + f.path +
                                " --order 2 --eps 0.25 --delta 0.1 --sep-tol 10 --max-candidates 4");
    CHECK(r.code == 3);
    CHECK(r.err.find("error:") != std::string::npos);

    const RunResult mism = run_cli("complexity --gen quad:p=5 --k 1 --component char:group=[5],m=1 "
                                   "--residual const:group=[5],re=0 --n-params 4,4 --eps-params 0.3,0.3");
    CHECK(mism.code == 3);
}

TEST_CASE("identical invocations produce byte-identical reports") {
    const std::string args = "multilinear --gen noise:group=[12],seed=5 --k 2 --seed 7";
    const RunResult a = run_cli(args);
    const RunResult b = run_cli(args);
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);

    // the thread cap lands in config, so compare the results payload only
    const json t1 = run_json("decompose --gen quad:p=31 --order 2 --eps 0.15 --delta 0.05 --threads 1");
    const json t4 = run_json("decompose --gen quad:p=31 --order 2 --eps 0.15 --delta 0.05 --threads 4");
    CHECK(t1.at("results") == t4.at("results"));
}

TEST_CASE("reports round trip back into the CLI as inputs") {
    TempFile dec("cli_dec.json");
    const RunResult rr = run_cli("decompose --gen quad:p=7 --order 2 --eps 0.2 --delta 0.1 -o " + dec.path);
    REQUIRE(rr.code == 0);
    CHECK(rr.out.empty());
    const json from_file = json::parse(slurp(dec.path));
    expect_valid("decompose.schema.json", from_file);

    TempFile res("cli_residual.json");
    std::ofstream(res.path) << from_file.at("results").at("residual").dump();
    const json g = run_json("gowers --input " + res.path + " --k 3");
    CHECK(g.at("results").at("norm").get<double>() < 1e-9);
}

TEST_CASE("output file matches stdout output modulo the config entry") {
    TempFile out("cli_out.json");
    const RunResult direct = run_cli("gowers --gen quad:p=5 --k 2");
    const RunResult filed = run_cli("gowers --gen quad:p=5 --k 2 -o " + out.path);
    REQUIRE(direct.code == 0);
    REQUIRE(filed.code == 0);
    CHECK(filed.out.empty());
    const json a = json::parse(direct.out);
    const json b = json::parse(slurp(out.path));
    CHECK(a.at("results") == b.at("results"));
    CHECK(b.at("config").at("output") == out.path);
}

TEST_CASE("CSV functions are accepted as input") {
    TempFile csv("cli_char.csv");
    hofa::io::save_function(csv.path, hofa::character_function(testutil::zn(4), {1}));
    const json rep = run_json("gowers --input " + csv.path + " --k 2 --brute");
    CHECK(std::abs(rep.at("results").at("norm").get<double>() - 1.0) < 1e-12);
    CHECK(rep.at("config").at("input") == csv.path);
}

TEST_CASE("partition files feed the character test") {
    const hofa::GroupSpec g = testutil::zn(6);
    TempFile part("cli_part.json");
    std::vector<std::int32_t> labels{0, 1, 0, 1, 0, 1};
    std::ofstream(part.path) << hofa::io::partition_json(hofa::make_partition(g, labels)).dump();
    const json rep = run_json("character-test --gen char:group=[6],m=2 --k 1 --eps 0.1 "
                              "--mode exhaustive --partition " + part.path);
    CHECK(rep.at("results").at("pass") == true);
    expect_valid("character-test.schema.json", rep);
}

} // TEST_SUITE
