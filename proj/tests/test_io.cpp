#include <cstdio>
#include <string>

#include "doctest.h"

#include "common.hpp"
#include "hofa/io.hpp"

using namespace hofa;
using testutil::mixture;
using testutil::noise;
using testutil::zn;
namespace io = hofa::io;

namespace {

std::string temp_path(const char* name) { return std::string("io_test_") + name; }

} // namespace

TEST_SUITE("io") {

TEST_CASE("function JSON round trip is lossless") {
    const GroupFunction f = mixture(make_group({2, 3, 4}), 77);
    const io::json j = io::function_json(f);
    CHECK(j.at("kind") == "function");
    const GroupFunction back = io::function_from_json(io::parse_json(j.dump()));
    CHECK(back.group == f.group);
    CHECK(back.values == f.values); // bitwise: shortest round-trip printing
}

TEST_CASE("function JSON tolerates a missing kind but validates content") {
    const io::json ok = io::parse_json(R"({"group":[2,2],"values":[[1,0],[0,1],[1,0],[0,-1]]})");
    const GroupFunction f = io::function_from_json(ok);
    CHECK(f.group.order == 4);
    CHECK(f.values[3] == cplx(0, -1));
    CHECK_THROWS_AS(io::function_from_json(io::parse_json(R"({"group":[2],"values":[[1,0]]})")), Error);
    CHECK_THROWS_AS(io::function_from_json(io::parse_json(R"({"kind":"spectrum","group":[2],"values":[[1,0],[0,1]]})")),
                    Error);
    CHECK_THROWS_AS(io::function_from_json(io::parse_json(R"({"values":[[1,0],[0,1]]})")), Error);
}

TEST_CASE("spectrum and tensor JSON require their kind tag") {
    const GroupFunction f = noise(zn(6), 5);
    const FourierSpectrum s = dft(f);
    const FourierSpectrum sback = io::spectrum_from_json(io::parse_json(io::spectrum_json(s).dump()));
    CHECK(sback.coeffs == s.coeffs);
    io::json j = io::spectrum_json(s);
    j.erase("kind");
    CHECK_THROWS_AS(io::spectrum_from_json(j), Error);

    const MultilinearTensor T = vtilde(f, 2);
    const MultilinearTensor tback = io::tensor_from_json(io::parse_json(io::tensor_json(T).dump()));
    CHECK(tback.values == T.values);
    CHECK(tback.k == 2);
    io::json tj = io::tensor_json(T);
    tj["shape"] = {6, 5};
    CHECK_THROWS_AS(io::tensor_from_json(tj), Error);
}

TEST_CASE("partition JSON round trip") {
    const GroupSpec g = zn(6);
    const Partition P = make_partition(g, {0, 1, 2, 0, 1, 2});
    const Partition back = io::partition_from_json(io::parse_json(io::partition_json(P).dump()));
    CHECK(back.cell_of == P.cell_of);
    CHECK(back.n_cells == 3);
    CHECK_THROWS_AS(io::partition_from_json(io::parse_json(R"({"group":[4],"cells":[0,2,0,2]})")), Error);
}

TEST_CASE("CSV round trip is lossless for cyclic groups") {
    const GroupFunction f = mixture(zn(9), 31);
    const std::string text = io::function_to_csv(f);
    CHECK(text.rfind("index,re,im\n", 0) == 0);
    const GroupFunction back = io::function_from_csv(text);
    CHECK(back.group == f.group);
    CHECK(back.values == f.values);
    CHECK_THROWS_AS(io::function_to_csv(noise(make_group({2, 3}), 1)), Error);
}

TEST_CASE("CSV parsing is strict about coverage and syntax") {
    CHECK_THROWS_AS(io::function_from_csv("index,re,im\n0,1,0\n0,0,1\n"), Error); // duplicate index
    CHECK_THROWS_AS(io::function_from_csv("index,re,im\n0,1,0\n2,0,1\n"), Error); // gap
    CHECK_THROWS_AS(io::function_from_csv("index,re,im\n0,one,0\n"), Error);
    CHECK_THROWS_AS(io::function_from_csv(""), Error);
    // header is optional, rows may arrive in any order
    const GroupFunction f = io::function_from_csv("1,0,1\n0,1,0\n");
    CHECK(f.values[0] == cplx(1, 0));
    CHECK(f.values[1] == cplx(0, 1));
}

TEST_CASE("parse_json raises ParseError on malformed text") {
    CHECK_THROWS_AS(io::parse_json("{"), Error);
    try {
        io::parse_json("not json");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::ParseError);
    }
}

TEST_CASE("file helpers dispatch on extension") {
    const GroupFunction f = mixture(zn(7), 3);
    const std::string jpath = temp_path("f.json");
    const std::string cpath = temp_path("f.csv");
    io::save_function(jpath, f);
    io::save_function(cpath, f);
    CHECK(io::load_function(jpath).values == f.values);
    CHECK(io::load_function(cpath).values == f.values);
    std::remove(jpath.c_str());
    std::remove(cpath.c_str());
    CHECK_THROWS_AS(io::load_function("does_not_exist.json"), Error);
}

TEST_CASE("reports serialize with their kind tags") {
    const GroupSpec g = zn(8);
    const GroupFunction f = character_function(g, {3});

    const io::json dj = io::report_json(decompose(f, 1, 0.0, 0.1));
    CHECK(dj.at("kind") == "decomposition-report");
    CHECK(dj.at("eigenvalues").size() == 1);
    CHECK(dj.at("components").at(0).at("kind") == "function");
    CHECK(dj.at("residual").at("values").size() == 8);

    const io::json cj = io::report_json(
        complexity_check_c1(f, zero_function(g), {f}, {one_cell_partition(g)}, {4, 4}, {0.3, 0.3}, 1, 100, 1));
    CHECK(cj.at("kind") == "complexity-report");
    CHECK(cj.at("clauses").size() == 5);
    CHECK(cj.at("clauses").at(0).contains("name"));
    CHECK(cj.at("clauses").at(0).contains("measured"));

    const io::json aj = io::report_json(additivity_check({f, character_function(g, {5})}, 2));
    CHECK(aj.at("kind") == "additivity-report");
    CHECK(aj.at("component_powers").size() == 2);

    const io::json nj = io::report_json(nonvanishing_check(f, 1, 0.5));
    CHECK(nj.at("kind") == "nonvanishing-report");

    const io::json tj =
        io::report_json(character_test(f, one_cell_partition(g), 1, 0.5, 100, 1, TestMode::Exhaustive));
    CHECK(tj.at("kind") == "character-test-report");
    CHECK(tj.at("pass").is_boolean());
}

} // TEST_SUITE
