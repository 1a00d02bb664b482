#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <unistd.h>

#include "cvq/io.hpp"
#include "support/test_support.hpp"

using namespace cvq;

namespace {

std::filesystem::path temp_dir() {
    static std::filesystem::path dir = [] {
        auto p = std::filesystem::temp_directory_path() /
                 ("cvq_io_test_" + std::to_string(::getpid()));
        std::filesystem::create_directories(p);
        return p;
    }();
    return dir;
}

std::string write_temp(const std::string& name, const std::string& content) {
    auto path = temp_dir() / name;
    std::ofstream out(path);
    out << content;
    return path.string();
}

} // namespace

TEST_CASE("measure files round-trip") {
    std::string path = write_temp("measure.json", R"({
      "atoms": [
        {"id": "a1", "weight": 0.4, "label": -0.5},
        {"id": "a2", "weight": 0.3, "label": 0.5},
        {"id": "a3", "weight": 0.3, "label": 2.0}
      ]
    })");
    GroundSpace space = load_measure(path);
    REQUIRE(space.size() == 3);
    CHECK(space.atoms()[0].id == "a1");
    CHECK(*space.atoms()[2].label == 2.0);

    auto out = (temp_dir() / "measure_out.json").string();
    save_measure(space, out);
    GroundSpace again = load_measure(out);
    REQUIRE(again.size() == space.size());
    for (std::uint32_t i = 0; i < space.size(); ++i) {
        CHECK(again.atoms()[i].id == space.atoms()[i].id);
        CHECK(again.atoms()[i].weight == space.atoms()[i].weight);
    }
}

TEST_CASE("measure loading rejects bad content") {
    CHECK_THROWS_AS(load_measure(write_temp("dup.json",
        R"({"atoms":[{"id":"a","weight":0.1},{"id":"a","weight":0.2}]})")), Error);
    CHECK_THROWS_AS(load_measure(write_temp("neg.json",
        R"({"atoms":[{"id":"a","weight":-0.1}]})")), Error);
    CHECK_THROWS_AS(load_measure(write_temp("heavy.json",
        R"({"atoms":[{"id":"a","weight":0.7},{"id":"b","weight":0.6}]})")), Error);
    CHECK_THROWS_AS(load_measure(write_temp("garbage.json", "not json")), Error);
    CHECK_THROWS_AS(load_measure((temp_dir() / "missing.json").string()), Error);
}

TEST_CASE("cover files resolve interval entries through labels") {
    std::string measure = write_temp("m.json", R"({
      "atoms": [
        {"id": "a1", "weight": 0.4, "label": -0.5},
        {"id": "a2", "weight": 0.3, "label": 0.5},
        {"id": "a3", "weight": 0.3, "label": 2.0}
      ]
    })");
    GroundSpace space = load_measure(measure);

    std::string cover_path = write_temp("cover.json", R"({
      "sets": [
        {"id": "Q1", "lo": -1e308, "hi": 1.0},
        {"id": "Q2", "lo": 0.0, "hi": 1e308},
        {"id": "Q3", "atoms": ["a3"]}
      ]
    })");
    Cover q = load_cover(space, cover_path);
    REQUIRE(q.size() == 3);
    CHECK(same_atoms(q.sets[0], space.make_set("", {"a1", "a2"})));
    CHECK(same_atoms(q.sets[1], space.make_set("", {"a2", "a3"})));
    CHECK(same_atoms(q.sets[2], space.make_set("", {"a3"})));

    // Closed endpoints: a label exactly at hi is included.
    std::string edge = write_temp("edge.json", R"({
      "sets": [{"id": "E", "lo": -0.5, "hi": 0.5}]
    })");
    Cover at_edge = load_cover(space, edge);
    CHECK(same_atoms(at_edge.sets[0], space.make_set("", {"a1", "a2"})));

    CHECK_THROWS_AS(load_cover(space, write_temp("dupcover.json",
        R"({"sets":[{"id":"Q","atoms":["a1"]},{"id":"Q","atoms":["a2"]}]})")), Error);
    CHECK_THROWS_AS(load_cover(space, write_temp("badatom.json",
        R"({"sets":[{"id":"Q","atoms":["nope"]}]})")), Error);
}

TEST_CASE("partition files carry optional witnesses") {
    GroundSpace space = load_measure(std::string(CVQ_FIXTURE_DIR) + "/halflines_measure.json");

    std::string path = write_temp("partition.json", R"({
      "cells": [
        {"id": "P1", "atoms": ["a1", "a2"]},
        {"id": "P2", "atoms": ["a3"]}
      ],
      "witness": {"P1": "Q1", "P2": "Q2"}
    })");
    Partition p = load_partition(space, path);
    REQUIRE(p.size() == 2);
    CHECK(p.witness.at("P1") == "Q1");

    auto out = (temp_dir() / "partition_out.json").string();
    save_partition(space, p, out);
    Partition again = load_partition(space, out);
    REQUIRE(again.size() == 2);
    CHECK(same_atoms(again.cells[0], p.cells[0]));
    CHECK(again.witness == p.witness);
}

TEST_CASE("solve result and trace serialize with the expected fields") {
    GroundSpace space = load_measure(std::string(CVQ_FIXTURE_DIR) + "/halflines_measure.json");
    Cover q = load_cover(space, std::string(CVQ_FIXTURE_DIR) + "/halflines_cover.json");

    SolveResult result = solve_exact(space, q);
    std::string json = solve_result_json(q, result);
    CHECK(json.find("\"entropy_bits\"") != std::string::npos);
    CHECK(json.find("\"ordering\":[\"Q1\",\"Q2\"]") != std::string::npos);
    CHECK(json.find("\"method\":\"exact\"") != std::string::npos);
    CHECK(json.find("\"optimal\":true") != std::string::npos);
    CHECK(json.find("\"nodes\"") != std::string::npos);

    Partition singles = load_partition(space,
        std::string(CVQ_FIXTURE_DIR) + "/halflines_singletons.json");
    ReductionResult red = reduce(space, q, singles);
    std::string trace = trace_json(red.trace);
    CHECK(trace.find("\"pmax_cell_id\": \"P1\"") != std::string::npos);
    CHECK(trace.find("\"residual_mass_before\"") != std::string::npos);
    CHECK(trace.find("\"final_residual\"") != std::string::npos);
}

TEST_CASE("atom csv loading") {
    std::string path = write_temp("data.csv", "atom_id\na1\na2\na1\n");
    auto ids = load_atom_csv(path);
    REQUIRE(ids.size() == 3);
    CHECK(ids[0] == "a1");
    CHECK(ids[2] == "a1");

    CHECK_THROWS_AS(load_atom_csv(write_temp("bad.csv", "wrong_header\na1\n")), Error);
}
