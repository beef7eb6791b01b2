#include <fstream>

#include "doctest.h"
#include "setreg/problem_io.hpp"
#include "test_util.hpp"

using namespace setreg;
using testutil::v2;

namespace {

std::string dataPath(const std::string& name) { return std::string(SETREG_DATA_DIR) + "/" + name; }

}  // namespace

TEST_SUITE("problem_io") {

TEST_CASE("load the shipped golden files") {
    for (const char* name : {"case1.json", "case2.json", "two_lines_45.json",
                             "three_halfspaces.json", "equality_case.json", "opposite.json"}) {
        const ProblemFile pf = load_problem(dataPath(name));
        CHECK(pf.dimension == 2);
        CHECK(pf.sets.size() >= 2);
        for (const auto& s : pf.sets) CHECK(membership(s, pf.reference_point, 1e-9));
    }
}

TEST_CASE("round trip preserves every value") {
    const ProblemFile pf = load_problem(dataPath("case2.json"));
    const ProblemFile back = parse_problem(serialize_problem(pf));
    CHECK(back.dimension == pf.dimension);
    REQUIRE(back.sets.size() == pf.sets.size());
    CHECK((back.reference_point - pf.reference_point).norm() == 0.0);
    REQUIRE(back.start_points.size() == pf.start_points.size());
    for (std::size_t i = 0; i < pf.start_points.size(); ++i)
        CHECK((back.start_points[i] - pf.start_points[i]).norm() == 0.0);
    CHECK(back.max_iterations == pf.max_iterations);
    CHECK(back.stop_displacement == pf.stop_displacement);
    // Serialized forms are bit-identical after one round trip.
    CHECK(serialize_problem(back) == serialize_problem(pf));
}

TEST_CASE("schema violations are parse errors") {
    CHECK_THROWS_AS(parse_problem("not json"), ParseError);
    CHECK_THROWS_AS(parse_problem("{}"), ParseError);
    CHECK_THROWS_AS(parse_problem(R"({"schema": 2, "dimension": 2, "sets": [],
        "reference_point": [0,0]})"),
                    ParseError);
    // Unknown fields rejected at both levels.
    CHECK_THROWS_AS(parse_problem(R"({"schema": 1, "dimension": 2, "mystery": 1,
        "sets": [{"type": "half-space", "normal": [0,1], "offset": 0}],
        "reference_point": [0,0]})"),
                    ParseError);
    CHECK_THROWS_AS(parse_problem(R"({"schema": 1, "dimension": 2,
        "sets": [{"type": "half-space", "normal": [0,1], "offset": 0, "color": "red"}],
        "reference_point": [0,0]})"),
                    ParseError);
    CHECK_THROWS_AS(parse_problem(R"({"schema": 1, "dimension": 2,
        "sets": [{"type": "moebius"}], "reference_point": [0,0]})"),
                    ParseError);
}

TEST_CASE("semantic violations are validation errors") {
    // Reference point outside a set, with the set named.
    try {
        parse_problem(R"({"schema": 1, "dimension": 2,
            "sets": [{"type": "half-space", "normal": [0,1], "offset": 0},
                     {"type": "half-space", "normal": [0,-1], "offset": -1}],
            "reference_point": [0,0]})");
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("sets[1]") != std::string::npos);
    }
    // Dimension mismatch in a vector.
    CHECK_THROWS_AS(parse_problem(R"({"schema": 1, "dimension": 2,
        "sets": [{"type": "half-space", "normal": [0,1,0], "offset": 0}],
        "reference_point": [0,0]})"),
                    ValidationError);
}

TEST_CASE("all variants survive serialization") {
    ProblemFile pf;
    pf.dimension = 2;
    pf.sets = {SetDescriptor::halfSpace(v2(0, 1), 0.25),
               SetDescriptor::hyperplane(v2(1, 0), 0.0),
               SetDescriptor::affineSubspace(v2(0, 0), (Mat(2, 1) << 1, 0).finished()),
               SetDescriptor::ball(v2(0, 0), 3.0),
               SetDescriptor::polyhedron({{v2(1, 0), 1.0}, {v2(0, 1), 1.0}}),
               SetDescriptor::unionOf({SetDescriptor::hyperplane(v2(0, 1), 0.0),
                                       SetDescriptor::hyperplane(v2(1, 0), 0.0)})};
    pf.reference_point = v2(0, 0);
    pf.start_points = {v2(0.5, 0.5)};
    const ProblemFile back = parse_problem(serialize_problem(pf));
    REQUIRE(back.sets.size() == pf.sets.size());
    std::mt19937 rng(3);
    for (std::size_t i = 0; i < pf.sets.size(); ++i)
        for (int t = 0; t < 20; ++t) {
            const Vec x = 2.0 * testutil::randomUnit(2, rng);
            CHECK(distance(back.sets[i], x) == doctest::Approx(distance(pf.sets[i], x)).epsilon(1e-14));
        }
}

}  // TEST_SUITE
