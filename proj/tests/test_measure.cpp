#include <doctest.h>

#include <random>

#include "support/test_support.hpp"

using namespace cvq;
using cvqtest::make_space;
using cvqtest::ms;

TEST_CASE("mass adds weights over the listed atoms") {
    GroundSpace uniform4 = make_space({{"a1", 0.25}, {"a2", 0.25}, {"a3", 0.25}, {"a4", 0.25}});
    CHECK(mass(uniform4, ms(uniform4, "s", {"a1", "a2"})) == 0.5); // dyadic, exact

    CHECK(mass(uniform4, ms(uniform4, "empty", {})) == 0.0);

    GroundSpace space = make_space({{"a1", 0.4}, {"a2", 0.3}, {"a3", 0.3}});
    CHECK(mass(space, ms(space, "s", {"a1", "a3"})) == doctest::Approx(0.7).epsilon(1e-15));
}

TEST_CASE("unknown atom ids are structural errors") {
    GroundSpace space = make_space({{"a1", 0.5}, {"a2", 0.5}});
    CHECK_THROWS_AS(ms(space, "s", {"a1", "zz"}), Error);
    try {
        ms(space, "s", {"zz"});
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Structural);
        CHECK(e.detail().find("zz") != std::string::npos);
    }

    // A set built against a different space is caught by index range.
    GroundSpace small = make_space({{"a1", 1.0}});
    MSet foreign = ms(space, "s", {"a1", "a2"});
    CHECK_THROWS_AS(mass(small, foreign), Error);
}

TEST_CASE("validate reports the violations") {
    CHECK(validate(make_space({{"a1", 0.5}, {"a2", 0.5}})).ok());

    Diagnostics heavy = validate(make_space({{"a1", 0.7}, {"a2", 0.6}}));
    REQUIRE_FALSE(heavy.ok());
    CHECK(heavy.joined().find("total mass") != std::string::npos);

    Diagnostics negative = validate(make_space({{"a1", 0.5}, {"a2", -0.1}}));
    REQUIRE_FALSE(negative.ok());
    CHECK(negative.joined().find("negative weight") != std::string::npos);

    Diagnostics duped = validate(make_space({{"a1", 0.2}, {"a1", 0.2}}));
    REQUIRE_FALSE(duped.ok());
    CHECK(duped.joined().find("duplicate") != std::string::npos);
}

TEST_CASE("mass is additive and monotone") {
    // On a dyadic-weight space every partial sum is exact, so disjoint
    // additivity holds with no tolerance at all.
    std::mt19937 rng(20260703);
    std::uniform_int_distribution<int> grains(0, 64);
    std::uniform_int_distribution<int> coin(0, 2);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<Atom> atoms;
        for (int i = 0; i < 24; ++i)
            atoms.push_back({"a" + std::to_string(i), grains(rng) / 4096.0, std::nullopt});
        GroundSpace space{std::move(atoms)};

        MSet s, t;
        s.id = "s";
        t.id = "t";
        for (std::uint32_t i = 0; i < space.size(); ++i) {
            const int side = coin(rng);
            if (side == 0) s.atoms.push_back(i);
            if (side == 1) t.atoms.push_back(i);
        }
        CHECK(mass(space, set_union(s, t)) == mass(space, s) + mass(space, t));
        CHECK(mass(space, s) <= mass(space, set_union(s, t)));
    }

    // Arbitrary weights: additivity within the mass tolerance, monotonicity
    // exact (adding nonnegative terms never lowers a running sum).
    std::uniform_real_distribution<double> unit(0.0, 0.02);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<Atom> atoms;
        for (int i = 0; i < 40; ++i)
            atoms.push_back({"a" + std::to_string(i), unit(rng), std::nullopt});
        GroundSpace space{std::move(atoms)};

        MSet s, t;
        for (std::uint32_t i = 0; i < space.size(); ++i) {
            const int side = coin(rng);
            if (side == 0) s.atoms.push_back(i);
            if (side == 1) t.atoms.push_back(i);
        }
        CHECK(std::abs(mass(space, set_union(s, t)) - (mass(space, s) + mass(space, t))) <= 1e-12);
        CHECK(mass(space, s) <= mass(space, set_union(s, t)));
        CHECK(mass(space, t) <= mass(space, set_union(s, t)));
    }
}

TEST_CASE("zero-weight atoms are allowed") {
    GroundSpace space = make_space({{"a1", 1.0}, {"null", 0.0}});
    CHECK(validate(space).ok());
    CHECK(mass(space, ms(space, "s", {"null"})) == 0.0);
}
