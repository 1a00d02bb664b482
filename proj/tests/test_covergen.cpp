#include <doctest.h>

#include <cmath>
#include <limits>

#include "cvq/covergen.hpp"
#include "cvq/solver.hpp"
#include "support/test_support.hpp"

using namespace cvq;

namespace {

DensitySpec uniform_density(double lo = 0.0, double hi = 1.0, double height = 1.0) {
    DensitySpec d;
    d.pieces.push_back({lo, hi, height});
    return d;
}

} // namespace

TEST_CASE("discretize places midpoint atoms with exact piece integrals") {
    GroundSpace four = discretize(uniform_density(), 4);
    REQUIRE(four.size() == 4);
    const double expected_labels[] = {0.125, 0.375, 0.625, 0.875};
    for (std::uint32_t i = 0; i < 4; ++i) {
        CHECK(four.atoms()[i].weight == doctest::Approx(0.25).epsilon(1e-15));
        CHECK(*four.atoms()[i].label == doctest::Approx(expected_labels[i]).epsilon(1e-15));
    }

    GroundSpace zero = discretize(uniform_density(0.0, 1.0, 0.0), 8);
    CHECK(zero.total_mass() == 0.0);
    CHECK(validate(zero).ok());

    // Staircase: mass conservation against the closed-form integral.
    DensitySpec stairs;
    stairs.pieces = {{0.0, 0.3, 0.5}, {0.3, 0.7, 1.2}, {0.7, 1.0, 0.9}};
    const double integral = 0.3 * 0.5 + 0.4 * 1.2 + 0.3 * 0.9;
    GroundSpace space = discretize(stairs, 16);
    CHECK(space.total_mass() == doctest::Approx(integral).epsilon(1e-9));

    DensitySpec bad;
    bad.pieces = {{0.5, 0.2, 1.0}};
    CHECK_THROWS_AS(discretize(bad, 4), Error);
    DensitySpec heavy;
    heavy.pieces = {{0.0, 2.0, 1.0}};
    CHECK_THROWS_AS(discretize(heavy, 4), Error);
}

TEST_CASE("aligned eps cover tiles the labels") {
    GroundSpace space = cvqtest::uniform_space(8);
    Cover q = epsilon_cover(space, 0.25, EpsMode::Aligned);
    REQUIRE(q.size() == 4);
    for (const MSet& s : q.sets) CHECK(s.size() == 2);
    CHECK(cover_validate(space, q).ok());

    // eps at least the full span produces one set and zero entropy.
    Cover whole = epsilon_cover(space, 2.0, EpsMode::Aligned);
    REQUIRE(whole.size() == 1);
    CHECK(solve_exact(space, whole).entropy_bits == 0.0);

    GroundSpace unlabeled(std::vector<Atom>{{"a1", 1.0, std::nullopt}});
    CHECK_THROWS_AS(epsilon_cover(unlabeled, 0.5, EpsMode::Aligned), Error);
    CHECK_THROWS_AS(epsilon_cover(space, 0.0, EpsMode::Aligned), Error);
}

TEST_CASE("dyadic tilings force k bits and grow as eps shrinks") {
    GroundSpace space = cvqtest::uniform_space(64); // 2^6 atoms on [0,1)
    double previous = -1.0;
    for (int k = 1; k <= 4; ++k) {
        Cover q = epsilon_cover(space, std::ldexp(1.0, -k), EpsMode::Aligned);
        CHECK(q.size() == (1u << k));
        SolveResult r = solve_exact(space, q);
        CHECK(r.entropy_bits == static_cast<double>(k));
        CHECK(r.entropy_bits >= previous); // eps-monotonicity on nested grids
        previous = r.entropy_bits;
    }
}

TEST_CASE("sliding windows cover every atom within span eps") {
    GroundSpace space = cvqtest::uniform_space(16);
    const double eps = 0.2;
    Cover q = epsilon_cover(space, eps, EpsMode::Sliding);
    CHECK(cover_validate(space, q).ok());
    for (const MSet& s : q.sets) {
        REQUIRE_FALSE(s.empty());
        const double lo = *space.atoms()[s.atoms.front()].label;
        const double hi = *space.atoms()[s.atoms.back()].label;
        CHECK(hi - lo <= eps + 1e-12);
    }
    // Deduplication: consecutive identical windows fold together.
    for (std::size_t i = 1; i < q.size(); ++i)
        CHECK_FALSE(same_atoms(q.sets[i - 1], q.sets[i]));
}

TEST_CASE("quantile cover bounds every set by max_mass") {
    GroundSpace space = cvqtest::uniform_space(8);
    Cover q = quantile_cover(space, 0.25);
    CHECK(cover_validate(space, q).ok());
    CHECK(q.size() >= 4);
    CHECK(q.size() <= 5);
    for (const MSet& s : q.sets) CHECK(mass(space, s) <= 0.25 + kMassTol);

    // Sets are contiguous in label order.
    for (const MSet& s : q.sets)
        for (std::size_t i = 1; i < s.atoms.size(); ++i)
            CHECK(s.atoms[i] == s.atoms[i - 1] + 1);

    Cover single = quantile_cover(space, 1.0);
    REQUIRE(single.size() == 1);
    CHECK(single.sets[0].size() == 8);

    GroundSpace skew = cvqtest::make_labeled_space({{"a1", 0.6, 0.0}, {"a2", 0.1, 1.0},
                                                    {"a3", 0.3, 2.0}});
    CHECK_THROWS_AS(quantile_cover(skew, 0.5), Error);
}

TEST_CASE("quantile cover overlaps when mass permits") {
    // Weights leave room to reach back over the previous run's last atom.
    GroundSpace space = cvqtest::make_labeled_space({{"a1", 0.30, 0.0},
                                                     {"a2", 0.05, 1.0},
                                                     {"a3", 0.30, 2.0},
                                                     {"a4", 0.05, 3.0},
                                                     {"a5", 0.30, 4.0}});
    Cover q = quantile_cover(space, 0.4);
    CHECK(cover_validate(space, q).ok());
    for (const MSet& s : q.sets) CHECK(mass(space, s) <= 0.4 + kMassTol);
    // Runs {a1,a2}, {a3,a4}, {a5}; the second and third reach back one atom.
    bool any_overlap = false;
    for (std::size_t i = 1; i < q.size(); ++i)
        if (set_intersect(q.sets[i - 1], q.sets[i]).size() == 1) any_overlap = true;
    CHECK(any_overlap);
}

TEST_CASE("interval family entropy shrinks as it swallows the middle") {
    // On uniform (0,1) at resolution n, the cover {[1/n, 1-1/n]} plus
    // single-atom tiles at each end admits the 3-cell partition of entropy
    // sh((n-2)/n) + 2 sh(1/n), which falls toward 0 as n grows.
    double previous = std::numeric_limits<double>::infinity();
    for (std::uint32_t n : {16u, 64u, 256u}) {
        GroundSpace space = discretize(uniform_density(), n);
        REQUIRE(space.size() == n);
        Cover q;
        MSet mid, left, right;
        left.id = "L";
        left.atoms = {0};
        right.id = "R";
        right.atoms = {n - 1};
        mid.id = "M";
        for (std::uint32_t i = 1; i + 1 < n; ++i) mid.atoms.push_back(i);
        q.sets = {mid, left, right};
        REQUIRE(cover_validate(space, q).ok());

        SolveResult r = solve_exact(space, q);
        const double nn = n;
        CHECK(r.entropy_bits ==
              doctest::Approx(shannon_fn((nn - 2) / nn) + 2 * shannon_fn(1 / nn)).epsilon(1e-12));
        CHECK(r.entropy_bits < previous);
        previous = r.entropy_bits;
    }
}

TEST_CASE("generated covers always validate") {
    for (std::uint32_t n : {5u, 12u, 33u}) {
        GroundSpace space = cvqtest::uniform_space(n);
        for (double eps : {0.07, 0.2, 0.5}) {
            CHECK(cover_validate(space, epsilon_cover(space, eps, EpsMode::Aligned)).ok());
            CHECK(cover_validate(space, epsilon_cover(space, eps, EpsMode::Sliding)).ok());
        }
        CHECK(cover_validate(space, quantile_cover(space, 0.4)).ok());
    }
}
