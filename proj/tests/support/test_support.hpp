#pragma once

// Shared helpers for the unit and acceptance suites: tiny fixture builders
// and seeded random instance generators. Everything here is deterministic
// for a fixed seed.

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <random>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "cvq/covergen.hpp"
#include "cvq/entropy.hpp"
#include "cvq/families.hpp"
#include "cvq/measure.hpp"

namespace cvqtest {

inline cvq::GroundSpace make_space(const std::vector<std::pair<std::string, double>>& entries) {
    std::vector<cvq::Atom> atoms;
    for (const auto& [id, w] : entries) atoms.push_back({id, w, std::nullopt});
    return cvq::GroundSpace(std::move(atoms));
}

inline cvq::GroundSpace make_labeled_space(
    const std::vector<std::tuple<std::string, double, double>>& entries) {
    std::vector<cvq::Atom> atoms;
    for (const auto& [id, w, label] : entries) atoms.push_back({id, w, label});
    return cvq::GroundSpace(std::move(atoms));
}

inline cvq::MSet ms(const cvq::GroundSpace& space, const std::string& id,
                    const std::vector<std::string>& atom_ids) {
    return space.make_set(id, atom_ids);
}

// Uniform probability space on n atoms a0..a{n-1} with labels (i+0.5)/n.
inline cvq::GroundSpace uniform_space(std::uint32_t n) {
    std::vector<cvq::Atom> atoms;
    const double w = 1.0 / static_cast<double>(n);
    for (std::uint32_t i = 0; i < n; ++i) {
        char id[16];
        std::snprintf(id, sizeof(id), "a%04u", i);
        atoms.push_back({id, w, (static_cast<double>(i) + 0.5) * w});
    }
    return cvq::GroundSpace(std::move(atoms));
}

struct RandomInstance {
    cvq::GroundSpace space;
    cvq::Cover cover;
    cvq::Partition partition; // acceptable for `cover` by construction
};

// Random subprobability space: a few zero-weight atoms, the rest scaled to
// a random total in (0.5, 1].
inline cvq::GroundSpace random_space(std::mt19937& rng, std::uint32_t max_atoms) {
    std::uniform_int_distribution<std::uint32_t> natoms(2, max_atoms);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const std::uint32_t n = natoms(rng);

    std::vector<double> raw(n);
    double total_raw = 0.0;
    for (double& w : raw) {
        w = (unit(rng) < 0.08) ? 0.0 : 0.05 + unit(rng);
        total_raw += w;
    }
    const double target = 0.5 + 0.5 * unit(rng);
    std::vector<cvq::Atom> atoms;
    for (std::uint32_t i = 0; i < n; ++i) {
        char id[16];
        std::snprintf(id, sizeof(id), "a%04u", i);
        const double w = (total_raw > 0.0) ? raw[i] * (target / total_raw) : 0.0;
        atoms.push_back({id, w, std::nullopt});
    }
    return cvq::GroundSpace(std::move(atoms));
}

// Random cover: random subsets patched so that every atom is covered.
inline cvq::Cover random_cover(std::mt19937& rng, const cvq::GroundSpace& space,
                               std::uint32_t max_sets) {
    std::uniform_int_distribution<std::uint32_t> nsets(1, max_sets);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const std::uint32_t m = nsets(rng);
    const double density = 0.2 + 0.5 * unit(rng);

    std::vector<std::vector<std::uint32_t>> members(m);
    std::vector<bool> covered(space.size(), false);
    for (std::uint32_t s = 0; s < m; ++s) {
        for (std::uint32_t i = 0; i < space.size(); ++i) {
            if (unit(rng) < density) {
                members[s].push_back(i);
                covered[i] = true;
            }
        }
    }
    std::uniform_int_distribution<std::uint32_t> pick(0, m - 1);
    for (std::uint32_t i = 0; i < space.size(); ++i) {
        if (!covered[i]) members[pick(rng)].push_back(i);
    }

    cvq::Cover q;
    for (std::uint32_t s = 0; s < m; ++s) {
        std::sort(members[s].begin(), members[s].end());
        members[s].erase(std::unique(members[s].begin(), members[s].end()), members[s].end());
        cvq::MSet set;
        set.id = "Q" + std::to_string(s + 1);
        set.atoms = std::move(members[s]);
        q.sets.push_back(std::move(set));
    }
    return q;
}

// Random acceptable partition: an ordering-form partition over a random
// permutation of the cover, refined by splitting each cell into random
// sub-cells. Sub-cells inherit containment, so acceptability holds.
inline cvq::Partition random_acceptable_partition(std::mt19937& rng,
                                                  const cvq::GroundSpace& space,
                                                  const cvq::Cover& cover) {
    std::vector<std::size_t> ordering(cover.size());
    for (std::size_t i = 0; i < ordering.size(); ++i) ordering[i] = i;
    std::shuffle(ordering.begin(), ordering.end(), rng);

    cvq::Partition base = cvq::ordering_form(space, cover, ordering);
    cvq::Partition refined;
    std::uniform_int_distribution<std::uint32_t> parts(1, 3);
    std::size_t counter = 0;
    for (const cvq::MSet& cell : base.cells) {
        const std::uint32_t k = std::min<std::uint32_t>(parts(rng),
                                                        static_cast<std::uint32_t>(cell.size()));
        std::vector<std::vector<std::uint32_t>> groups(std::max<std::uint32_t>(k, 1));
        std::uniform_int_distribution<std::uint32_t> which(0, std::max<std::uint32_t>(k, 1) - 1);
        for (std::uint32_t idx : cell.atoms) groups[which(rng)].push_back(idx);
        for (auto& group : groups) {
            if (group.empty()) continue;
            cvq::MSet sub;
            sub.id = "P" + std::to_string(++counter);
            sub.atoms = std::move(group);
            refined.cells.push_back(std::move(sub));
        }
    }
    return refined;
}

inline RandomInstance random_instance(std::uint64_t seed, std::uint32_t max_atoms,
                                      std::uint32_t max_sets) {
    std::mt19937 rng(static_cast<std::uint32_t>(seed ^ (seed >> 32)));
    RandomInstance inst;
    inst.space = random_space(rng, max_atoms);
    inst.cover = random_cover(rng, inst.space, max_sets);
    inst.partition = random_acceptable_partition(rng, inst.space, inst.cover);
    return inst;
}

// Least-squares slope of y against x.
inline double fitted_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

} // namespace cvqtest
