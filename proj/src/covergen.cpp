/*
Copyright 2026 The cvq authors
Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#include "cvq/covergen.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

namespace cvq {

namespace {

std::string indexed_id(const char* prefix, std::size_t i) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%s%04zu", prefix, i);
    return buf;
}

void check_density(const DensitySpec& d) {
    std::vector<DensityPiece> sorted = d.pieces;
    std::sort(sorted.begin(), sorted.end(),
              [](const DensityPiece& a, const DensityPiece& b) { return a.lo < b.lo; });
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const DensityPiece& p = sorted[i];
        if (!(p.lo < p.hi))
            raise(ErrorKind::Precondition, "density piece with lo >= hi");
        if (!(p.height >= 0.0))
            raise(ErrorKind::Precondition, "density piece with negative height");
        if (i + 1 < sorted.size() && p.hi > sorted[i + 1].lo + kMassTol)
            raise(ErrorKind::Precondition, "overlapping density pieces");
    }
    if (density_integral(d) > 1.0 + kMassTol)
        raise(ErrorKind::Precondition, "density integrates to more than 1");
}

double require_label(const Atom& a) {
    if (!a.label)
        raise(ErrorKind::Structural, "atom '" + a.id + "' carries no label");
    return *a.label;
}

// Atom indices sorted by label (ties by ground-space order).
std::vector<std::uint32_t> label_order(const GroundSpace& space) {
    std::vector<std::uint32_t> order(space.size());
    for (std::uint32_t i = 0; i < space.size(); ++i) {
        require_label(space.atoms()[i]);
        order[i] = i;
    }
    std::stable_sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        return *space.atoms()[a].label < *space.atoms()[b].label;
    });
    return order;
}

MSet sorted_set(std::string id, std::vector<std::uint32_t> atoms) {
    std::sort(atoms.begin(), atoms.end());
    MSet s;
    s.id = std::move(id);
    s.atoms = std::move(atoms);
    return s;
}

} // namespace

double density_integral(const DensitySpec& d) {
    double total = 0.0;
    for (const DensityPiece& p : d.pieces) total += p.height * (p.hi - p.lo);
    return total;
}

GroundSpace discretize(const DensitySpec& d, std::uint32_t atoms_per_unit) {
    if (atoms_per_unit < 1)
        raise(ErrorKind::Parameter, "atoms_per_unit must be >= 1");
    check_density(d);

    std::vector<Atom> atoms;
    if (d.pieces.empty()) return GroundSpace(std::move(atoms));

    double lo = d.pieces.front().lo, hi = d.pieces.front().hi;
    for (const DensityPiece& p : d.pieces) {
        lo = std::min(lo, p.lo);
        hi = std::max(hi, p.hi);
    }

    const double width = 1.0 / static_cast<double>(atoms_per_unit);
    const auto first = static_cast<std::int64_t>(std::floor(lo / width + kMassTol));
    auto last = static_cast<std::int64_t>(std::ceil(hi / width - kMassTol));
    if (last <= first) last = first + 1;

    atoms.reserve(static_cast<std::size_t>(last - first));
    for (std::int64_t k = first; k < last; ++k) {
        const double cell_lo = static_cast<double>(k) * width;
        const double cell_hi = static_cast<double>(k + 1) * width;
        // Exact integral of the piecewise-constant density over the cell.
        double w = 0.0;
        for (const DensityPiece& p : d.pieces) {
            const double a = std::max(cell_lo, p.lo);
            const double b = std::min(cell_hi, p.hi);
            if (b > a) w += p.height * (b - a);
        }
        Atom atom;
        atom.id = indexed_id("g", static_cast<std::size_t>(k - first));
        atom.weight = w;
        atom.label = 0.5 * (cell_lo + cell_hi);
        atoms.push_back(std::move(atom));
    }
    return GroundSpace(std::move(atoms));
}

Cover epsilon_cover(const GroundSpace& space, double eps, EpsMode mode) {
    if (!(eps > 0.0))
        raise(ErrorKind::Parameter, "eps must be positive");

    Cover cover;
    if (space.size() == 0) return cover;

    if (mode == EpsMode::Aligned) {
        // Tile index floor(label/eps); membership is label in [k*eps, (k+1)*eps).
        std::map<std::int64_t, std::vector<std::uint32_t>> tiles;
        for (std::uint32_t i = 0; i < space.size(); ++i) {
            const double label = require_label(space.atoms()[i]);
            tiles[static_cast<std::int64_t>(std::floor(label / eps))].push_back(i);
        }
        std::size_t n = 0;
        for (auto& [k, members] : tiles)
            cover.sets.push_back(sorted_set(indexed_id("E", n++), std::move(members)));
        return cover;
    }

    // Sliding: the window [L_i, L_i + eps] anchored at each atom label. These
    // are all distinct atom subsets induced by closed length-eps intervals on
    // the grid; duplicates are emitted once.
    std::vector<std::uint32_t> order = label_order(space);
    std::vector<std::vector<std::uint32_t>> windows;
    for (std::size_t i = 0; i < order.size(); ++i) {
        const double start = *space.atoms()[order[i]].label;
        std::vector<std::uint32_t> members;
        for (std::size_t j = i; j < order.size(); ++j) {
            if (*space.atoms()[order[j]].label > start + eps) break;
            members.push_back(order[j]);
        }
        std::sort(members.begin(), members.end());
        if (windows.empty() || windows.back() != members) windows.push_back(std::move(members));
    }
    for (std::size_t n = 0; n < windows.size(); ++n)
        cover.sets.push_back(sorted_set(indexed_id("W", n), std::move(windows[n])));
    return cover;
}

Cover quantile_cover(const GroundSpace& space, double max_mass) {
    if (!(max_mass > 0.0) || max_mass > 1.0)
        raise(ErrorKind::Parameter, "max_mass must lie in (0,1]");

    std::vector<std::uint32_t> order = label_order(space);
    double heaviest = 0.0;
    std::string heaviest_id;
    for (const Atom& a : space.atoms()) {
        if (a.weight > heaviest) {
            heaviest = a.weight;
            heaviest_id = a.id;
        }
    }
    if (heaviest >= max_mass) {
        std::ostringstream msg;
        msg << "atom '" << heaviest_id << "' of weight " << heaviest
            << " cannot fit a cell of mass <= " << max_mass;
        raise(ErrorKind::Refusal, msg.str());
    }

    Cover cover;
    if (order.empty()) return cover;

    auto run_mass = [&](std::size_t from, std::size_t to) {
        double m = 0.0;
        for (std::size_t i = from; i <= to; ++i) m += space.atoms()[order[i]].weight;
        return m;
    };

    // Maximal disjoint runs first.
    std::vector<std::pair<std::size_t, std::size_t>> runs;
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i;
        while (j + 1 < order.size() && run_mass(i, j + 1) <= max_mass + kMassTol) ++j;
        runs.emplace_back(i, j);
        i = j + 1;
    }
    // Overlap each run backward over its predecessor's last atom when the
    // mass bound still holds, so the family is a cover rather than a partition.
    for (std::size_t r = 1; r < runs.size(); ++r) {
        const std::size_t prev_last = runs[r - 1].second;
        if (run_mass(prev_last, runs[r].second) <= max_mass + kMassTol)
            runs[r].first = prev_last;
    }

    for (std::size_t r = 0; r < runs.size(); ++r) {
        std::vector<std::uint32_t> members;
        for (std::size_t k = runs[r].first; k <= runs[r].second; ++k)
            members.push_back(order[k]);
        cover.sets.push_back(sorted_set(indexed_id("V", r), std::move(members)));
    }
    return cover;
}

} // namespace cvq
