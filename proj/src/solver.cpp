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

#include "cvq/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace cvq {

namespace {

// Bound-vs-incumbent comparisons tolerate this much float noise, so an
// optimum can be undercut by at most 1e-12; callers compare entropies at
// 1e-9 and coarser.
constexpr double kPruneSlack = 1e-12;

void require_valid_cover(const GroundSpace& space, const Cover& q) {
    Diagnostics diag = cover_validate(space, q);
    if (!diag.ok())
        raise(ErrorKind::Precondition, "invalid cover: " + diag.joined());
}

struct Child {
    std::size_t cover_index;
    MSet cell;    // Q ∩ residual
    double gain;  // mass of the cell
};

// Distinct, positive-gain children of a node, sorted by decreasing gain
// (ties by cover index). Cover sets whose intersection with the residual
// repeats an earlier child's atom set are expanded once; zero-gain children
// neither move mass nor change entropy and are skipped.
std::vector<Child> expand(const GroundSpace& space, const Cover& q, const MSet& residual) {
    std::vector<Child> children;
    std::set<std::vector<std::uint32_t>> seen;
    for (std::size_t i = 0; i < q.size(); ++i) {
        MSet cell = set_intersect(q.sets[i], residual);
        if (cell.empty()) continue;
        if (!seen.insert(cell.atoms).second) continue;
        const double gain = mass(space, cell);
        if (gain == 0.0) continue;
        cell.id = q.sets[i].id;
        children.push_back(Child{i, std::move(cell), gain});
    }
    std::stable_sort(children.begin(), children.end(), [](const Child& a, const Child& b) {
        return a.gain > b.gain;
    });
    return children;
}

struct SearchState {
    SearchState(const GroundSpace& s, const Cover& c, std::uint64_t b)
        : space(s), cover(c), budget(b) {}

    const GroundSpace& space;
    const Cover& cover;
    std::uint64_t budget;
    std::uint64_t nodes = 0;
    bool exhausted = false;

    double best_entropy = std::numeric_limits<double>::infinity();
    std::vector<std::size_t> best_ordering;
    std::vector<std::size_t> prefix;

    void offer(double entropy) {
        if (entropy < best_entropy ||
            (entropy == best_entropy && prefix < best_ordering)) {
            best_entropy = entropy;
            best_ordering = prefix;
        }
    }
};

void search(SearchState& st, const MSet& residual, double placed_entropy) {
    if (st.exhausted) return;
    st.nodes += 1;
    if (st.nodes > st.budget) {
        st.exhausted = true;
        return;
    }

    const double residual_mass = mass(st.space, residual);
    if (residual_mass <= kMassTol) {
        st.offer(placed_entropy);
        return;
    }

    std::vector<Child> children = expand(st.space, st.cover, residual);
    if (children.empty()) return; // positive mass the cover cannot reach

    const double c = children.front().gain;
    const double bound = (c >= 1.0) ? 0.0 : -residual_mass * std::log2(c);
    if (placed_entropy + bound >= st.best_entropy - kPruneSlack) return;

    for (const Child& child : children) {
        // Cheap pre-check with the parent's c; c only shrinks downward.
        const double child_mass = residual_mass - child.gain;
        double child_bound = 0.0;
        if (child_mass > kMassTol && c < 1.0) child_bound = -child_mass * std::log2(c);
        const double child_value = placed_entropy + shannon_fn(std::min(child.gain, 1.0)) + child_bound;
        if (child_value >= st.best_entropy - kPruneSlack) continue;

        st.prefix.push_back(child.cover_index);
        MSet next = set_difference(residual, child.cell);
        search(st, next, placed_entropy + shannon_fn(std::min(child.gain, 1.0)));
        st.prefix.pop_back();
        if (st.exhausted) return;
    }
}

SolveResult finish_from_ordering(const GroundSpace& space, const Cover& q,
                                 std::vector<std::size_t> ordering, SolveMethod method) {
    SolveResult result;
    result.method = method;
    result.partition = ordering_form(space, q, ordering);
    result.ordering = std::move(ordering);
    result.entropy_bits = cell_entropy_sum(space, result.partition.cells);
    return result;
}

} // namespace

const char* solve_method_name(SolveMethod m) {
    switch (m) {
    case SolveMethod::Greedy: return "greedy";
    case SolveMethod::Exact:  return "exact";
    case SolveMethod::Oracle: return "oracle";
    }
    return "unknown";
}

double completion_lower_bound(const GroundSpace& space, const Cover& q, const MSet& residual) {
    const double m = mass(space, residual);
    if (m <= kMassTol) return 0.0;
    double c = 0.0;
    for (const MSet& s : q.sets)
        c = std::max(c, mass(space, set_intersect(s, residual)));
    if (c <= 0.0) return std::numeric_limits<double>::infinity();
    if (c >= 1.0) return 0.0;
    return -m * std::log2(c);
}

SolveResult solve_greedy(const GroundSpace& space, const Cover& q) {
    require_valid_cover(space, q);

    std::vector<std::size_t> ordering;
    MSet residual = space.universe();
    while (mass(space, residual) > kMassTol) {
        std::vector<Child> children = expand(space, q, residual);
        if (children.empty()) break; // unreachable for a valid cover
        const Child& pick = children.front();
        ordering.push_back(pick.cover_index);
        residual = set_difference(residual, pick.cell);
    }

    SolveResult result = finish_from_ordering(space, q, std::move(ordering), SolveMethod::Greedy);
    result.nodes_explored = result.ordering.size();
    result.optimal = false; // an upper bound, even when it happens to be tight
    return result;
}

SolveResult solve_exact(const GroundSpace& space, const Cover& q, std::uint64_t budget) {
    if (budget == 0)
        raise(ErrorKind::Parameter, "node budget must be positive");
    require_valid_cover(space, q);

    // Greedy incumbent: guarantees exact <= greedy and prunes early.
    SolveResult greedy = solve_greedy(space, q);

    SearchState st(space, q, budget);
    st.best_entropy = greedy.entropy_bits;
    st.best_ordering = greedy.ordering;
    search(st, space.universe(), 0.0);

    SolveResult result = finish_from_ordering(space, q, st.best_ordering, SolveMethod::Exact);
    result.nodes_explored = st.nodes;
    result.optimal = !st.exhausted;
    return result;
}

SolveResult brute_force_oracle(const GroundSpace& space, const Cover& q, std::uint32_t max_atoms) {
    require_valid_cover(space, q);

    std::vector<std::uint32_t> positive;
    for (std::uint32_t i = 0; i < space.size(); ++i)
        if (space.atoms()[i].weight > 0.0) positive.push_back(i);
    if (positive.size() > max_atoms)
        raise(ErrorKind::Refusal,
              std::to_string(positive.size()) + " positive-mass atoms exceed the oracle limit of " +
              std::to_string(max_atoms));

    SolveResult result;
    result.method = SolveMethod::Oracle;
    result.optimal = true;

    if (positive.empty()) {
        result.entropy_bits = 0.0;
        return result;
    }

    double best = std::numeric_limits<double>::infinity();
    std::vector<std::vector<std::uint32_t>> best_blocks;
    std::uint64_t visited = 0;

    for_each_set_partition(static_cast<std::uint32_t>(positive.size()),
                           [&](const std::vector<std::vector<std::uint32_t>>& blocks) {
        visited += 1;
        double h = 0.0;
        bool acceptable = true;
        for (const auto& block : blocks) {
            MSet cell;
            for (std::uint32_t member : block) cell.atoms.push_back(positive[member]);
            std::sort(cell.atoms.begin(), cell.atoms.end());
            bool contained = false;
            for (const MSet& s : q.sets) {
                if (is_subset(cell, s)) {
                    contained = true;
                    break;
                }
            }
            if (!contained) {
                acceptable = false;
                break;
            }
            h += shannon_fn(std::min(mass(space, cell), 1.0));
        }
        if (acceptable && h < best) {
            best = h;
            best_blocks = blocks;
        }
        return true;
    });

    if (!std::isfinite(best))
        raise(ErrorKind::Internal, "no acceptable partition despite a valid cover");

    for (std::size_t b = 0; b < best_blocks.size(); ++b) {
        MSet cell;
        cell.id = "P" + std::to_string(b + 1);
        for (std::uint32_t member : best_blocks[b]) cell.atoms.push_back(positive[member]);
        std::sort(cell.atoms.begin(), cell.atoms.end());
        result.partition.cells.push_back(std::move(cell));
    }
    result.entropy_bits = best;
    result.nodes_explored = visited;
    return result;
}

ReductionResult improve(const GroundSpace& space, const Cover& q, const Partition& p) {
    return reduce(space, q, p, TiePolicy::MaxGain);
}

void for_each_set_partition(std::uint32_t n,
                            const std::function<bool(const std::vector<std::vector<std::uint32_t>>&)>& visit) {
    if (n == 0) return;

    // Restricted growth strings: a[0] = 0 and a[i] <= 1 + max(a[0..i-1]),
    // advanced in lexicographic order.
    std::vector<std::uint32_t> a(n, 0);
    std::vector<std::vector<std::uint32_t>> blocks;

    auto emit = [&]() {
        std::uint32_t nblocks = *std::max_element(a.begin(), a.end()) + 1;
        blocks.assign(nblocks, {});
        for (std::uint32_t i = 0; i < n; ++i) blocks[a[i]].push_back(i);
        return visit(blocks);
    };

    while (true) {
        if (!emit()) return;
        // Rightmost position that can still grow.
        std::uint32_t i = n;
        while (i-- > 1) {
            std::uint32_t prefix_max = *std::max_element(a.begin(), a.begin() + i);
            if (a[i] <= prefix_max) {
                a[i] += 1;
                std::fill(a.begin() + i + 1, a.end(), 0);
                break;
            }
            if (i == 1) return;
        }
        if (n == 1) return;
    }
}

} // namespace cvq
