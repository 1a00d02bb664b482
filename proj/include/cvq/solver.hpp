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

#pragma once

#include <cstdint>
#include <functional>

#include "cvq/entropy.hpp"
#include "cvq/reduction.hpp"

namespace cvq {

enum class SolveMethod { Greedy, Exact, Oracle };

const char* solve_method_name(SolveMethod m);

struct SolveResult {
    double entropy_bits = 0.0;
    std::vector<std::size_t> ordering; // cover indices (empty for the oracle)
    Partition partition;
    SolveMethod method = SolveMethod::Greedy;
    std::uint64_t nodes_explored = 0;
    bool optimal = false;
};

inline constexpr std::uint64_t kDefaultNodeBudget = 10'000'000;

// Admissible completion bound for a residual set: every acceptable cell
// inside the residual has mass at most c = max over cover sets of
// mass(Q ∩ residual), hence any completion costs at least -m*log2(c).
// Returns 0 when the residual is exhausted or c >= 1, +inf when the cover
// cannot touch a positive residual.
double completion_lower_bound(const GroundSpace& space, const Cover& q, const MSet& residual);

// Exact minimum of the partition entropy over the cover's ordering-form
// partitions, by depth-first branch and bound over prefixes of distinct
// cover sets. The search is seeded with the greedy solution, expands
// children by decreasing absorbed mass (ties by cover index), skips
// duplicate and zero-gain children, and prunes on the completion bound.
// If the node budget runs out the best incumbent is returned with
// optimal = false.
SolveResult solve_exact(const GroundSpace& space, const Cover& q,
                        std::uint64_t budget = kDefaultNodeBudget);

// Upper bound: repeatedly absorb the cover set of maximal remaining mass.
SolveResult solve_greedy(const GroundSpace& space, const Cover& q);

// Direct minimization over ALL acceptable partitions of the positive-mass
// atoms, by exhaustive set-partition enumeration. Refuses when more than
// max_atoms atoms carry positive mass.
SolveResult brute_force_oracle(const GroundSpace& space, const Cover& q,
                               std::uint32_t max_atoms = 10);

// Reduction of an acceptable partition into ordering form (default policies).
ReductionResult improve(const GroundSpace& space, const Cover& q, const Partition& p);

// Visits every set partition of {0,...,n-1} as a restricted growth string,
// in lexicographic order. blocks[i] lists the members of block i. Returns
// early when the visitor returns false.
void for_each_set_partition(std::uint32_t n,
                            const std::function<bool(const std::vector<std::vector<std::uint32_t>>&)>& visit);

} // namespace cvq
