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

#include "cvq/entropy.hpp"
#include "cvq/families.hpp"

namespace cvq {

// Choice rule for the absorbing cover set at each step. The max-mass cell
// is always selected by lowest cell index among ties; the cover set
// containing it may be chosen greedily or by first index.
enum class TiePolicy {
    MaxGain,    // among containing sets, maximize mass(Q ∩ X_i); ties by index
    FirstIndex, // lowest cover index containing the max cell
};

struct TraceStep {
    std::size_t iteration = 0;
    std::string pmax_cell_id;
    double pmax_mass = 0.0;
    std::size_t chosen_cover_index = 0;
    double residual_mass_before = 0.0;
};

struct ReductionTrace {
    std::vector<TraceStep> steps;
    double final_residual = 0.0;
};

struct ReductionResult {
    Partition partition;              // ordering form over the cover
    std::vector<std::size_t> ordering; // cover indices, in absorption order
    ReductionTrace trace;
};

// Loop state: the residual set X_i and the step counter. reduce() drives
// this; it is public so the CLI can trace one step at a time.
struct ReduceState {
    MSet residual;
    std::size_t iteration = 0;
};

struct StepOutcome {
    TraceStep record;
    MSet emitted_cell;        // R_i = Q ∩ X_i (empty when the loop must stop)
    std::size_t cover_index = 0;
    bool stopped = false;     // true when no positive-mass cell remains
};

ReduceState reduce_begin(const GroundSpace& space);

// One iteration: pick the max-mass cell of the restriction of p to the
// residual, pick a cover set containing it by `policy`, emit their
// intersection and shrink the residual. Requires mass(residual) > kMassTol.
StepOutcome reduce_step(const GroundSpace& space, const Cover& q, const Partition& p,
                        ReduceState& state, TiePolicy policy);

// Full run: transforms any acceptable partition into an ordering-form
// partition with entropy no greater than the input's. Preconditions:
// cover_validate ok and is_acceptable(p, q); violations raise precondition
// errors naming the offender.
ReductionResult reduce(const GroundSpace& space, const Cover& q, const Partition& p,
                       TiePolicy policy = TiePolicy::MaxGain);

} // namespace cvq
