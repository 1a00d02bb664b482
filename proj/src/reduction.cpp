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

#include "cvq/reduction.hpp"

namespace cvq {

ReduceState reduce_begin(const GroundSpace& space) {
    ReduceState state;
    state.residual = space.universe("X0");
    state.iteration = 0;
    return state;
}

StepOutcome reduce_step(const GroundSpace& space, const Cover& q, const Partition& p,
                        ReduceState& state, TiePolicy policy) {
    const double residual_mass = mass(space, state.residual);
    if (residual_mass <= kMassTol)
        raise(ErrorKind::Precondition, "reduce_step called with exhausted residual");

    // Max-mass cell of the restriction of p to X_i; ties go to the lowest
    // cell index.
    std::size_t best_cell = p.cells.size();
    double best_mass = -1.0;
    MSet best_restricted;
    for (std::size_t c = 0; c < p.cells.size(); ++c) {
        MSet restricted = set_intersect(p.cells[c], state.residual);
        const double m = mass(space, restricted);
        if (m > best_mass) {
            best_mass = m;
            best_cell = c;
            best_restricted = std::move(restricted);
        }
    }

    StepOutcome out;
    if (best_cell == p.cells.size() || best_mass <= 0.0) {
        // No positive-mass cell left inside the residual; the absorbed set
        // would carry zero mass, so the loop stops here.
        out.stopped = true;
        return out;
    }

    // Cover set containing the max cell. P_max ⊂ X_i, so containment in Q
    // equals containment in Q ∩ X_i.
    std::size_t chosen = q.size();
    double chosen_gain = -1.0;
    for (std::size_t i = 0; i < q.size(); ++i) {
        if (!is_subset(best_restricted, q.sets[i])) continue;
        if (policy == TiePolicy::FirstIndex) {
            chosen = i;
            break;
        }
        const double gain = mass(space, set_intersect(q.sets[i], state.residual));
        if (gain > chosen_gain) {
            chosen_gain = gain;
            chosen = i;
        }
    }
    if (chosen == q.size())
        raise(ErrorKind::Precondition,
              "cell '" + p.cells[best_cell].id + "' is contained in no cover set");

    out.record.iteration = state.iteration;
    out.record.pmax_cell_id = p.cells[best_cell].id;
    out.record.pmax_mass = best_mass;
    out.record.chosen_cover_index = chosen;
    out.record.residual_mass_before = residual_mass;
    out.cover_index = chosen;
    out.emitted_cell = set_intersect(q.sets[chosen], state.residual);
    out.emitted_cell.id = q.sets[chosen].id;

    state.residual = set_difference(state.residual, out.emitted_cell);
    state.residual.id = "X" + std::to_string(state.iteration + 1);
    state.iteration += 1;
    return out;
}

ReductionResult reduce(const GroundSpace& space, const Cover& q, const Partition& p,
                       TiePolicy policy) {
    Diagnostics cover_diag = cover_validate(space, q);
    if (!cover_diag.ok())
        raise(ErrorKind::Precondition, "invalid cover: " + cover_diag.joined());
    Diagnostics part_diag = is_partition(space, p);
    if (!part_diag.ok())
        raise(ErrorKind::Precondition, "invalid partition: " + part_diag.joined());
    Acceptability acc = is_acceptable(p, q);
    if (!acc.ok)
        raise(ErrorKind::Precondition,
              "partition is not acceptable: cell '" + acc.failing_cell +
              "' is contained in no cover set");

    ReductionResult result;
    ReduceState state = reduce_begin(space);
    const std::size_t step_guard = space.size() + 1;

    while (mass(space, state.residual) > kMassTol) {
        if (state.iteration >= step_guard)
            raise(ErrorKind::Internal, "reduction exceeded its step guard");
        StepOutcome out = reduce_step(space, q, p, state, policy);
        if (out.stopped) break;
        result.trace.steps.push_back(out.record);
        result.ordering.push_back(out.cover_index);
        if (mass(space, out.emitted_cell) > 0.0) {
            result.partition.witness[out.emitted_cell.id] = q.sets[out.cover_index].id;
            result.partition.cells.push_back(std::move(out.emitted_cell));
        }
    }
    result.trace.final_residual = mass(space, state.residual);
    return result;
}

} // namespace cvq
