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

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "cvq/measure.hpp"

namespace cvq {

// Set algebra on sorted atom-index vectors. All exact; no tolerances.
MSet set_intersect(const MSet& a, const MSet& b);
MSet set_difference(const MSet& a, const MSet& b);
MSet set_union(const MSet& a, const MSet& b);
bool is_subset(const MSet& sub, const MSet& super);
bool same_atoms(const MSet& a, const MSet& b);

// The error-control family Q: an ordered, finite list of measurable sets
// whose union is expected to carry all mass (checked by cover_validate,
// not at construction).
struct Cover {
    std::vector<MSet> sets;

    std::size_t size() const { return sets.size(); }
    const MSet& operator[](std::size_t i) const { return sets.at(i); }
};

// Pairwise-disjoint cells carrying all mass, optionally annotated with an
// acceptability witness (cell id -> cover set id).
struct Partition {
    std::vector<MSet> cells;
    std::map<std::string, std::string> witness;

    std::size_t size() const { return cells.size(); }
};

// {F ∩ a : F in family}, order preserved, empty intersections retained.
// Each restricted set keeps the id of its source set.
std::vector<MSet> restrict(const std::vector<MSet>& family, const MSet& a);

// ok iff cells are pairwise disjoint (exact, as atom sets) and the mass
// not covered by any cell is <= kMassTol.
Diagnostics is_partition(const GroundSpace& space, const std::vector<MSet>& cells);
Diagnostics is_partition(const GroundSpace& space, const Partition& p);

// Result of an acceptability check P ≺ Q: when every nonempty cell is
// contained in some cover set, `witness` maps each such cell to the index
// of the first containing set; otherwise `failing_cell` names the first
// cell contained in no set.
struct Acceptability {
    bool ok = false;
    std::map<std::string, std::size_t> witness;
    std::string failing_cell;
};

Acceptability is_acceptable(const Partition& p, const Cover& q);

// ok iff mass(X \ union of cover sets) <= kMassTol.
Diagnostics cover_validate(const GroundSpace& space, const Cover& q);

// Cells D_i = Q_{s(i)} \ (Q_{s(0)} ∪ ... ∪ Q_{s(i-1)}) for the given ordering
// of distinct cover indices, with zero-mass cells dropped. Each kept cell
// inherits the id of its cover set and the witness records that containment,
// so the result is acceptable by construction.
Partition ordering_form(const GroundSpace& space, const Cover& q,
                        const std::vector<std::size_t>& ordering);

} // namespace cvq
