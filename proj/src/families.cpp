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

#include "cvq/families.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace cvq {

MSet set_intersect(const MSet& a, const MSet& b) {
    MSet out;
    out.id = a.id;
    std::set_intersection(a.atoms.begin(), a.atoms.end(),
                          b.atoms.begin(), b.atoms.end(),
                          std::back_inserter(out.atoms));
    return out;
}

MSet set_difference(const MSet& a, const MSet& b) {
    MSet out;
    out.id = a.id;
    std::set_difference(a.atoms.begin(), a.atoms.end(),
                        b.atoms.begin(), b.atoms.end(),
                        std::back_inserter(out.atoms));
    return out;
}

MSet set_union(const MSet& a, const MSet& b) {
    MSet out;
    out.id = a.id;
    std::set_union(a.atoms.begin(), a.atoms.end(),
                   b.atoms.begin(), b.atoms.end(),
                   std::back_inserter(out.atoms));
    return out;
}

bool is_subset(const MSet& sub, const MSet& super) {
    return std::includes(super.atoms.begin(), super.atoms.end(),
                         sub.atoms.begin(), sub.atoms.end());
}

bool same_atoms(const MSet& a, const MSet& b) {
    return a.atoms == b.atoms;
}

std::vector<MSet> restrict(const std::vector<MSet>& family, const MSet& a) {
    std::vector<MSet> out;
    out.reserve(family.size());
    for (const MSet& f : family) out.push_back(set_intersect(f, a));
    return out;
}

Diagnostics is_partition(const GroundSpace& space, const std::vector<MSet>& cells) {
    Diagnostics diag;

    // Disjointness: an atom may belong to at most one cell.
    std::vector<std::int64_t> owner(space.size(), -1);
    for (std::size_t c = 0; c < cells.size(); ++c) {
        for (std::uint32_t idx : cells[c].atoms) {
            if (idx >= space.size()) {
                diag.issues.push_back("cell '" + cells[c].id + "' references atom index " +
                                      std::to_string(idx) + " outside the space");
                return diag;
            }
            if (owner[idx] >= 0) {
                std::ostringstream msg;
                msg << "overlap at " << space.atoms()[idx].id << " between cells '"
                    << cells[static_cast<std::size_t>(owner[idx])].id << "' and '"
                    << cells[c].id << "'";
                diag.issues.push_back(msg.str());
                return diag;
            }
            owner[idx] = static_cast<std::int64_t>(c);
        }
    }

    double uncovered = 0.0;
    for (std::uint32_t i = 0; i < space.size(); ++i)
        if (owner[i] < 0) uncovered += space.atoms()[i].weight;
    if (uncovered > kMassTol) {
        std::ostringstream msg;
        msg << "uncovered mass " << uncovered;
        diag.issues.push_back(msg.str());
    }
    return diag;
}

Diagnostics is_partition(const GroundSpace& space, const Partition& p) {
    return is_partition(space, p.cells);
}

Acceptability is_acceptable(const Partition& p, const Cover& q) {
    Acceptability result;
    result.ok = true;
    for (const MSet& cell : p.cells) {
        if (cell.empty()) continue;
        bool found = false;
        for (std::size_t i = 0; i < q.size(); ++i) {
            if (is_subset(cell, q.sets[i])) {
                result.witness[cell.id] = i;
                found = true;
                break;
            }
        }
        if (!found) {
            result.ok = false;
            result.failing_cell = cell.id;
            result.witness.clear();
            return result;
        }
    }
    return result;
}

Diagnostics cover_validate(const GroundSpace& space, const Cover& q) {
    Diagnostics diag;
    std::vector<bool> covered(space.size(), false);
    for (const MSet& s : q.sets) {
        for (std::uint32_t idx : s.atoms) {
            if (idx >= space.size()) {
                diag.issues.push_back("cover set '" + s.id + "' references atom index " +
                                      std::to_string(idx) + " outside the space");
                return diag;
            }
            covered[idx] = true;
        }
    }
    double uncovered = 0.0;
    for (std::uint32_t i = 0; i < space.size(); ++i)
        if (!covered[i]) uncovered += space.atoms()[i].weight;
    if (uncovered > kMassTol) {
        std::ostringstream msg;
        msg << "uncovered mass " << uncovered;
        diag.issues.push_back(msg.str());
    }
    return diag;
}

Partition ordering_form(const GroundSpace& space, const Cover& q,
                        const std::vector<std::size_t>& ordering) {
    std::set<std::size_t> seen;
    for (std::size_t idx : ordering) {
        if (idx >= q.size())
            raise(ErrorKind::Structural, "ordering index " + std::to_string(idx) +
                                         " out of range for cover of size " + std::to_string(q.size()));
        if (!seen.insert(idx).second)
            raise(ErrorKind::Structural, "duplicate ordering index " + std::to_string(idx));
    }

    Partition p;
    MSet taken; // union of earlier cover sets
    taken.id = "taken";
    for (std::size_t idx : ordering) {
        MSet cell = set_difference(q.sets[idx], taken);
        cell.id = q.sets[idx].id;
        taken = set_union(taken, q.sets[idx]);
        if (mass(space, cell) == 0.0) continue; // sh(0) = 0; drop for normal form
        p.witness[cell.id] = q.sets[idx].id;
        p.cells.push_back(std::move(cell));
    }
    return p;
}

} // namespace cvq
