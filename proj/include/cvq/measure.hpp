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
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "cvq/error.hpp"

namespace cvq {

// Absolute tolerance for all mass comparisons. Masses are doubles; a fixed
// tolerance makes predicates such as "residual mass is positive" decidable.
inline constexpr double kMassTol = 1e-12;

// One point of the discrete space: an id, a nonnegative probability mass,
// and an optional numeric location used by interval cover generators.
struct Atom {
    std::string id;
    double weight = 0.0;
    std::optional<double> label;
};

// A measurable set, stored as sorted, unique atom indices into the owning
// GroundSpace. Keeping indices (not ids) pins every mass sum to ground-space
// atom order, which is the determinism anchor for the whole toolkit.
struct MSet {
    std::string id;
    std::vector<std::uint32_t> atoms; // sorted ascending, unique

    bool empty() const { return atoms.empty(); }
    std::size_t size() const { return atoms.size(); }
};

struct Diagnostics {
    std::vector<std::string> issues;
    bool ok() const { return issues.empty(); }
    std::string joined() const;
};

// The discrete subprobability space: a fixed, ordered list of weighted atoms.
// Immutable after construction; safe for concurrent reads. Construction is
// permissive (validate() reports violations) but the JSON loader rejects
// malformed spaces outright.
class GroundSpace {
public:
    GroundSpace() = default;
    explicit GroundSpace(std::vector<Atom> atoms);

    const std::vector<Atom>& atoms() const { return atoms_; }
    std::size_t size() const { return atoms_.size(); }
    const Atom& atom(std::uint32_t index) const { return atoms_.at(index); }
    double total_mass() const { return total_mass_; }

    // Index of the first atom carrying this id, if any.
    std::optional<std::uint32_t> find(const std::string& id) const;

    // Index lookup that raises a structural error naming the unknown id.
    std::uint32_t index_of(const std::string& id) const;

    // Builds an MSet from atom ids; unknown ids raise structural errors.
    MSet make_set(const std::string& set_id,
                  const std::vector<std::string>& atom_ids) const;

    // The set of all atoms (X itself).
    MSet universe(const std::string& set_id = "X") const;

private:
    std::vector<Atom> atoms_;
    double total_mass_ = 0.0;
    std::unordered_map<std::string, std::uint32_t> index_;
};

// mu(s): sum of weights over the atoms of s, accumulated in ground-space
// atom order. Empty set has mass 0. Out-of-range indices raise a structural
// error (ids are checked when sets are built).
double mass(const GroundSpace& space, const MSet& s);

// ok iff all weights >= 0, ids unique, and total mass <= 1 + kMassTol.
Diagnostics validate(const GroundSpace& space);

} // namespace cvq
