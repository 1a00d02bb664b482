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

#include "cvq/measure.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace cvq {

const char* error_kind_name(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::Structural:   return "structural";
    case ErrorKind::Domain:       return "domain";
    case ErrorKind::Precondition: return "precondition";
    case ErrorKind::Parameter:    return "parameter";
    case ErrorKind::Data:         return "data";
    case ErrorKind::Format:       return "format";
    case ErrorKind::Refusal:      return "refusal";
    case ErrorKind::Validation:   return "validation";
    case ErrorKind::Internal:     return "internal";
    }
    return "unknown";
}

std::string Diagnostics::joined() const {
    std::ostringstream out;
    for (std::size_t i = 0; i < issues.size(); ++i) {
        if (i > 0) out << "; ";
        out << issues[i];
    }
    return out.str();
}

GroundSpace::GroundSpace(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
    double total = 0.0;
    for (std::uint32_t i = 0; i < atoms_.size(); ++i) {
        total += atoms_[i].weight;
        index_.emplace(atoms_[i].id, i); // keeps the first occurrence
    }
    total_mass_ = total;
}

std::optional<std::uint32_t> GroundSpace::find(const std::string& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::uint32_t GroundSpace::index_of(const std::string& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) raise(ErrorKind::Structural, "unknown atom id '" + id + "'");
    return it->second;
}

MSet GroundSpace::make_set(const std::string& set_id,
                           const std::vector<std::string>& atom_ids) const {
    MSet s;
    s.id = set_id;
    s.atoms.reserve(atom_ids.size());
    for (const auto& id : atom_ids) s.atoms.push_back(index_of(id));
    std::sort(s.atoms.begin(), s.atoms.end());
    s.atoms.erase(std::unique(s.atoms.begin(), s.atoms.end()), s.atoms.end());
    return s;
}

MSet GroundSpace::universe(const std::string& set_id) const {
    MSet s;
    s.id = set_id;
    s.atoms.resize(atoms_.size());
    std::iota(s.atoms.begin(), s.atoms.end(), 0u);
    return s;
}

double mass(const GroundSpace& space, const MSet& s) {
    // s.atoms is sorted, so this walk is exactly ground-space atom order.
    double total = 0.0;
    for (std::uint32_t idx : s.atoms) {
        if (idx >= space.size()) {
            raise(ErrorKind::Structural,
                  "atom index " + std::to_string(idx) + " outside ground space of size " +
                  std::to_string(space.size()) + " (set '" + s.id + "')");
        }
        total += space.atoms()[idx].weight;
    }
    return total;
}

Diagnostics validate(const GroundSpace& space) {
    Diagnostics diag;
    std::unordered_map<std::string, std::uint32_t> seen;
    for (std::uint32_t i = 0; i < space.size(); ++i) {
        const Atom& a = space.atoms()[i];
        if (!(a.weight >= 0.0)) { // also catches NaN
            std::ostringstream msg;
            msg << "negative weight " << a.weight << " on atom '" << a.id << "'";
            diag.issues.push_back(msg.str());
        }
        auto [it, inserted] = seen.emplace(a.id, i);
        if (!inserted) diag.issues.push_back("duplicate atom id '" + a.id + "'");
    }
    if (space.total_mass() > 1.0 + kMassTol) {
        std::ostringstream msg;
        msg << "total mass " << space.total_mass() << " > 1";
        diag.issues.push_back(msg.str());
    }
    return diag;
}

} // namespace cvq
