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

#include <string>

#include "cvq/codec.hpp"
#include "cvq/covergen.hpp"
#include "cvq/reduction.hpp"
#include "cvq/solver.hpp"

namespace cvq {

// Measure file: {"atoms":[{"id":"a1","weight":0.4,"label":-0.5}, ...]};
// label optional. Duplicate ids, negative weights and total mass above 1
// are rejected with validation errors.
GroundSpace load_measure(const std::string& path);
void save_measure(const GroundSpace& space, const std::string& path);

// Cover file: {"sets":[{"id":"Q1","atoms":["a1","a2"]}, ...]}. An entry may
// instead carry {"id":"Q1","lo":...,"hi":...}; it resolves to the atoms
// whose labels lie in the closed interval [lo, hi].
Cover load_cover(const GroundSpace& space, const std::string& path);
void save_cover(const GroundSpace& space, const Cover& q, const std::string& path);

// Partition file: {"cells":[{"id":"P1","atoms":[...]}], "witness":{"P1":"Q1"}};
// witness optional. Cells may also be given in interval form like cover sets.
Partition load_partition(const GroundSpace& space, const std::string& path);
void save_partition(const GroundSpace& space, const Partition& p, const std::string& path);

// Density file: {"pieces":[{"lo":0.0,"hi":1.0,"height":1.0}, ...]}.
DensitySpec load_density(const std::string& path);

std::string solve_result_json(const Cover& q, const SolveResult& result);
std::string trace_json(const ReductionTrace& trace);
void save_text(const std::string& text, const std::string& path);

// Data file for encoding: header line "atom_id", one atom id per line.
std::vector<std::string> load_atom_csv(const std::string& path);

} // namespace cvq
