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

#include "cvq/families.hpp"

namespace cvq {

// Piecewise-constant density on the real line. Pieces must be
// non-overlapping with lo < hi and nonnegative height, and the total
// integral must not exceed 1 + kMassTol.
struct DensityPiece {
    double lo = 0.0;
    double hi = 0.0;
    double height = 0.0;
};

struct DensitySpec {
    std::vector<DensityPiece> pieces;
};

double density_integral(const DensitySpec& d);

// Finite model of the density: grid atoms of width 1/atoms_per_unit at cell
// midpoints, each weighted by the exact integral of the density over its
// cell. Labels are the midpoints. Mass is preserved up to float rounding.
GroundSpace discretize(const DensitySpec& d, std::uint32_t atoms_per_unit);

enum class EpsMode {
    Aligned, // the tiling {[k*eps, (k+1)*eps)}
    Sliding, // one window [label, label+eps] per atom, duplicates removed
};

// Cover by intervals of length eps over the atom labels. Every atom is
// covered and each set spans less than eps plus grid tolerance. Atoms
// without labels raise a structural error.
Cover epsilon_cover(const GroundSpace& space, double eps, EpsMode mode);

// Variable-precision cover: left-to-right sweep over label-sorted atoms
// emitting maximal contiguous runs of mass <= max_mass; a run is extended
// backward over the last atom of its predecessor when the bound permits,
// so adjacent sets may overlap by one atom. Refuses when some single atom
// already weighs max_mass or more.
Cover quantile_cover(const GroundSpace& space, double max_mass);

} // namespace cvq
