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

// Base-2 entropy amount. Finite partitions always produce finite values;
// the infinite marker exists only so reports can express the full range.
struct EntropyValue {
    double bits = 0.0;
    bool infinite = false;

    static EntropyValue finite(double b) { return {b, false}; }
    static EntropyValue inf() { return {0.0, true}; }
};

// sh(x) = -x * log2(x) for x in (0,1], sh(0) = 0. Arguments outside [0,1]
// by more than kMassTol raise a domain error; within the tolerance they are
// clamped.
double shannon_fn(double x);

// h(mu; P) = sum of sh(mass(cell)) over cells, accumulated in cell order.
// The partition must pass is_partition; otherwise a structural error is raised.
EntropyValue partition_entropy(const GroundSpace& space, const Partition& p);

// Same sum without the validity check, for callers that already hold a
// partition by construction (search internals, generators).
double cell_entropy_sum(const GroundSpace& space, const std::vector<MSet>& cells);

} // namespace cvq
