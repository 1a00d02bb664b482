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

#include "cvq/entropy.hpp"

#include <cmath>
#include <sstream>

namespace cvq {

double shannon_fn(double x) {
    if (std::isnan(x) || x < -kMassTol || x > 1.0 + kMassTol) {
        std::ostringstream msg;
        msg << "shannon function argument " << x << " outside [0,1]";
        raise(ErrorKind::Domain, msg.str());
    }
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 0.0;
    double v = -x * std::log2(x);
    return v == 0.0 ? 0.0 : v; // normalize -0.0
}

double cell_entropy_sum(const GroundSpace& space, const std::vector<MSet>& cells) {
    double total = 0.0;
    for (const MSet& cell : cells) total += shannon_fn(mass(space, cell));
    return total;
}

EntropyValue partition_entropy(const GroundSpace& space, const Partition& p) {
    Diagnostics diag = is_partition(space, p);
    if (!diag.ok())
        raise(ErrorKind::Structural, "invalid partition: " + diag.joined());
    return EntropyValue::finite(cell_entropy_sum(space, p.cells));
}

} // namespace cvq
