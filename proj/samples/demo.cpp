// Copyright 2026 The qnash Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Walks through the three solvers on small instances and prints how many
// entries each one read.

#include <iostream>

#include "qnash/qnash.hpp"

using namespace qnash;

int main() {
  Rng rng(2026);

  // A 64 x 64 matrix with a planted strict saddle point.
  const Instance planted = gen_planted_psne(64, 10, 41, rng);
  {
    Oracle<Rational> oracle(planted.matrix);
    const Cell c = swordfish(oracle);
    std::cout << "swordfish: saddle at (" << to_external(c.row) << "," << to_external(c.col)
              << ") after " << oracle.distinct_query_count() << " of " << 64 * 64
              << " entries (bound " << swordfish_query_bound(64) << ")\n";
  }
  {
    Oracle<Rational> oracle(planted.matrix);
    const Cell c = find_psne(oracle, 0.1, rng).cell;
    std::cout << "halving search: saddle at (" << to_external(c.row) << "," << to_external(c.col)
              << ") after " << oracle.distinct_query_count() << " entries\n";
  }

  // A fully mixed equilibrium: I + E_{1,2}/2 on three actions.
  const Instance mixed = gen_identity_perturbed(3, 0, 1);
  Oracle<Rational> oracle(mixed.matrix);
  const auto result = find_unique_nash(oracle, rng);
  std::cout << "exact equilibrium:\n" << certificate_json(result.certificate).dump(2) << '\n';
  return 0;
}
