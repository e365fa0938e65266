// Copyright 2026 The flashauth Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "flashauth/rng.h"

#include <cmath>
#include <numbers>

namespace flashauth {

uint64_t DeriveSeed(uint64_t seed, uint64_t stream) {
  return Mix64(seed ^ Mix64(stream * 0xd1b54a32d192ed03ULL + 1));
}

uint64_t CounterRng::Bits(uint64_t stream, uint64_t counter) const {
  return Mix64(DeriveSeed(seed_, stream) ^ Mix64(counter));
}

double CounterRng::Uniform(uint64_t stream, uint64_t counter) const {
  return static_cast<double>(Bits(stream, counter) >> 11) * 0x1.0p-53;
}

double CounterRng::Normal(uint64_t stream, uint64_t counter) const {
  const double u1 = 1.0 - Uniform(stream, 2 * counter);  // (0, 1]
  const double u2 = Uniform(stream, 2 * counter + 1);
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace flashauth
