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

#ifndef FLASHAUTH_RNG_H_
#define FLASHAUTH_RNG_H_

#include <cstdint>

namespace flashauth {

// SplitMix64 finalizer. Bijective on 64-bit words.
constexpr uint64_t Mix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Derives an independent child seed for `stream` from `seed`. Used to split a
// master seed into per-trial, per-vehicle and per-purpose seeds.
uint64_t DeriveSeed(uint64_t seed, uint64_t stream);

// Counter-based random source: every draw is a pure function of
// (seed, stream, counter), so values do not depend on draw order.
class CounterRng {
 public:
  explicit CounterRng(uint64_t seed) : seed_(seed) {}

  uint64_t Bits(uint64_t stream, uint64_t counter) const;
  // Uniform in [0, 1).
  double Uniform(uint64_t stream, uint64_t counter) const;
  // Standard normal via Box-Muller on two uniforms drawn at (counter, 0/1).
  double Normal(uint64_t stream, uint64_t counter) const;

  uint64_t seed() const { return seed_; }

 private:
  uint64_t seed_;
};

}  // namespace flashauth

#endif  // FLASHAUTH_RNG_H_
