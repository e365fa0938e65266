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

#ifndef FLASHAUTH_KEYED_HASH_H_
#define FLASHAUTH_KEYED_HASH_H_

#include <array>
#include <cstdint>
#include <span>
#include <string>

#include "absl/strings/string_view.h"

namespace flashauth {

using Key256 = std::array<uint8_t, 32>;
using Tag256 = std::array<uint8_t, 32>;

// HMAC-SHA256 of `message` under `key`. Stand-in for the credential
// signatures of a real PKI.
Tag256 KeyedHash(std::span<const uint8_t> key, absl::string_view message);

// Constant-time comparison.
bool TagsEqual(const Tag256& a, const Tag256& b);

std::string ToHex(std::span<const uint8_t> bytes);

}  // namespace flashauth

#endif  // FLASHAUTH_KEYED_HASH_H_
