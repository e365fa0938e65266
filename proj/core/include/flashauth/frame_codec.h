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

#ifndef FLASHAUTH_FRAME_CODEC_H_
#define FLASHAUTH_FRAME_CODEC_H_

// Security-frame codec: maps challenge classes onto the 7-flash (14-bit)
// headlight pattern and back.
//
// Frame layout, one symbol per flash, bits = (left headlight, right headlight):
//
//   [11] [00] [info] [00] [info] [00] [info]
//   preamble    payload: info symbols never 00, separated by 00 interrupts
//
// Frames are stored from the transmitter's (vehicle's) perspective. A camera
// facing the vehicle sees left and right swapped; see Mirror().

#include <array>
#include <cstdint>
#include <span>
#include <string>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"

namespace flashauth {

inline constexpr int kFrameSymbols = 7;
inline constexpr int kFrameBits = 2 * kFrameSymbols;
inline constexpr int kNumValidClasses = 27;
inline constexpr int kRandomFlashCode = 28;
inline constexpr int kAllZeroCode = 29;

struct Symbol {
  bool left = false;
  bool right = false;

  friend constexpr bool operator==(Symbol, Symbol) = default;

  // "10" means left on, right off.
  std::string ToString() const;
};

inline constexpr Symbol kBothOn{true, true};
inline constexpr Symbol kLeftOn{true, false};
inline constexpr Symbol kRightOn{false, true};
inline constexpr Symbol kDark{false, false};

using SymbolSequence = std::array<Symbol, kFrameSymbols>;

// A label produced by the LOS verifier: one of the 27 valid challenge
// classes, or a sentinel for non-conforming light activity (28) or no light
// at all (29).
class ClassLabel {
 public:
  enum class Kind { kValid, kRandomFlash, kAllZero };

  static absl::StatusOr<ClassLabel> Valid(int index);
  static absl::StatusOr<ClassLabel> FromCode(int code);
  static constexpr ClassLabel RandomFlash() {
    return ClassLabel(Kind::kRandomFlash, 0);
  }
  static constexpr ClassLabel AllZero() {
    return ClassLabel(Kind::kAllZero, 0);
  }

  Kind kind() const { return kind_; }
  bool is_valid() const { return kind_ == Kind::kValid; }
  // 1..27; zero for sentinels.
  int index() const { return index_; }
  int code() const;
  std::string ToString() const;

  friend bool operator==(const ClassLabel&, const ClassLabel&) = default;

 private:
  constexpr ClassLabel(Kind kind, int index) : kind_(kind), index_(index) {}

  Kind kind_;
  int index_;
};

// A sequence that satisfies every frame invariant. Construction is checked.
class SecurityFrame {
 public:
  static absl::StatusOr<SecurityFrame> FromSymbols(const SymbolSequence& seq);

  const SymbolSequence& symbols() const { return symbols_; }
  std::array<Symbol, 3> InfoSymbols() const {
    return {symbols_[2], symbols_[4], symbols_[6]};
  }
  // "11-00-10-00-10-00-01"
  std::string ToString() const;

  friend bool operator==(const SecurityFrame&, const SecurityFrame&) = default;

 private:
  explicit SecurityFrame(const SymbolSequence& seq) : symbols_(seq) {}

  SymbolSequence symbols_;
};

// Payload digit of an information symbol: 11 -> 0, 10 -> 1, 01 -> 2.
// Interrupt symbols (00) carry no digit.
absl::StatusOr<int> SymbolValue(Symbol s);

// index = 9*v(first) + 3*v(second) + v(third) + 1.
absl::StatusOr<SecurityFrame> EncodeClass(int index);
SecurityFrame EncodeClass(const ClassLabel& valid_label);

// Total: every 7-symbol sequence maps to a label.
ClassLabel DecodeSymbols(const SymbolSequence& seq);

// Swaps left/right in every symbol (the camera's view of the vehicle).
constexpr Symbol Mirror(Symbol s) { return Symbol{s.right, s.left}; }
SymbolSequence Mirror(const SymbolSequence& seq);
SecurityFrame Mirror(const SecurityFrame& frame);

bool SatisfiesFrameInvariants(const SymbolSequence& seq);

std::string FormatSymbols(std::span<const Symbol> symbols);
absl::StatusOr<SymbolSequence> ParseSymbols(absl::string_view text);

}  // namespace flashauth

#endif  // FLASHAUTH_FRAME_CODEC_H_
