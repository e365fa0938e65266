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

#include "flashauth/frame_codec.h"

#include <vector>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "absl/strings/str_split.h"

namespace flashauth {
namespace {

constexpr std::array<Symbol, 3> kDigitSymbols = {kBothOn, kLeftOn, kRightOn};

bool IsInfo(Symbol s) { return s != kDark; }

}  // namespace

std::string Symbol::ToString() const {
  return std::string{left ? '1' : '0', right ? '1' : '0'};
}

absl::StatusOr<ClassLabel> ClassLabel::Valid(int index) {
  if (index < 1 || index > kNumValidClasses) {
    return absl::OutOfRangeError(
        absl::StrCat("class index ", index, " outside 1..27"));
  }
  return ClassLabel(Kind::kValid, index);
}

absl::StatusOr<ClassLabel> ClassLabel::FromCode(int code) {
  if (code == kRandomFlashCode) return RandomFlash();
  if (code == kAllZeroCode) return AllZero();
  return Valid(code);
}

int ClassLabel::code() const {
  switch (kind_) {
    case Kind::kValid:
      return index_;
    case Kind::kRandomFlash:
      return kRandomFlashCode;
    case Kind::kAllZero:
      return kAllZeroCode;
  }
  return 0;
}

std::string ClassLabel::ToString() const {
  switch (kind_) {
    case Kind::kValid:
      return absl::StrCat("class_", index_);
    case Kind::kRandomFlash:
      return "random_flash";
    case Kind::kAllZero:
      return "all_zero";
  }
  return "?";
}

bool SatisfiesFrameInvariants(const SymbolSequence& seq) {
  return seq[0] == kBothOn && seq[1] == kDark && seq[3] == kDark &&
         seq[5] == kDark && IsInfo(seq[2]) && IsInfo(seq[4]) &&
         IsInfo(seq[6]);
}

absl::StatusOr<SecurityFrame> SecurityFrame::FromSymbols(
    const SymbolSequence& seq) {
  if (!SatisfiesFrameInvariants(seq)) {
    return absl::InvalidArgumentError(
        absl::StrCat("not a security frame: ", FormatSymbols(seq)));
  }
  return SecurityFrame(seq);
}

std::string SecurityFrame::ToString() const { return FormatSymbols(symbols_); }

absl::StatusOr<int> SymbolValue(Symbol s) {
  for (int v = 0; v < 3; ++v) {
    if (kDigitSymbols[v] == s) return v;
  }
  return absl::InvalidArgumentError("interrupt symbol 00 carries no digit");
}

absl::StatusOr<SecurityFrame> EncodeClass(int index) {
  auto label = ClassLabel::Valid(index);
  if (!label.ok()) return label.status();
  return EncodeClass(*label);
}

SecurityFrame EncodeClass(const ClassLabel& valid_label) {
  const int n = valid_label.index() - 1;
  const SymbolSequence seq = {kBothOn,
                              kDark,
                              kDigitSymbols[n / 9],
                              kDark,
                              kDigitSymbols[(n / 3) % 3],
                              kDark,
                              kDigitSymbols[n % 3]};
  return *SecurityFrame::FromSymbols(seq);
}

ClassLabel DecodeSymbols(const SymbolSequence& seq) {
  bool all_dark = true;
  for (Symbol s : seq) all_dark = all_dark && s == kDark;
  if (all_dark) return ClassLabel::AllZero();
  if (!SatisfiesFrameInvariants(seq)) return ClassLabel::RandomFlash();
  const int index = 9 * *SymbolValue(seq[2]) + 3 * *SymbolValue(seq[4]) +
                    *SymbolValue(seq[6]) + 1;
  return *ClassLabel::Valid(index);
}

SymbolSequence Mirror(const SymbolSequence& seq) {
  SymbolSequence out;
  for (size_t i = 0; i < seq.size(); ++i) out[i] = Mirror(seq[i]);
  return out;
}

SecurityFrame Mirror(const SecurityFrame& frame) {
  // Mirroring preserves every invariant: 11 and 00 are fixed points and
  // 10/01 stay non-zero.
  return *SecurityFrame::FromSymbols(Mirror(frame.symbols()));
}

std::string FormatSymbols(std::span<const Symbol> symbols) {
  return absl::StrJoin(symbols, "-", [](std::string* out, Symbol s) {
    out->append(s.ToString());
  });
}

absl::StatusOr<SymbolSequence> ParseSymbols(absl::string_view text) {
  std::vector<absl::string_view> parts = absl::StrSplit(text, '-');
  if (parts.size() != kFrameSymbols) {
    return absl::InvalidArgumentError(
        absl::StrCat("expected 7 symbols, got ", parts.size()));
  }
  SymbolSequence seq;
  for (size_t i = 0; i < parts.size(); ++i) {
    const absl::string_view p = parts[i];
    if (p.size() != 2 || (p[0] != '0' && p[0] != '1') ||
        (p[1] != '0' && p[1] != '1')) {
      return absl::InvalidArgumentError(absl::StrCat("bad symbol '", p, "'"));
    }
    seq[i] = Symbol{p[0] == '1', p[1] == '1'};
  }
  return seq;
}

}  // namespace flashauth
