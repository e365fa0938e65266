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

#include "flashauth/reference_decoder.h"

#include <algorithm>
#include <array>
#include <cmath>

#include "absl/strings/str_format.h"

namespace flashauth {
namespace {

constexpr double kTimeTol = 1e-9;

struct SlotReading {
  double left = 0.0;
  double right = 0.0;
  bool has_data = false;
};

using SlotReadings = std::array<SlotReading, kFrameSymbols>;

double TrimmedMean(std::vector<double>& values) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  size_t lo = 0;
  size_t hi = values.size();
  if (values.size() >= 3) {
    ++lo;
    --hi;
  }
  double sum = 0.0;
  for (size_t i = lo; i < hi; ++i) sum += values[i];
  return sum / static_cast<double>(hi - lo);
}

SlotReading ReadSlot(const LuminanceTrace& trace, double t0, double t1) {
  const double period = trace.FramePeriod();
  std::vector<double> left;
  std::vector<double> right;
  // Frames whose exposure lies inside the slot; fall back to majority overlap.
  for (int pass = 0; pass < 2 && left.empty(); ++pass) {
    const int first = std::max(0, static_cast<int>(std::floor(
                                      (t0 - period) / period)));
    const int last = std::min(static_cast<int>(trace.frames.size()) - 1,
                              static_cast<int>(std::ceil(t1 / period)));
    for (int k = first; k <= last; ++k) {
      const TraceFrame& f = trace.frames[k];
      if (f.dropped) continue;
      const double e0 = f.timestamp_s;
      const double e1 = e0 + period;
      bool take;
      if (pass == 0) {
        take = e0 >= t0 - kTimeTol && e1 <= t1 + kTimeTol;
      } else {
        const double overlap = std::min(e1, t1) - std::max(e0, t0);
        take = overlap >= 0.5 * period - kTimeTol;
      }
      if (take) {
        left.push_back(f.left);
        right.push_back(f.right);
      }
    }
  }
  SlotReading r;
  r.has_data = !left.empty();
  r.left = TrimmedMean(left);
  r.right = TrimmedMean(right);
  return r;
}

SlotReadings ReadSlots(const LuminanceTrace& trace, double start,
                       double flash_s) {
  SlotReadings readings;
  for (int j = 0; j < kFrameSymbols; ++j) {
    readings[j] = ReadSlot(trace, start + j * flash_s,
                           start + (j + 1) * flash_s);
  }
  return readings;
}

// Ties at the threshold read as off.
Symbol ToSymbol(const SlotReading& r, double threshold) {
  return Symbol{r.has_data && r.left > threshold,
                r.has_data && r.right > threshold};
}

SymbolSequence ToSymbols(const SlotReadings& readings, double threshold) {
  SymbolSequence seq;
  for (int j = 0; j < kFrameSymbols; ++j) {
    seq[j] = ToSymbol(readings[j], threshold);
  }
  return seq;
}

// Agreement of the slot readings with the frame structure, in [0, 1]:
// slot 0 both on, slots 1/3/5 dark, slots 2/4/6 carrying light.
double StructureScore(const SlotReadings& readings,
                      const ThresholdEstimate& est) {
  const double span = std::max(est.high_mean - est.low_mean, 1e-12);
  auto on = [&](double x) {
    return std::clamp((x - est.low_mean) / span, 0.0, 1.0);
  };
  double score = 0.0;
  for (int j = 0; j < kFrameSymbols; ++j) {
    const SlotReading& r = readings[j];
    if (!r.has_data) continue;
    const double lo = std::min(on(r.left), on(r.right));
    const double hi = std::max(on(r.left), on(r.right));
    if (j == 0) {
      score += lo;
    } else if (j % 2 == 1) {
      score += 1.0 - hi;
    } else {
      score += hi;
    }
  }
  return score / kFrameSymbols;
}

double Pearson(const std::vector<double>& x, const std::vector<double>& y) {
  const size_t n = x.size();
  if (n == 0) return 0.0;
  double mx = 0.0;
  double my = 0.0;
  for (size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (size_t i = 0; i < n; ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx <= 1e-18 || syy <= 1e-18) return 0.0;
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

double Median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  const size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + mid, v.end());
  return v[mid];
}

struct Alignment {
  double start = 0.0;
  double score = -1.0;
  bool candidate = false;
};

std::vector<Alignment> ScanAlignments(const LuminanceTrace& trace,
                                      double flash_s,
                                      const ThresholdEstimate& est,
                                      const DecoderOptions& options) {
  std::vector<Alignment> scan;
  const double step = options.step_fraction * trace.FramePeriod();
  const double limit = options.search_fraction * trace.Duration();
  for (int i = 0; i * step <= limit + kTimeTol; ++i) {
    Alignment a;
    a.start = i * step;
    const SlotReadings readings = ReadSlots(trace, a.start, flash_s);
    a.score = StructureScore(readings, est);
    a.candidate = ToSymbol(readings[0], est.threshold) == kBothOn &&
                  ToSymbol(readings[1], est.threshold) == kDark;
    scan.push_back(a);
  }
  return scan;
}

// Centre of the first run of best-scoring entries satisfying `eligible`.
template <typename Pred>
std::optional<double> BestAlignment(const std::vector<Alignment>& scan,
                                    Pred eligible) {
  double best = -1.0;
  for (const auto& a : scan) {
    if (eligible(a)) best = std::max(best, a.score);
  }
  if (best < 0) return std::nullopt;
  constexpr double kScoreTol = 1e-9;
  size_t first = 0;
  while (!(eligible(scan[first]) && scan[first].score >= best - kScoreTol)) {
    ++first;
  }
  size_t last = first;
  while (last + 1 < scan.size() && eligible(scan[last + 1]) &&
         scan[last + 1].score >= best - kScoreTol) {
    ++last;
  }
  return 0.5 * (scan[first].start + scan[last].start);
}

}  // namespace

ThresholdEstimate EstimateThreshold(const LuminanceTrace& trace,
                                    const DecoderOptions& options) {
  std::vector<double> values;
  std::vector<double> diffs;
  std::vector<double> lr_diffs;
  const TraceFrame* prev = nullptr;
  for (const auto& f : trace.frames) {
    if (f.dropped) continue;
    values.push_back(f.left);
    values.push_back(f.right);
    lr_diffs.push_back(std::abs(f.left - f.right));
    if (prev != nullptr) {
      diffs.push_back(std::abs(f.left - prev->left));
      diffs.push_back(std::abs(f.right - prev->right));
    }
    prev = &f;
  }
  ThresholdEstimate est;
  if (values.empty()) return est;

  // Robust per-frame noise from two difference signals, each carrying
  // sqrt(2) sigma: consecutive frames (inflated by fast toggling) and left
  // minus right (inflated by asymmetric symbols). Signal only ever inflates
  // either estimate, so the smaller one is kept.
  const double k = 1.4826 / std::sqrt(2.0);
  est.noise_sigma = k * std::min(diffs.empty() ? Median(lr_diffs)
                                               : Median(diffs),
                                 Median(lr_diffs));

  auto [min_it, max_it] = std::minmax_element(values.begin(), values.end());
  double lo = *min_it;
  double hi = *max_it;
  double threshold = 0.5 * (lo + hi);
  for (int iter = 0; iter < 100 && hi > lo; ++iter) {
    double sum_lo = 0.0;
    double sum_hi = 0.0;
    int n_lo = 0;
    int n_hi = 0;
    for (double v : values) {
      if (v > threshold) {
        sum_hi += v;
        ++n_hi;
      } else {
        sum_lo += v;
        ++n_lo;
      }
    }
    if (n_lo == 0 || n_hi == 0) break;
    lo = sum_lo / n_lo;
    hi = sum_hi / n_hi;
    const double next = 0.5 * (lo + hi);
    if (next == threshold) break;
    threshold = next;
  }
  est.low_mean = lo;
  est.high_mean = hi;
  est.threshold = 0.5 * (lo + hi);
  const double gap = hi - lo;
  est.all_off = gap < options.all_off_epsilon ||
                gap < options.noise_gap_factor * est.noise_sigma;
  return est;
}

std::optional<double> FindPreamble(const LuminanceTrace& trace,
                                   double flash_s,
                                   const DecoderOptions& options) {
  const ThresholdEstimate est = EstimateThreshold(trace, options);
  if (est.all_off) return std::nullopt;
  const auto scan = ScanAlignments(trace, flash_s, est, options);
  return BestAlignment(scan, [](const Alignment& a) { return a.candidate; });
}

std::string DecodeResult::CsvHeader() { return "label_code,score,alignment_s"; }

std::string DecodeResult::ToCsvRow() const {
  return absl::StrFormat("%d,%.6f,%.6f", label.code(), score,
                         slot_alignment_s);
}

DecodeResult Decode(const LuminanceTrace& trace, double flash_s,
                    bool mirror_view, const DecoderOptions& options) {
  DecodeResult result;
  result.per_slot_symbols.fill(kDark);
  const ThresholdEstimate est = EstimateThreshold(trace, options);
  if (est.all_off) {
    result.label = DecodeSymbols(result.per_slot_symbols);
    return result;
  }
  const auto scan = ScanAlignments(trace, flash_s, est, options);
  std::optional<double> start =
      BestAlignment(scan, [](const Alignment& a) { return a.candidate; });
  result.preamble_found = start.has_value();
  if (!start) {
    // No preamble: read the most frame-like window so the symbols still
    // describe the observed activity.
    start = BestAlignment(scan, [](const Alignment&) { return true; });
  }
  result.slot_alignment_s = start.value_or(0.0);
  const SlotReadings readings =
      ReadSlots(trace, result.slot_alignment_s, flash_s);
  result.per_slot_symbols = ToSymbols(readings, est.threshold);
  result.label = DecodeSymbols(mirror_view ? Mirror(result.per_slot_symbols)
                                           : result.per_slot_symbols);

  std::vector<double> observed;
  std::vector<double> bits;
  for (int j = 0; j < kFrameSymbols; ++j) {
    observed.push_back(readings[j].left);
    observed.push_back(readings[j].right);
    bits.push_back(result.per_slot_symbols[j].left ? 1.0 : 0.0);
    bits.push_back(result.per_slot_symbols[j].right ? 1.0 : 0.0);
  }
  result.score = Pearson(observed, bits);
  return result;
}

std::vector<std::pair<ClassLabel, double>> TemplateCorrelate(
    const LuminanceTrace& trace, double flash_s, double search_fraction) {
  std::vector<double> observed;
  std::vector<int> frame_index;
  for (size_t k = 0; k < trace.frames.size(); ++k) {
    if (trace.frames[k].dropped) continue;
    frame_index.push_back(static_cast<int>(k));
  }
  for (int k : frame_index) observed.push_back(trace.frames[k].left);
  for (int k : frame_index) observed.push_back(trace.frames[k].right);

  std::vector<double> best(kNumValidClasses + 1, -1.0);
  const double period = trace.FramePeriod();
  const double step = period / 8.0;
  const double limit = search_fraction * trace.Duration();
  const int n = static_cast<int>(frame_index.size());
  std::vector<std::array<double, kFrameSymbols>> slot_fraction(n);
  std::vector<double> tmpl(2 * n);
  std::vector<SymbolSequence> frames;
  for (int c = 1; c <= kNumValidClasses; ++c) {
    frames.push_back(EncodeClass(c)->symbols());
  }
  for (int i = 0; i * step <= limit + kTimeTol; ++i) {
    const double start = i * step;
    for (int m = 0; m < n; ++m) {
      const double e0 = trace.frames[frame_index[m]].timestamp_s;
      for (int j = 0; j < kFrameSymbols; ++j) {
        const double s0 = start + j * flash_s;
        const double overlap =
            std::min(e0 + period, s0 + flash_s) - std::max(e0, s0);
        slot_fraction[m][j] = std::max(0.0, overlap) / period;
      }
    }
    for (int c = 1; c <= kNumValidClasses; ++c) {
      const SymbolSequence& seq = frames[c - 1];
      for (int m = 0; m < n; ++m) {
        double l = 0.0;
        double r = 0.0;
        for (int j = 0; j < kFrameSymbols; ++j) {
          if (seq[j].left) l += slot_fraction[m][j];
          if (seq[j].right) r += slot_fraction[m][j];
        }
        tmpl[m] = l;
        tmpl[n + m] = r;
      }
      best[c] = std::max(best[c], Pearson(observed, tmpl));
    }
  }

  std::vector<std::pair<ClassLabel, double>> ranked;
  ranked.emplace_back(ClassLabel::AllZero(), kAllZeroTemplateScore);
  for (int c = 1; c <= kNumValidClasses; ++c) {
    ranked.emplace_back(*ClassLabel::Valid(c), best[c]);
  }
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) {
                     if (a.second != b.second) return a.second > b.second;
                     return a.first.code() < b.first.code();
                   });
  return ranked;
}

}  // namespace flashauth
