// Copyright 2026 The congest-spanners Authors
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

#ifndef SPANNERS_PARAMS_HPP_
#define SPANNERS_PARAMS_HPP_

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace spanners {

enum class Algorithm { k2S, k2P, k4P, k4AP, k8AP, kSub2, kSub4 };

inline constexpr std::array<Algorithm, 7> kAllAlgorithms = {
    Algorithm::k2S,  Algorithm::k2P,  Algorithm::k4P,  Algorithm::k4AP,
    Algorithm::k8AP, Algorithm::kSub2, Algorithm::kSub4};

inline std::string_view algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::k2S: return "2S";
    case Algorithm::k2P: return "2P";
    case Algorithm::k4P: return "4P";
    case Algorithm::k4AP: return "4AP";
    case Algorithm::k8AP: return "8AP";
    case Algorithm::kSub2: return "SUB2";
    case Algorithm::kSub4: return "SUB4";
  }
  return "?";
}

/// Case-insensitive lookup of "2s", "4AP", "sub2", ...
inline std::optional<Algorithm> parse_algorithm(std::string_view text) {
  std::string upper(text);
  for (char& ch : upper) {
    ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  }
  for (Algorithm a : kAllAlgorithms) {
    if (algorithm_name(a) == upper) return a;
  }
  return std::nullopt;
}

/// Additive stretch guaranteed on the required pairs.
inline int additive_stretch(Algorithm a) {
  switch (a) {
    case Algorithm::k2S:
    case Algorithm::k2P:
    case Algorithm::kSub2:
      return 2;
    case Algorithm::k4P:
    case Algorithm::k4AP:
    case Algorithm::kSub4:
      return 4;
    case Algorithm::k8AP:
      return 8;
  }
  return 0;
}

enum class InputKind { kSources, kPairs, kNone };

inline InputKind input_kind(Algorithm a) {
  switch (a) {
    case Algorithm::k2S:
    case Algorithm::kSub2:
    case Algorithm::kSub4:
      return InputKind::kSources;
    case Algorithm::k2P:
    case Algorithm::k4P:
      return InputKind::kPairs;
    case Algorithm::k4AP:
    case Algorithm::k8AP:
      return InputKind::kNone;
  }
  return InputKind::kNone;
}

/// Test hooks. Unset fields use the derived values.
struct Overrides {
  std::optional<double> h;
  std::optional<double> ell;
  std::optional<double> center_probability;
  std::optional<double> root_probability;
  std::optional<double> a_probability;
  std::optional<double> threshold;
  /// Skip the small-input fallbacks and run the main pipeline.
  bool force_main_branch = false;
};

struct AlgoConfig {
  Algorithm algorithm = Algorithm::k2S;
  double c = 3.0;
  std::uint64_t seed = 1;
  std::uint32_t bandwidth_multiplier = 4;
  /// Per phase; 0 selects the executor default.
  std::uint64_t max_rounds = 0;
  bool trace = false;
  Overrides overrides;
};

inline double clamp_probability(double p) {
  if (std::isnan(p)) return 1.0;
  return std::clamp(p, 0.0, 1.0);
}

/// Sampling parameter h. size is |S| for 2S and |P| for 2P/4P; the
/// all-pairs algorithms depend on n alone. Natural log throughout.
inline double h_value(Algorithm a, double n, double size) {
  const double ln = std::log(n);
  switch (a) {
    case Algorithm::k2S:
      return std::pow(n * size, 0.25) * std::pow(ln, 0.75);
    case Algorithm::k4AP:
      return std::pow(n, 0.4) * std::pow(ln, 0.8);
    case Algorithm::k2P:
      return std::cbrt(size) * std::pow(ln, 2.0 / 3.0);
    case Algorithm::k4P:
      return std::pow(size, 2.0 / 7.0) * std::pow(ln, 6.0 / 7.0);
    case Algorithm::k8AP:
      return std::pow(n, 4.0 / 11.0) * std::pow(ln, 10.0 / 11.0);
    case Algorithm::kSub2:
    case Algorithm::kSub4:
      break;
  }
  return 0.0;
}

/// Everything a node derives locally once n and the input sizes are known.
struct Params {
  double n = 0;
  double h = 0;
  double ell = 0;
  /// Number of missing edges bought from each end, ceil(ell).
  std::uint32_t ell_edges = 0;
  double p_center = 1;
  double p_root = 1;
  double p_a = 1;
  /// Largest admissible number of missing edges on a bought path.
  double threshold = 0;
};

/// a must be one of the five base algorithms.
inline Params derive_params(Algorithm a, double c, double n, double size,
                            const Overrides& o = {}) {
  Params p;
  p.n = n;
  const double ln = std::log(n);
  p.h = o.h.value_or(h_value(a, n, size));
  p.ell = o.ell.value_or(p.h > 0 ? n * ln * ln * ln / std::pow(p.h, 2.5) : 0);
  p.ell_edges = static_cast<std::uint32_t>(std::ceil(std::max(0.0, p.ell)));
  p.p_center = clamp_probability(
      o.center_probability.value_or(p.h > 0 ? c * ln / p.h : 1.0));
  p.p_root = clamp_probability(
      o.root_probability.value_or(ln > 0 ? p.h * p.h / (c * n * ln) : 1.0));
  p.p_a = clamp_probability(
      o.a_probability.value_or(p.ell > 0 ? 16 * c * ln / p.ell : 1.0));
  p.threshold = o.threshold.value_or(
      p.h > 0 ? 2 * c * c * n * ln * ln / (p.h * p.h) : 0.0);
  return p;
}

}  // namespace spanners

#endif  // SPANNERS_PARAMS_HPP_
