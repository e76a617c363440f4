// Copyright 2026 The dpdm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <span>

#include "dpdm/graph.hpp"

namespace dpdm {

enum class ScoreKind { kLinear };

// Privacy parameter and score-domain bounds. For the linear score the
// global sensitivity equals v_max.
struct ScoreConfig {
  double epsilon = 0.1;
  double v_max = 100.0;
  ScoreKind score_kind = ScoreKind::kLinear;

  // Throws std::invalid_argument on epsilon < 0, v_max <= 0, or
  // epsilon * v_max > 700 (overflow guard in natural-log units).
  void validate() const;

  double sensitivity() const { return v_max; }
};

// Linear score: sigma(theta, o_i) = v_i'.
double score(const Profile& profile);

// epsilon * sigma, the natural log of one Exp(.) summand.
double log_score(const Profile& profile, const ScoreConfig& cfg);

// log(sum_k exp(values[k])) with max-shift. Throws std::domain_error on
// an empty list.
double log_sum_exp(std::span<const double> values);

// log(exp(la) - exp(lb)), requires la > lb.
double log_diff_exp(double la, double lb);

// exp(log_num - log_den) as a probability; overshoot beyond 1 + 1e-12 is
// an internal-consistency error, smaller overshoot is clamped to 1.
double exp_ratio(double log_num, double log_den);

}  // namespace dpdm
