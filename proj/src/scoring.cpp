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

#include "dpdm/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dpdm {

void ScoreConfig::validate() const {
  if (epsilon < 0.0) throw std::invalid_argument("epsilon must be >= 0");
  if (v_max <= 0.0) throw std::invalid_argument("v_max must be > 0");
  if (epsilon * v_max > 700.0) {
    throw std::invalid_argument(
        "epsilon * v_max exceeds 700; scores would overflow double range");
  }
}

double score(const Profile& profile) { return profile.valuation; }

double log_score(const Profile& profile, const ScoreConfig& cfg) {
  return cfg.epsilon * score(profile);
}

double log_sum_exp(std::span<const double> values) {
  if (values.empty()) {
    throw std::domain_error("log_sum_exp of an empty list is undefined");
  }
  double m = *std::max_element(values.begin(), values.end());
  double sum = 0.0;
  for (double v : values) sum += std::exp(v - m);
  return m + std::log(sum);
}

double log_diff_exp(double la, double lb) {
  if (!(la > lb)) {
    throw std::domain_error("log_diff_exp requires la > lb");
  }
  return la + std::log1p(-std::exp(lb - la));
}

double exp_ratio(double log_num, double log_den) {
  double r = std::exp(log_num - log_den);
  if (r > 1.0 + 1e-12) {
    throw std::logic_error("probability ratio exceeds 1: " +
                           std::to_string(r));
  }
  return std::min(r, 1.0);
}

}  // namespace dpdm
