// Copyright 2026 The celltwin Authors
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

#pragma once

#include <vector>

namespace celltwin::sim {

struct KsTest {
  double d = 0.0;  // sup |F_a - F_b|
  double p = 1.0;  // asymptotic two-sample p-value
};

/// Two-sample Kolmogorov-Smirnov test. D is the exact sup-difference of the
/// empirical CDFs; the p-value uses the asymptotic Kolmogorov series with
/// effective size n_e = |a||b|/(|a|+|b|), truncated below 1e-12 and clamped
/// to [0, 1].
KsTest ks_two_sample(std::vector<double> a, std::vector<double> b);

double median(std::vector<double> values);

}  // namespace celltwin::sim
