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

#include "celltwin/stats.hpp"

#include <algorithm>
#include <cmath>

#include "celltwin/util.hpp"

namespace celltwin::sim {

KsTest ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw ValidationError("ks_two_sample: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());

  // Merge walk over the pooled order statistics; at ties both CDFs step
  // before the difference is taken.
  double d = 0.0;
  std::size_t ia = 0, ib = 0;
  while (ia < a.size() && ib < b.size()) {
    const double x = std::min(a[ia], b[ib]);
    while (ia < a.size() && a[ia] <= x) ++ia;
    while (ib < b.size() && b[ib] <= x) ++ib;
    d = std::max(d, std::abs(static_cast<double>(ia) / na - static_cast<double>(ib) / nb));
  }
  // The tail beyond the shorter sample only shrinks the difference.

  KsTest out;
  out.d = d;
  const double ne = na * nb / (na + nb);
  const double lambda2 = ne * d * d;
  if (lambda2 <= 1e-18) {
    out.p = 1.0;
    return out;
  }
  double sum = 0.0;
  for (int k = 1; k <= 1000000; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda2);
    if (term < 1e-12) break;
    sum += (k % 2 == 1) ? term : -term;
  }
  out.p = std::clamp(2.0 * sum, 0.0, 1.0);
  return out;
}

double median(std::vector<double> values) {
  if (values.empty()) throw ValidationError("median: empty input");
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

}  // namespace celltwin::sim
