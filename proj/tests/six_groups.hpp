/*
 * Copyright 2026 The bridgewatch Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Six tight, well separated groups; groups 3 and 5 hold two points and
// group 6 holds four.

#ifndef BRIDGEWATCH_TESTS_SIX_GROUPS_HPP_
#define BRIDGEWATCH_TESTS_SIX_GROUPS_HPP_

#include <vector>

namespace bridgewatch::fixture {

struct GroupedPoints {
  std::vector<std::vector<double>> rows;
  std::vector<int> group;  // 1-based group of each row
};

inline GroupedPoints SixGroups() {
  const int sizes[6] = {5, 6, 2, 5, 2, 4};
  const double centers[6][2] = {{0, 0}, {10, 0}, {20, 0}, {0, 10}, {10, 10}, {20, 10}};
  const double offsets[6][2] = {{0, 0},    {0.1, 0},    {0, 0.1},
                                {-0.1, 0}, {0, -0.1},   {0.07, 0.07}};
  GroupedPoints out;
  for (int g = 0; g < 6; ++g) {
    for (int i = 0; i < sizes[g]; ++i) {
      out.rows.push_back({centers[g][0] + offsets[i][0], centers[g][1] + offsets[i][1]});
      out.group.push_back(g + 1);
    }
  }
  return out;
}

inline constexpr double kSixGroupsEps = 0.5;

}  // namespace bridgewatch::fixture

#endif  // BRIDGEWATCH_TESTS_SIX_GROUPS_HPP_
