// Copyright 2026 The haarcg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "haarcg/repcore.hpp"

#include <cmath>

#include "gtest/gtest.h"

#include "haarcg/errors.hpp"

using namespace haarcg;

namespace {

GTPattern pat(std::vector<std::vector<int>> rows) { return GTPattern{std::move(rows)}; }

HighestWeight padded(const std::vector<int> &parts, int d) {
    std::vector<int> e(static_cast<std::size_t>(d), 0);
    std::copy(parts.begin(), parts.end(), e.begin());
    return HighestWeight(e);
}

std::uint64_t factorial(int n) { return n <= 1 ? 1 : static_cast<std::uint64_t>(n) * factorial(n - 1); }

const GTPattern kWorked = pat({{0}, {2, 0}, {2, 0, 0}, {2, 1, 0, 0}, {3, 2, 0, 0, 0}});

}  // namespace

TEST(repcore, validate_gt) {
    EXPECT_TRUE(validate_gt(pat({{0}, {2, 0}})));
    EXPECT_FALSE(validate_gt(pat({{3}, {2, 0}})));
    EXPECT_TRUE(validate_gt(kWorked));
    EXPECT_TRUE(validate_gt(pat({{-1}, {0, -1}})));
    try {
        validate_gt(pat({{0}, {1, 0, 0}}));
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::kShapeError);
    }
}

TEST(repcore, highest_weight_rejects_increasing_entries) {
    EXPECT_THROW(HighestWeight({0, 1}), Error);
    EXPECT_TRUE(HighestWeight({2, 0}).is_young_diagram());
    EXPECT_FALSE(HighestWeight({0, -1}).is_young_diagram());
}

TEST(repcore, weyl_dimension) {
    EXPECT_EQ(weyl_dimension(HighestWeight({1, 0})), 2u);
    EXPECT_EQ(weyl_dimension(HighestWeight({2, 0})), 3u);
    EXPECT_EQ(weyl_dimension(HighestWeight({2, 1, 0})), 8u);
    EXPECT_EQ(weyl_dimension(HighestWeight({0, -1})), 2u);
    EXPECT_EQ(weyl_dimension(HighestWeight({0})), 1u);
}

TEST(repcore, enumerate_gt_examples) {
    const auto two = enumerate_gt(HighestWeight({1, 0}));
    ASSERT_EQ(two.size(), 2u);
    EXPECT_EQ(two[0], pat({{0}, {1, 0}}));
    EXPECT_EQ(two[1], pat({{1}, {1, 0}}));

    const auto three = enumerate_gt(HighestWeight({2, 0}));
    ASSERT_EQ(three.size(), 3u);
    for (int i = 0; i < 3; ++i) EXPECT_EQ(three[static_cast<std::size_t>(i)].rows[0][0], i);

    const auto one = enumerate_gt(HighestWeight({0}));
    ASSERT_EQ(one.size(), 1u);
    EXPECT_EQ(one[0], pat({{0}}));
}

TEST(repcore, enumerate_gt_cap) {
    try {
        enumerate_gt(HighestWeight({3, 1, 0, 0}), 10);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::kCapExceeded);
    }
}

TEST(repcore, pattern_count_matches_weyl_dimension) {
    for (int d = 1; d <= 5; ++d) {
        for (int t = 0; t <= 4; ++t) {
            for (const auto &parts : partitions(t, d)) {
                const HighestWeight hw = padded(parts, d);
                const auto pats = enumerate_gt(hw);
                EXPECT_EQ(pats.size(), weyl_dimension(hw)) << to_string(hw);
                EXPECT_TRUE(std::is_sorted(pats.begin(), pats.end()));
                for (const auto &p : pats) {
                    EXPECT_TRUE(validate_gt(p));
                    const auto w = weight_of(p);
                    int s = 0;
                    for (int v : w) s += v;
                    EXPECT_EQ(s, t);
                }
            }
        }
    }
    // Mixed weights.
    for (const auto &e : std::vector<std::vector<int>>{{0, -1}, {1, 0, -1}, {0, 0, -2}, {2, -1, -1}}) {
        const HighestWeight hw(e);
        EXPECT_EQ(enumerate_gt(hw).size(), weyl_dimension(hw)) << to_string(hw);
    }
}

TEST(repcore, add_and_remove_box) {
    EXPECT_EQ(add_box(HighestWeight({1, 0}), 1), HighestWeight({2, 0}));
    EXPECT_EQ(add_box(HighestWeight({1, 0}), 2), HighestWeight({1, 1}));
    try {
        add_box(HighestWeight({1, 1}), 2);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::kInvalidBox);
    }
    EXPECT_EQ(remove_box(HighestWeight({1, 0}), 2), HighestWeight({1, -1}));
    EXPECT_THROW(remove_box(HighestWeight({1, 1}), 1), Error);
}

TEST(repcore, weight_of) {
    EXPECT_EQ(weight_of(pat({{0}, {2, 0}})), (std::vector<int>{0, 2}));
    EXPECT_EQ(weight_of(kWorked), (std::vector<int>{0, 2, 0, 1, 2}));
    EXPECT_EQ(weight_of(pat({{1}, {1, 0}})), (std::vector<int>{1, 0}));
}

TEST(repcore, enumerate_paths) {
    EXPECT_EQ(enumerate_paths(2, HighestWeight({2, 0})).size(), 1u);
    EXPECT_EQ(enumerate_paths(2, HighestWeight({1, 1})).size(), 1u);
    const auto paths = enumerate_paths(3, HighestWeight({2, 1, 0}));
    ASSERT_EQ(paths.size(), 2u);
    for (const auto &p : paths) {
        ASSERT_EQ(p.diagrams.size(), 4u);
        EXPECT_EQ(p.diagrams.front(), HighestWeight::zero(3));
        EXPECT_EQ(p.diagrams.back(), HighestWeight({2, 1, 0}));
    }
}

TEST(repcore, schur_weyl_dimension_count) {
    for (int d = 1; d <= 4; ++d) {
        for (int t = 0; t <= 4; ++t) {
            std::uint64_t total = 0;
            for (const auto &parts : partitions(t, d)) {
                const HighestWeight hw = padded(parts, d);
                total += weyl_dimension(hw) * enumerate_paths(t, hw).size();
            }
            EXPECT_EQ(total, static_cast<std::uint64_t>(std::pow(d, t))) << "d=" << d << " t=" << t;
        }
    }
}

TEST(repcore, path_count_matches_hook_length) {
    for (int t = 1; t <= 5; ++t) {
        for (const auto &parts : partitions(t, t)) {
            std::uint64_t hooks = 1;
            for (std::size_t i = 0; i < parts.size(); ++i) {
                for (int j = 0; j < parts[i]; ++j) {
                    int below = 0;
                    for (std::size_t k = i + 1; k < parts.size() && parts[k] > j; ++k) ++below;
                    hooks *= static_cast<std::uint64_t>(parts[i] - j + below);
                }
            }
            EXPECT_EQ(enumerate_paths(t, padded(parts, t)).size(), factorial(t) / hooks);
        }
    }
}

TEST(repcore, dimension_ratio_is_independent_of_padding) {
    for (int d = 1; d <= 6; ++d) {
        for (int t = 0; t <= 4; ++t) {
            for (const auto &parts : partitions(t, d)) {
                const HighestWeight hw = padded(parts, d);
                for (int r = 1; r <= d; ++r) {
                    HighestWeight mu;
                    try {
                        mu = add_box(hw, r);
                    } catch (const Error &) {
                        continue;
                    }
                    const double expect = static_cast<double>(weyl_dimension(mu)) / static_cast<double>(weyl_dimension(hw));
                    EXPECT_NEAR(weyl_dimension_ratio_add_box(parts, r, d), expect, 1e-12 * expect);
                }
            }
        }
    }
    // Large d: (1) -> (2) has ratio (d + 1) / 2.
    EXPECT_NEAR(weyl_dimension_ratio_add_box({1}, 1, 1 << 20), ((1 << 20) + 1) / 2.0, 1e-6);
}
