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

/**
 * @file
 * Highest weights, Gelfand-Tsetlin patterns and box-addition paths for U(d).
 *
 * A GT pattern is stored shortest row first: rows[0] has one entry and
 * rows[d-1] is the highest weight.  Patterns and paths compare
 * lexicographically, which fixes the basis order used everywhere else.
 */

#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace haarcg {

/// Default ceiling for any enumeration or dense dimension.
inline constexpr std::size_t kDefaultCap = std::size_t{1} << 20;

/// Weakly decreasing integer weight of U(d).  Negative entries are allowed.
struct HighestWeight {
    std::vector<int> entries;

    HighestWeight() = default;
    explicit HighestWeight(std::vector<int> e);

    int d() const { return static_cast<int>(entries.size()); }
    bool is_young_diagram() const;
    int box_count() const;
    /// Trivial weight (0,...,0) of U(d).
    static HighestWeight zero(int d);

    auto operator<=>(const HighestWeight &) const = default;
};

struct GTPattern {
    std::vector<std::vector<int>> rows;

    int d() const { return static_cast<int>(rows.size()); }
    const std::vector<int> &top() const { return rows.back(); }
    int row_sum(int k) const;  // 1-based row index, row_sum(0) == 0

    auto operator<=>(const GTPattern &) const = default;
};

/// Chain of highest weights from the empty diagram with optional multiplicity
/// indices (all zero for U(d), where every step is multiplicity free).
struct PathLabel {
    std::vector<HighestWeight> diagrams;
    std::vector<int> multiplicities;

    auto operator<=>(const PathLabel &) const = default;
};

std::string to_string(const HighestWeight &hw);
std::string to_string(const GTPattern &p);
std::string to_string(const PathLabel &p);

/// True iff adjacent rows interlace.  Throws kShapeError on a non-triangular shape.
bool validate_gt(const GTPattern &p);

/// Weyl dimension formula.  Throws kOverflow past 64 bits.
std::uint64_t weyl_dimension(const HighestWeight &hw);

/// d_mu / d_lambda in floating point, where mu = lambda + box in `row` (1-based).
/// Only the first `nonzero_rows` entries of lambda may be nonzero; the remaining
/// d - nonzero_rows rows are folded in closed form, so the cost does not grow with d.
double weyl_dimension_ratio_add_box(const std::vector<int> &lambda_parts, int row, int d);

/// Every GT pattern with top row `hw`, sorted lexicographically.
std::vector<GTPattern> enumerate_gt(const HighestWeight &hw, std::size_t cap = kDefaultCap);

/// Index of `p` within enumerate_gt(p.top()), by binary search in `patterns`.
std::size_t pattern_index(const std::vector<GTPattern> &patterns, const GTPattern &p);

/// The pattern whose rows are all maximal (the highest-weight vector).
GTPattern highest_pattern(const HighestWeight &hw);

/// hw with entries[row-1] incremented.  Throws kInvalidBox if the result is not weakly decreasing.
HighestWeight add_box(const HighestWeight &hw, int row);
/// hw with entries[row-1] decremented.  Throws kInvalidBox if the result is not weakly decreasing.
HighestWeight remove_box(const HighestWeight &hw, int row);

/// w_k = rowsum(k) - rowsum(k-1).
std::vector<int> weight_of(const GTPattern &p);

/// All box-addition chains from the empty diagram to `lambda` (standard Young tableaux).
std::vector<PathLabel> enumerate_paths(int t, const HighestWeight &lambda, std::size_t cap = kDefaultCap);

/// Partitions of t with at most `max_rows` parts, in reverse lexicographic order.
std::vector<std::vector<int>> partitions(int t, int max_rows);

}  // namespace haarcg
