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
 * Compressed Gelfand-Tsetlin patterns and the reversible preprocessing step
 * that folds a new input symbol into a compressed pattern.
 *
 * A pattern M of U(d) whose weight is supported on the symbols p_1 < ... < p_l
 * is stored as (M~, p): M~ keeps only rows p_1..p_l, each truncated to its
 * position in p.  Alphabet symbols are 1-based; 0 marks a padding slot left by
 * the c = 1 branch of op_B and sorts after every real symbol.
 */

#pragma once

#include <compare>
#include <cstddef>
#include <vector>

#include "haarcg/repcore.hpp"

namespace haarcg {

struct CompressedGT {
    GTPattern mtilde;
    std::vector<int> p;

    auto operator<=>(const CompressedGT &) const = default;
};

struct SymbolRecord {
    int c = 0;       // 1 iff the symbol already occurs in the alphabet
    int xtilde = 0;  // 1-based position (existing) or insertion slot (new)

    auto operator<=>(const SymbolRecord &) const = default;
};

struct PreprocessResult {
    std::vector<int> p;
    int xtilde = 0;
    GTPattern n;

    auto operator<=>(const PreprocessResult &) const = default;
};

CompressedGT compress(const GTPattern &m);
/// Accepts zero-padded alphabets; padding rows are dropped.
GTPattern decompress(const CompressedGT &c, int d);
/// Strips zero padding from p together with the matching (duplicated) rows.
CompressedGT normalize(const CompressedGT &c);

SymbolRecord op_A(const std::vector<int> &p, int x);
std::vector<int> op_B(const std::vector<int> &p, int x, int c, int xtilde);
GTPattern op_C(int c, int xtilde, const GTPattern &mtilde);

/// Recomputes c from (xtilde, n): c = 1 exactly when the row-sum difference at
/// row xtilde is positive.  Throws kIrreversibleState when that disagrees with c.
int recover_c(int xtilde, const GTPattern &n);
std::pair<int, GTPattern> op_D(int c, int xtilde, const GTPattern &n);

PreprocessResult apply_P(const std::vector<int> &p, const GTPattern &mtilde, int x);

/// Bits needed to store a compressed label: alphabet symbols in [d] and
/// pattern entries bounded by `max_entry`.
std::size_t compressed_bits(const CompressedGT &c, long long d, int max_entry);

}  // namespace haarcg
