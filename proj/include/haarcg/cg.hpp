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
 * Clebsch-Gordan coefficients for U(d) irreps tensored with the defining
 * representation or its dual.
 *
 * Two engines:
 *  - cg_dense builds the full table numerically from the Gelfand-Tsetlin
 *    generators.  It is the reference at small d.
 *  - cg_fast evaluates single coefficients in closed form on compressed
 *    patterns, so its cost does not grow with d.
 *
 * Phase convention shared by both: in each block mu = lambda +- e_r the
 * coefficient <lambda top, r | mu top> is real positive.
 */

#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "haarcg/cg_table.hpp"
#include "haarcg/gtcompress.hpp"
#include "haarcg/repcore.hpp"

namespace haarcg {

/// Stored in the on-disk cache; bump when the basis or phase convention changes.
inline constexpr const char *kCGConventionTag = "gt-lex/anchor-top-box/v1";

struct GeneratorSet {
    HighestWeight weight;
    std::vector<GTPattern> basis;
    std::vector<Eigen::MatrixXd> raising;   // E_{k,k+1}, k = 1..d-1
    std::vector<Eigen::MatrixXd> lowering;  // E_{k+1,k}
    std::vector<Eigen::MatrixXd> cartan;    // E_{kk}, k = 1..d

    int d() const { return weight.d(); }
    /// E_{ij} for arbitrary 1-based i, j, built from nested commutators.
    Eigen::MatrixXd e(int i, int j) const;
};

GeneratorSet generators_gt(const HighestWeight &hw, std::size_t cap = kDefaultCap);

/// pi(E_ij) on the defining representation (dual: -E_ji).
Eigen::MatrixXd factor_generator(Factor factor, int d, int i, int j);

/// Full decomposition of V_lambda (x) V_factor.  Blocks are ordered by the row of the added
/// (defining) or removed (dual) box.
CGTable cg_dense(const HighestWeight &lambda, Factor factor, std::size_t cap = kDefaultCap);

/// max over generators E_ij of |C^dagger (pi_lambda(E) x 1 + 1 x pi_f(E)) C - (+)_mu pi_mu(E)|.
double intertwining_error(const CGTable &table);

/// Process-wide cache of dense tables keyed by (lambda, factor).  Optionally backed by a directory
/// of content-addressed files (HAARCG_CACHE_DIR).  Returned tables are immutable.
class CGCache {
  public:
    CGCache() = default;
    explicit CGCache(std::string disk_dir) : disk_dir_(std::move(disk_dir)) {}

    std::shared_ptr<const CGTable> get(const HighestWeight &lambda, Factor factor);
    std::size_t size() const;

  private:
    mutable std::mutex mu_;
    std::map<std::pair<std::vector<int>, Factor>, std::shared_ptr<const CGTable>> tables_;
    std::string disk_dir_;
};

/// Shared cache; reads HAARCG_CACHE_DIR on first use.
CGCache &default_cg_cache();

/// File name under which a table is stored on disk.
std::string cg_cache_filename(const HighestWeight &lambda, Factor factor);

struct FastCGTerm {
    CompressedGT m_out;  // canonical compressed label of the mu basis vector
    double coeff = 0.0;
};

/**
 * Coefficients <lambda m, x | mu m'> for mu = lambda + e_row, over all m'.
 *
 * `lambda_c` lists the nonzero parts of lambda; `m` is a canonical compressed
 * label whose top row equals lambda_c (trailing zeros allowed).  `row` and `x`
 * are 1-based, `d` only bounds them.
 */
std::vector<FastCGTerm> cg_fast(const std::vector<int> &lambda_c, int row, const CompressedGT &m, long long x,
                                long long d, Factor factor = Factor::kDefining);

/// Every (row, m', coeff) reachable from (m, x); rows ascend.
std::vector<std::pair<int, FastCGTerm>> cg_fast_all(const CompressedGT &m, long long x, long long d);

}  // namespace haarcg
