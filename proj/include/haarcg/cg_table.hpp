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
 * Sparse Clebsch-Gordan tables shared by the U(d) and finite-group engines.
 *
 * A table decomposes V_lambda (x) V_factor.  Each block holds an isometry
 * V_mu -> V_lambda (x) V_factor whose row index is m * factor_dim + x, so the
 * stored coefficient is <lambda m, x | mu m'>.
 */

#pragma once

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace haarcg {

using Complex = std::complex<double>;
/// Irrep or basis label.  U(d) irreps store highest-weight entries, finite
/// groups store a single irrep index, compressed labels store an encoding.
using Label = std::vector<int>;

enum class Factor { kDefining, kDual };

const char *factor_name(Factor f);

struct CGBlock {
    Label mu;
    int multiplicity = 0;  // copy index within the isotypic component
    Eigen::MatrixXcd isometry;
};

struct CGEntry {
    std::size_t block = 0;
    std::size_t out_index = 0;
    Complex coeff;
};

struct CGTable {
    Label lambda;
    Factor factor = Factor::kDefining;
    std::size_t lambda_dim = 0;
    int factor_dim = 0;
    std::vector<CGBlock> blocks;
    /// entries[m * factor_dim + x]: nonzero coefficients of |lambda m, x>.
    std::vector<std::vector<CGEntry>> entries;

    /// Rebuilds `entries` from the block isometries.
    void build_index(double zero_tol = 1e-13);
    const std::vector<CGEntry> &at(std::size_t m, int x) const {
        return entries[m * static_cast<std::size_t>(factor_dim) + static_cast<std::size_t>(x)];
    }
    const CGBlock *find_block(const Label &mu, int multiplicity = 0) const;
    /// [isometry_0 | isometry_1 | ...], square when the decomposition is complete.
    Eigen::MatrixXcd assembled() const;
};

/// max |C^dagger C - 1| over the assembled table.
double isometry_error(const CGTable &table);

/// Orientation of the dimension factor used when bending a CG leg into a dual-CG tensor.
enum class DualOrientation { kSqrtLambdaOverMu, kSqrtMuOverLambda };

/// Frozen choice; the other orientation breaks the oracle isometry (see tests).
inline constexpr DualOrientation kDualOrientation = DualOrientation::kSqrtLambdaOverMu;

struct DualEntry {
    std::size_t m = 0;       // lambda basis index (bra side input)
    int y = 0;               // emitted system symbol
    std::size_t m_out = 0;   // mu basis index
    Complex value;
};

struct DualCGTensor {
    Label lambda;
    Label mu;
    int multiplicity = 0;
    std::vector<DualEntry> entries;
};

/// Dual-CG tensor for the block mu of `table`: entries sqrt(d_lambda/d_mu) <lambda m, y | mu m'>
/// (or the reciprocal ratio).  Throws kBlockMissing if mu is absent.
DualCGTensor dual_cg(const CGTable &table, const Label &lambda, const Label &mu, double dim_lambda, double dim_mu,
                     DualOrientation orientation = kDualOrientation, int multiplicity = 0);

/// Versioned binary format; `convention` is stored and checked on read.
void write_cg_table(std::ostream &os, const CGTable &table, const std::string &convention);
CGTable read_cg_table(std::istream &is, const std::string &expected_convention);

}  // namespace haarcg
