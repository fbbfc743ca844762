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
 * Finite groups with explicit unitary irreps, generic Clebsch-Gordan
 * decomposition by isotypic projection, and permutation-oracle gadgets.
 */

#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "haarcg/cg_table.hpp"
#include "haarcg/query.hpp"

namespace haarcg {

struct Irrep {
    std::string label;
    int dim = 0;
    std::vector<Eigen::MatrixXcd> mats;  // one per group element
};

struct FiniteGroup {
    std::string name;
    int order = 0;
    std::vector<std::vector<int>> mult;  // mult[g][h] = index of gh
    int identity = 0;
    std::vector<int> inverse;
    std::vector<Irrep> irreps;
    std::vector<Eigen::MatrixXcd> rep;  // the queried representation R
    /// For permutation groups: element g as a 0-based permutation, (gh)(x) = g(h(x)).
    std::vector<std::vector<int>> perms;

    int rep_dim() const { return rep.empty() ? 0 : static_cast<int>(rep[0].rows()); }
    int trivial_irrep() const;
};

/// "S3", "S4", "Z<k>" or "Zn(<k>)" (regular representation).  Throws kUnknownGroup.
FiniteGroup builtin_group(const std::string &name);

/// Completes identity/inverse from the table and runs validate_group.
FiniteGroup make_group(std::string name, std::vector<std::vector<int>> mult, std::vector<Irrep> irreps,
                       std::vector<Eigen::MatrixXcd> rep);

/// Group axioms, homomorphism and unitarity of every irrep and R, character
/// orthogonality and completeness.  Throws kInvalidGroup.
void validate_group(const FiniteGroup &g, double tol = 1e-10);

/// JSON text {order, mult_table, irreps: [{label, dim, matrices}], rep: {matrices}} with
/// complex entries as [re, im].  Throws kInvalidGroup / kFormatError.
FiniteGroup load_group_json(const std::string &text);

/// Same group with another queried representation.
FiniteGroup with_rep(FiniteGroup g, std::vector<Eigen::MatrixXcd> rep);

/// Decomposition of rho_lambda (x) R (or R-bar for kDual).  Labels are {irrep index}; blocks are
/// ordered by (mu, multiplicity copy).
CGTable cg_finite(const FiniteGroup &g, int lambda, Factor factor);

/// max_g |C^dagger (rho_lambda (x) R)(g) C - (+) rho_mu(g)| for a table from cg_finite.
double intertwining_error(const FiniteGroup &g, const CGTable &table);

/// Matrix of the queried representation or its conjugate.
Eigen::MatrixXcd rep_matrix(const FiniteGroup &g, int element, Factor factor);

/// Q(g)_{row,col} with Q = R, R-bar, R^T or R^dagger according to `type`.
struct EntryFactor {
    QueryType type = QueryType::kForward;
    int row = 0;
    int col = 0;
    bool conjugate = false;  // multiply by the complex conjugate of the entry instead
};

/// (1/|G|) sum_g prod_k factor_k(g).  t = 0 gives 1.
Complex haar_average_finite(const FiniteGroup &g, const std::vector<EntryFactor> &factors);

// Permutation oracles on 0-based labels.  Matrices are 0/1 integer.
Eigen::MatrixXi perm_V(const std::vector<int> &g);
/// U_g |x, y> = |x, y + g(x) mod d>.
Eigen::MatrixXi perm_U(const std::vector<int> &g);
Eigen::MatrixXi cx_d(int d);
Eigen::MatrixXi swap_d(int d);
std::vector<int> perm_inverse(const std::vector<int> &g);

/// (V_{g^-1} (x) I) CX_d (V_g (x) I).
Eigen::MatrixXi perm_U_from_V(const std::vector<int> &g);
/// (I (x) <0|) U_{g^-1} SWAP U_g (I (x) |0>), the construction as usually written.
Eigen::MatrixXi perm_V_from_U(const std::vector<int> &g);
/// Same with U_{g^-1}^dagger in place of U_{g^-1}; equals V_g for every d.
Eigen::MatrixXi perm_V_from_U_adjoint(const std::vector<int> &g);

/// Parses cycle notation over 1-based symbols, e.g. "(1 2)(3 4)" or "()".
std::vector<int> parse_cycles(const std::string &text, int d);

}  // namespace haarcg
