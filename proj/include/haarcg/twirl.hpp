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
 * Single-query unitary-inversion combs, their channel fidelity, and twirling
 * by a Haar-random unitary fed through the compressed oracle.
 *
 * Choi convention: J[(j, k), (j', k')] = E(|k><k'|)_{j j'}, output index major.
 */

#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

namespace haarcg {

enum class SlotKind { kForward, kInverse };

/// C[U] = post o (Q(U) (x) id_mem) o pre, with Q(U) = U or U^dagger.  Pre Kraus operators map
/// C^d to C^d (x) C^m (slot index major), post Kraus operators map back.
struct Comb {
    std::string name;
    int d = 0;
    int memory_dim = 1;
    int n = 1;
    SlotKind slot = SlotKind::kForward;
    std::vector<Eigen::MatrixXcd> pre;
    std::vector<Eigen::MatrixXcd> post;
};

/// "identity" (C[U] = id), "u" (C[U] = U) or "perfect" (C[U] = U^-1).
Comb builtin_comb(const std::string &name, int d);
/// {"d", "memory_dim", "slot": "forward"|"inverse", "pre": [matrices], "post": [matrices]}, complex
/// entries as numbers or [re, im].  Throws kFormatError, kDimensionMismatch, kInconsistentInputs.
Comb load_comb_json(const std::string &text);
/// Shapes and trace preservation of both slices.  Throws kDimensionMismatch, kInconsistentInputs, kUnsupportedN.
void validate_comb(const Comb &comb, double tol = 1e-10);

/// Kraus operators of C[U].
std::vector<Eigen::MatrixXcd> comb_kraus(const Comb &comb, const Eigen::MatrixXcd &u);

Eigen::MatrixXcd choi_from_kraus(const std::vector<Eigen::MatrixXcd> &kraus);
/// Choi matrix of rho -> (1 - eta) U^dagger rho U + eta Tr(rho) I / d.
Eigen::MatrixXcd depolarized_inverse_choi(const Eigen::MatrixXcd &u, double eta);
/// Largest violation of positivity and trace preservation.
double cptp_violation(const Eigen::MatrixXcd &choi, int d_in);

/// (1/d^2) sum_i |Tr(K_i U)|^2.  Throws kDimensionMismatch.
double channel_fidelity(const std::vector<Eigen::MatrixXcd> &kraus, const Eigen::MatrixXcd &u);
/// Same quantity from a Choi matrix: <<U^dagger| J |U^dagger>> / d^2.
double channel_fidelity_choi(const Eigen::MatrixXcd &choi, const Eigen::MatrixXcd &u);

/// Haar average of channel_fidelity(C[U], U) through the Weingarten table.
double average_inversion_fidelity(const Comb &comb);
/// The same average over the single-qubit Clifford group (d = 2 only).
double average_inversion_fidelity_clifford(const Comb &comb);

/// d^2 delta / (d^2 - 1).  Throws kOutOfRange when delta < 0 or the result exceeds 1.
double eta_of_delta(double delta, int d);

/// The 24 single-qubit Clifford unitaries modulo phase.
std::vector<Eigen::MatrixXcd> clifford_group_1q();

struct TwirlResult {
    Eigen::MatrixXcd oracle_choi;     // query slots and system input share one compressed oracle
    Eigen::MatrixXcd reference_choi;  // Clifford average for d = 2, Weingarten contraction otherwise
    std::string reference_method;
};

/// T[U](rho) = int dV C[VU](V rho V^dagger), both ways.  `engine` is "fast" or "dense"; inverse
/// slots always run on the dense engine.
TwirlResult twirl_comb(const Comb &comb, const Eigen::MatrixXcd &u, const std::string &engine = "fast");

struct TwirlCase {
    double oracle_deviation = 0.0;     // vs D_eta o U^-1
    double reference_deviation = 0.0;  // vs D_eta o U^-1
    double path_agreement = 0.0;       // oracle vs reference
};

struct TwirlReport {
    double fidelity = 0.0;
    double delta = 0.0;
    double eta = 0.0;
    std::vector<TwirlCase> cases;
    double max_deviation() const;
};

TwirlReport verify_twirl(const Comb &comb, const std::vector<Eigen::MatrixXcd> &us, const std::string &engine = "fast");

}  // namespace haarcg
