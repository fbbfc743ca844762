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
 * Verification suites shared by the command-line tool and the acceptance
 * runner.  Each suite returns its worst deviation and a pass flag.
 */

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "haarcg/query.hpp"

namespace haarcg {

struct SuiteResult {
    std::string name;
    bool pass = true;
    double max_deviation = 0.0;
    std::size_t checks = 0;
    double runtime_ms = 0.0;
    std::vector<std::string> notes;

    /// Records one comparison; fails the suite when `dev` exceeds `tol`.
    void record(double dev, double tol, const std::string &what);
    void fail(const std::string &what);
};

/// Worked example, compress/decompress round trips for d <= max_d and at most max_boxes boxes,
/// and exhaustive apply_P injectivity for d <= 3, k <= 3.
SuiteResult suite_gtcompress(int max_d, int max_boxes);

/// Isometry and intertwining of the dense engine (both factors) and entrywise agreement of the
/// closed-form engine, over Young diagrams with at most max_boxes boxes and d <= max_d.
SuiteResult suite_cg(int max_d, int max_boxes, double tol);

/// Gram-system Weingarten values against the character sum (exact) for t <= max_t, plus the
/// Gram residual and the pseudo-inverse branch.
SuiteResult suite_weingarten(int max_t, double tol);

/// First-order moments delta delta / d on both U(d) engines.
SuiteResult suite_first_order(const std::vector<int> &ds, double tol);

/// moment_tensor, commutant_moment and the Weingarten oracle on U(d) for one script.  With
/// samples == 0 every index assignment is visited; otherwise `samples` random ones, half of them
/// with repeated words.
SuiteResult suite_three_way(int d, const std::vector<QueryType> &script, int samples, std::uint64_t seed, double tol);

/// Finite groups: every single-type script up to max_len, plus `random_scripts` mixed scripts,
/// against the uniform group average (and the commutant formula).
SuiteResult suite_finite_moments(const std::string &group, int max_len, int random_scripts, std::uint64_t seed,
                                 double tol);

/// Matrix-unit orthogonality, traces and commutation with the diagonal action.
SuiteResult suite_matrix_units_unitary(int max_d, int max_t, double tol);
SuiteResult suite_matrix_units_finite(const std::string &group, int max_t, double tol);

struct BenchRow {
    long long d = 0;
    int t = 0;
    double wall_ms = 0.0;
    std::size_t peak_key_bits = 0;
    std::size_t peak_keys = 0;
};

/// t forward queries on computational-basis inputs with computational-basis outputs, on the
/// closed-form engine.  Symbols are distinct whenever d >= 2t.
BenchRow bench_forward(int d, int t, std::uint64_t seed);

/// Runs bench_forward over `ds`; checks the time limit at the largest d and a linear fit of
/// key bits against log2 d.
SuiteResult suite_scaling(int t, const std::vector<int> &ds, double time_limit_ms, std::uint64_t seed,
                          std::vector<BenchRow> *rows = nullptr);

/// Built-in combs at d = 2 over U in {I, H, diag(1, e^{i pi/4})}.
SuiteResult suite_twirl(const std::vector<std::string> &combs, double tol, const std::string &engine = "fast");

/// Permutation-oracle identities exactly as written: all of S_3 at d = 3 and `random_count`
/// random permutations with d <= 6.  The adjoint variant is reported in the notes.
SuiteResult suite_permutation(int random_count, std::uint64_t seed);

}  // namespace haarcg
