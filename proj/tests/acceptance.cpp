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


// One line per acceptance criterion.  Exit status is nonzero only for unexpected failures;
// criterion 8 is a known failure of the V-from-U identity as written (see README).

#include <cstdio>
#include <string>
#include <vector>

#include "haarcg/verify.hpp"

using namespace haarcg;

namespace {

int unexpected = 0;

void report(int n, const std::vector<SuiteResult> &suites, double limit_ms, bool known_failure = false) {
    bool pass = true;
    double dev = 0.0, ms = 0.0;
    std::size_t checks = 0;
    for (const auto &s : suites) {
        pass = pass && s.pass;
        dev = std::max(dev, s.max_deviation);
        ms += s.runtime_ms;
        checks += s.checks;
    }
    const bool in_time = limit_ms <= 0.0 || ms < limit_ms;
    const bool ok = pass && in_time;
    std::printf("criterion %d: %s  max_dev=%.3g checks=%zu runtime_ms=%.0f%s%s\n", n, ok ? "PASS" : "FAIL", dev, checks, ms,
                in_time ? "" : " (over time limit)", !ok && known_failure ? " [known]" : "");
    for (const auto &s : suites)
        for (const auto &note : s.notes) std::printf("    %s: %s\n", s.name.c_str(), note.c_str());
    if (!ok && !known_failure) ++unexpected;
}

std::vector<QueryType> forward(int t) { return std::vector<QueryType>(static_cast<std::size_t>(t), QueryType::kForward); }

}  // namespace

int main() {
    report(1, {suite_first_order({2, 3, 4}, 1e-12)}, 1000.0);
    report(2,
           {suite_three_way(2, forward(2), 0, 1, 1e-10), suite_three_way(2, forward(3), 500, 2, 1e-10),
            suite_three_way(3, forward(2), 0, 3, 1e-10)},
           5 * 60 * 1000.0);
    report(3, {suite_finite_moments("S3", 3, 20, 4, 1e-12), suite_finite_moments("S4", 3, 20, 5, 1e-12)}, 2 * 60 * 1000.0);
    report(4, {suite_cg(5, 4, 1e-10)}, 2 * 60 * 1000.0);
    report(5, {suite_gtcompress(6, 4)}, 0.0);
    std::vector<int> ds;
    for (int e = 4; e <= 20; e += 2) ds.push_back(1 << e);
    report(6, {suite_scaling(2, ds, 1000.0, 6)}, 0.0);
    report(7, {suite_twirl({"identity", "u"}, 1e-10)}, 0.0);
    report(8, {suite_permutation(20, 8)}, 0.0, true);
    report(9,
           {suite_matrix_units_unitary(3, 3, 1e-10), suite_matrix_units_finite("S3", 3, 1e-10),
            suite_matrix_units_finite("S4", 3, 1e-10)},
           0.0);
    return unexpected == 0 ? 0 : 1;
}
