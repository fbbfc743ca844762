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

#include "haarcg/haar.hpp"

#include <cmath>

#include <gtest/gtest.h>

#include "haarcg/errors.hpp"
#include "haarcg/repcore.hpp"

using namespace haarcg;

TEST(Rational, Arithmetic) {
    const Rational a(1, 3), b(-1, 6);
    EXPECT_EQ((a + b).str(), "1/6");
    EXPECT_EQ((a * b).str(), "-1/18");
    EXPECT_EQ((a / b).str(), "-2");
    EXPECT_EQ(Rational(4, -8).str(), "-1/2");
}

TEST(Characters, SmallTables) {
    // S3: trivial, standard, sign on classes (1,1,1), (2,1), (3).
    EXPECT_EQ(sn_character({2, 1}, {1, 1, 1}), 2);
    EXPECT_EQ(sn_character({2, 1}, {2, 1}), 0);
    EXPECT_EQ(sn_character({2, 1}, {3}), -1);
    EXPECT_EQ(sn_character({1, 1, 1}, {2, 1}), -1);
    // Column orthogonality: sum_lambda chi(e)^2 = t!.
    for (int t = 1; t <= 6; ++t) {
        long long sum = 0, fact = 1;
        for (int k = 2; k <= t; ++k) fact *= k;
        for (const auto &lam : partitions(t, t)) {
            const long long c = sn_character(lam, std::vector<int>(static_cast<std::size_t>(t), 1));
            sum += c * c;
        }
        EXPECT_EQ(sum, fact);
    }
}

TEST(Weingarten, KnownValues) {
    for (int d = 1; d <= 5; ++d) EXPECT_EQ(weingarten({1}, d, 1), Rational(1, d));
    EXPECT_EQ(weingarten({1, 1}, 2, 2), Rational(1, 3));
    EXPECT_EQ(weingarten({2}, 2, 2), Rational(-1, 6));
    EXPECT_EQ(weingarten({3}, 3, 3), Rational(1, 60));
}

TEST(Weingarten, GramMatchesCharacterSum) {
    for (int t = 1; t <= 4; ++t)
        for (int d = t; d <= t + 3; ++d)
            for (const auto &cls : partitions(t, t)) EXPECT_EQ(weingarten(cls, d, t), weingarten_charsum(cls, d, t));
}

TEST(Weingarten, SingularBelowT) {
    try {
        weingarten({1, 1, 1}, 2, 3);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::kSingularGram);
    }
    const auto &tab = weingarten_table(3, 2);
    EXPECT_TRUE(tab.pseudo_inverse);
    for (std::size_t i = 0; i < tab.perms.size(); ++i)
        EXPECT_NEAR(tab.values[i], weingarten_charsum(cycle_type(tab.perms[i]), 2, 3).to_double(), 1e-12);
}

TEST(HaarMoment, Examples) {
    EXPECT_NEAR(haar_moment_unitary({{0, 0}, {0, 0}}, {{0, 0}, {0, 0}}, 2), 1.0 / 3.0, 1e-15);
    EXPECT_NEAR(haar_moment_unitary({{0, 0}}, {{0, 0}}, 3), 1.0 / 3.0, 1e-15);
    EXPECT_NEAR(haar_moment_unitary({{0, 0}}, {{0, 1}}, 3), 0.0, 1e-15);
    EXPECT_NEAR(haar_moment_unitary({{0, 0}, {1, 1}}, {{0, 0}, {1, 1}}, 2), 1.0 / 3.0, 1e-15);
    // Three-qubit-index moment needs the d < t branch.
    EXPECT_NEAR(haar_moment_unitary({{0, 0}, {0, 0}, {0, 0}}, {{0, 0}, {0, 0}, {0, 0}}, 2), 0.25, 1e-12);
}

TEST(HaarMoment, MonteCarlo) {
    const int n = 20000;
    double sum = 0, sq = 0;
    for (int k = 0; k < n; ++k) {
        const Eigen::MatrixXcd u = sample_haar(2, 1000 + static_cast<std::uint64_t>(k));
        if (k == 0) EXPECT_LT((u.adjoint() * u - Eigen::MatrixXcd::Identity(2, 2)).norm(), 1e-12);
        const double v = std::pow(std::norm(u(0, 0)), 2);
        sum += v;
        sq += v * v;
    }
    const double mean = sum / n, sigma = std::sqrt((sq / n - mean * mean) / n);
    EXPECT_LT(std::abs(mean - 1.0 / 3.0), 5 * sigma);
}

TEST(HaarPolynomial, TraceMoments) {
    for (int d = 2; d <= 3; ++d) {
        HaarPolynomial tr;
        for (int i = 0; i < d; ++i) tr += HaarPolynomial::entry(i, i);
        // E|Tr U|^2 = 1 and E|Tr U|^4 = 2 once d >= 2.
        EXPECT_NEAR(std::abs((tr * tr.conj()).expectation(d) - 1.0), 0.0, 1e-12);
        EXPECT_NEAR(std::abs((tr * tr * tr.conj() * tr.conj()).expectation(d) - 2.0), 0.0, 1e-12);
        EXPECT_EQ((tr * tr).expectation(d), std::complex<double>(0.0));
    }
}

TEST(HaarMoment, RelabelingInvariance) {
    const std::vector<int> perm{2, 0, 1};
    const std::vector<std::pair<int, int>> u{{0, 1}, {2, 2}}, ubar{{2, 1}, {0, 2}};
    auto relabel = [&](std::vector<std::pair<int, int>> v) {
        for (auto &[a, b] : v) {
            a = perm[static_cast<std::size_t>(a)];
            b = perm[static_cast<std::size_t>(b)];
        }
        return v;
    };
    EXPECT_NEAR(haar_moment_unitary(u, ubar, 3), haar_moment_unitary(relabel(u), relabel(ubar), 3), 1e-15);
    EXPECT_EQ(haar_moment_unitary({{0, 0}}, {}, 3), 0.0);
}
