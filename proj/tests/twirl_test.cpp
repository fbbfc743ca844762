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


#include "haarcg/twirl.hpp"

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "haarcg/errors.hpp"
#include "haarcg/haar.hpp"

using namespace haarcg;

namespace {

using Cplx = std::complex<double>;

Eigen::MatrixXcd hadamard() {
    Eigen::MatrixXcd h(2, 2);
    h << 1, 1, 1, -1;
    return h / std::sqrt(2.0);
}

std::vector<Eigen::MatrixXcd> test_unitaries() {
    Eigen::MatrixXcd t(2, 2);
    t << 1, 0, 0, std::polar(1.0, std::numbers::pi / 4);
    return {Eigen::MatrixXcd::Identity(2, 2), hadamard(), t};
}

}  // namespace

TEST(ChannelFidelity, Examples) {
    const Eigen::MatrixXcd h = hadamard();
    EXPECT_NEAR(channel_fidelity({h.adjoint()}, h), 1.0, 1e-15);
    // Identity channel scored against U^-1 = H: |Tr H|^2 / 4.
    EXPECT_NEAR(channel_fidelity({Eigen::MatrixXcd::Identity(2, 2)}, h), 0.0, 1e-15);
    // Completely depolarizing channel: Kraus |i><j| / sqrt d.
    for (int d = 2; d <= 4; ++d) {
        std::vector<Eigen::MatrixXcd> ks;
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                Eigen::MatrixXcd k = Eigen::MatrixXcd::Zero(d, d);
                k(i, j) = 1.0 / std::sqrt(d);
                ks.push_back(k);
            }
        const Eigen::MatrixXcd u = sample_haar(d, 17);
        EXPECT_NEAR(channel_fidelity(ks, u), 1.0 / (d * d), 1e-14);
        EXPECT_NEAR(channel_fidelity_choi(choi_from_kraus(ks), u), 1.0 / (d * d), 1e-14);
    }
    try {
        channel_fidelity({Eigen::MatrixXcd::Identity(3, 3)}, h);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::kDimensionMismatch);
    }
}

TEST(ChannelFidelity, KrausGaugeInvariance) {
    const Comb c = builtin_comb("identity", 2);
    const Eigen::MatrixXcd u = sample_haar(2, 4);
    const auto ks = comb_kraus(c, u);
    const Eigen::MatrixXcd mix = sample_haar(static_cast<int>(ks.size()), 8);
    std::vector<Eigen::MatrixXcd> remixed(ks.size(), Eigen::MatrixXcd::Zero(2, 2));
    for (std::size_t i = 0; i < ks.size(); ++i)
        for (std::size_t j = 0; j < ks.size(); ++j) remixed[i] += mix(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) * ks[j];
    EXPECT_NEAR(channel_fidelity(ks, u), channel_fidelity(remixed, u), 1e-12);
}

TEST(Fidelity, BuiltinCombs) {
    struct Case {
        const char *name;
        double f;
    };
    for (const Case c : {Case{"identity", 0.25}, Case{"u", 0.5}, Case{"perfect", 1.0}}) {
        const Comb comb = builtin_comb(c.name, 2);
        EXPECT_NEAR(average_inversion_fidelity(comb), c.f, 1e-12) << c.name;
        EXPECT_NEAR(average_inversion_fidelity_clifford(comb), c.f, 1e-12) << c.name;
    }
    // identity comb in d = 3: E|Tr U|^2 / 9.
    EXPECT_NEAR(average_inversion_fidelity(builtin_comb("identity", 3)), 1.0 / 9.0, 1e-12);
}

TEST(Eta, Values) {
    EXPECT_EQ(eta_of_delta(0.0, 2), 0.0);
    EXPECT_NEAR(eta_of_delta(0.75, 2), 1.0, 1e-15);
    EXPECT_NEAR(eta_of_delta(0.5, 2), 2.0 / 3.0, 1e-15);
    for (double bad : {-0.1, 0.9}) {
        try {
            eta_of_delta(bad, 2);
            FAIL();
        } catch (const Error &e) {
            EXPECT_EQ(e.kind(), ErrorKind::kOutOfRange);
        }
    }
}

TEST(Clifford, GroupIsADesign) {
    const auto g = clifford_group_1q();
    ASSERT_EQ(g.size(), 24u);
    // Third frame potential of a 3-design equals the Haar value, 5 for d = 2.
    double fp = 0.0;
    for (const auto &a : g)
        for (const auto &b : g) fp += std::pow(std::norm((a.adjoint() * b).trace()), 3);
    EXPECT_NEAR(fp / (24.0 * 24.0), 5.0, 1e-9);
}

TEST(Twirl, TheoremChecks) {
    for (const char *name : {"identity", "u", "perfect"}) {
        const Comb comb = builtin_comb(name, 2);
        const TwirlReport rep = verify_twirl(comb, test_unitaries());
        EXPECT_LT(rep.max_deviation(), 1e-10) << name;
        for (const auto &c : rep.cases) EXPECT_LT(c.path_agreement, 1e-10) << name;
    }
    EXPECT_NEAR(verify_twirl(builtin_comb("u", 2), {hadamard()}).eta, 2.0 / 3.0, 1e-12);
}

TEST(Twirl, DenseEngineAndQutrit) {
    const TwirlReport dense = verify_twirl(builtin_comb("u", 2), test_unitaries(), "dense");
    EXPECT_LT(dense.max_deviation(), 1e-10);
    const TwirlResult r = twirl_comb(builtin_comb("u", 3), sample_haar(3, 2));
    EXPECT_EQ(r.reference_method, "weingarten");
    EXPECT_LT((r.oracle_choi - r.reference_choi).cwiseAbs().maxCoeff(), 1e-10);
    EXPECT_LT(cptp_violation(r.oracle_choi, 3), 1e-10);
}

TEST(Twirl, Covariance) {
    const Comb comb = builtin_comb("u", 2);
    const Eigen::MatrixXcd u = sample_haar(2, 21), w = sample_haar(2, 22);
    const Eigen::MatrixXcd a = twirl_comb(comb, w * u).oracle_choi;
    const Eigen::MatrixXcd b = twirl_comb(comb, u).oracle_choi;
    // Kraus K W^dagger: vec(K A) = (I (x) A^T) vec(K), so J' = (I (x) conj W) J (I (x) conj W)^dagger.
    Eigen::MatrixXcd k = Eigen::MatrixXcd::Zero(4, 4);
    for (int i = 0; i < 2; ++i) k.block(i * 2, i * 2, 2, 2) = w.conjugate();
    const Eigen::MatrixXcd wc = k * b * k.adjoint();
    EXPECT_LT((a - wc).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(Comb, JsonAndValidation) {
    const std::string u_comb = R"({"d": 2, "memory_dim": 1, "slot": "forward",
        "pre": [[[1, 0], [0, 1]]], "post": [[[1, 0], [0, [1, 0]]]]})";
    const Comb c = load_comb_json(u_comb);
    EXPECT_NEAR(average_inversion_fidelity(c), 0.5, 1e-12);
    try {
        load_comb_json(R"({"d": 2, "pre": [[[2, 0], [0, 1]]], "post": [[[1, 0], [0, 1]]]})");
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::kInconsistentInputs);
    }
    try {
        load_comb_json(R"({"d": 2, "n": 2, "pre": [[[1, 0], [0, 1]]], "post": [[[1, 0], [0, 1]]]})");
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::kUnsupportedN);
    }
}
