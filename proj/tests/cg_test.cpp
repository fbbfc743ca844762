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

#include "haarcg/cg.hpp"

#include <cmath>
#include <filesystem>
#include <sstream>

#include "gtest/gtest.h"

#include "haarcg/errors.hpp"

using namespace haarcg;

namespace {

HighestWeight padded(const std::vector<int> &parts, int d) {
    std::vector<int> e(static_cast<std::size_t>(d), 0);
    std::copy(parts.begin(), parts.end(), e.begin());
    return HighestWeight(e);
}

std::vector<HighestWeight> young_weights(int d, int max_boxes) {
    std::vector<HighestWeight> out;
    for (int t = 0; t <= max_boxes; ++t) {
        for (const auto &parts : partitions(t, d)) out.push_back(padded(parts, d));
    }
    return out;
}

double max_abs(const Eigen::MatrixXd &m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

// [E_ij, E_kl] = delta_jk E_il - delta_li E_kj.
double lie_error(const GeneratorSet &g) {
    const int d = g.d();
    double err = 0.0;
    for (int i = 1; i <= d; ++i)
        for (int j = 1; j <= d; ++j)
            for (int k = 1; k <= d; ++k)
                for (int l = 1; l <= d; ++l) {
                    const Eigen::MatrixXd a = g.e(i, j), b = g.e(k, l);
                    Eigen::MatrixXd expect = Eigen::MatrixXd::Zero(a.rows(), a.cols());
                    if (j == k) expect += g.e(i, l);
                    if (l == i) expect -= g.e(k, j);
                    err = std::max(err, max_abs(a * b - b * a - expect));
                }
    return err;
}

int lambda_index(const std::vector<GTPattern> &basis, const GTPattern &p) { return static_cast<int>(pattern_index(basis, p)); }

}  // namespace

TEST(generators, spin_half) {
    const GeneratorSet g = generators_gt(HighestWeight({1, 0}));
    ASSERT_EQ(g.basis.size(), 2u);
    // Basis order is (e2, e1).
    Eigen::MatrixXd up(2, 2);
    up << 0, 0, 1, 0;
    EXPECT_LT(max_abs(g.raising[0] - up), 1e-14);
    EXPECT_LT(max_abs(g.cartan[0] - Eigen::Vector2d(0, 1).asDiagonal().toDenseMatrix()), 1e-14);
}

TEST(generators, trivial_is_zero) {
    const GeneratorSet g = generators_gt(HighestWeight({0, 0}));
    ASSERT_EQ(g.basis.size(), 1u);
    EXPECT_EQ(g.raising[0](0, 0), 0.0);
    EXPECT_EQ(g.lowering[0](0, 0), 0.0);
    EXPECT_EQ(g.cartan[0](0, 0), 0.0);
}

TEST(generators, spin_one_casimir) {
    const GeneratorSet g = generators_gt(HighestWeight({2, 0}));
    // J_z = (E11 - E22)/2, J^2 = J_z^2 + (J+J- + J-J+)/2 = 2.
    const Eigen::MatrixXd jz = (g.cartan[0] - g.cartan[1]) / 2;
    const Eigen::MatrixXd j2 = jz * jz + (g.raising[0] * g.lowering[0] + g.lowering[0] * g.raising[0]) / 2;
    EXPECT_LT(max_abs(j2 - 2.0 * Eigen::MatrixXd::Identity(3, 3)), 1e-12);
}

TEST(generators, lie_relations_and_casimir) {
    std::vector<HighestWeight> cases = young_weights(4, 3);
    for (auto e : std::vector<std::vector<int>>{{0, -1}, {1, 0, -1}, {2, 0, -1}, {0, -1, -1}, {1, 1, -2, -2}}) cases.emplace_back(e);
    for (const auto &hw : cases) {
        const GeneratorSet g = generators_gt(hw);
        const int d = hw.d();
        EXPECT_LT(lie_error(g), 1e-10) << to_string(hw);
        const auto top = static_cast<Eigen::Index>(pattern_index(g.basis, highest_pattern(hw)));
        for (const auto &r : g.raising) EXPECT_LT(r.col(top).cwiseAbs().maxCoeff(), 1e-14);
        Eigen::MatrixXd c2 = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(g.basis.size()), static_cast<Eigen::Index>(g.basis.size()));
        for (int i = 1; i <= d; ++i)
            for (int j = 1; j <= d; ++j) c2 += g.e(i, j) * g.e(j, i);
        double expect = 0;
        for (int i = 1; i <= d; ++i) {
            const double l = hw.entries[static_cast<std::size_t>(i - 1)];
            expect += l * (l + d + 1 - 2 * i);
        }
        EXPECT_LT(max_abs(c2 - expect * Eigen::MatrixXd::Identity(c2.rows(), c2.cols())), 1e-9) << to_string(hw);
    }
}

TEST(cg_dense, spin_half_pair) {
    const CGTable t = cg_dense(HighestWeight({1, 0}), Factor::kDefining);
    ASSERT_EQ(t.blocks.size(), 2u);
    EXPECT_EQ(t.blocks[0].mu, (Label{2, 0}));
    EXPECT_EQ(t.blocks[1].mu, (Label{1, 1}));
    // Oracle: antisymmetrizer on C^2 (x) C^2 with the lambda basis ordered (e2, e1).
    auto idx = [](int a_std, int x) { return (a_std == 0 ? 1 : 0) * 2 + x; };
    Eigen::MatrixXd anti = Eigen::MatrixXd::Zero(4, 4);
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            anti(idx(a, b), idx(a, b)) += 0.5;
            anti(idx(b, a), idx(a, b)) -= 0.5;
        }
    const Eigen::MatrixXcd v = t.blocks[1].isometry;
    EXPECT_LT((v * v.adjoint() - anti.cast<Complex>()).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_NEAR(std::abs(v(idx(0, 1), 0)), 1 / std::sqrt(2.0), 1e-12);
}

TEST(cg_dense, trivial_times_defining) {
    const CGTable t = cg_dense(HighestWeight({0, 0}), Factor::kDefining);
    ASSERT_EQ(t.blocks.size(), 1u);
    EXPECT_EQ(t.blocks[0].mu, (Label{1, 0}));
    // mu basis is (e2, e1); input x = 0 is e1.
    Eigen::MatrixXcd expect(2, 2);
    expect << 0, 1, 1, 0;
    EXPECT_LT((t.blocks[0].isometry - expect).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(cg_dense, dual_invariant_vector) {
    const CGTable t = cg_dense(HighestWeight({1, 0}), Factor::kDual);
    ASSERT_EQ(t.blocks.size(), 2u);
    const CGBlock *singlet = t.find_block({0, 0});
    ASSERT_NE(singlet, nullptr);
    ASSERT_NE(t.find_block({1, -1}), nullptr);
    // Invariant of V (x) V-bar: sum_i e_i (x) e_i in the standard dual basis.
    Eigen::VectorXcd inv = Eigen::VectorXcd::Zero(4);
    inv(1 * 2 + 0) = 1 / std::sqrt(2.0);  // e1 (x) e1
    inv(0 * 2 + 1) = 1 / std::sqrt(2.0);  // e2 (x) e2
    EXPECT_LT((singlet->isometry.col(0) - inv).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(cg_dense, isometry_intertwining_branching) {
    for (int d = 1; d <= 5; ++d) {
        for (const auto &hw : young_weights(d, 4)) {
            for (Factor f : {Factor::kDefining, Factor::kDual}) {
                const CGTable t = cg_dense(hw, f);
                EXPECT_LT(isometry_error(t), 1e-10) << to_string(hw) << " " << factor_name(f);
                std::uint64_t total = 0;
                for (const auto &b : t.blocks) total += weyl_dimension(HighestWeight(b.mu));
                EXPECT_EQ(total, weyl_dimension(hw) * static_cast<std::uint64_t>(d));
                if (f == Factor::kDefining) {
                    int valid = 0;
                    for (int r = 1; r <= d; ++r) {
                        try {
                            add_box(hw, r);
                            ++valid;
                        } catch (const Error &) {
                        }
                    }
                    EXPECT_EQ(static_cast<int>(t.blocks.size()), valid);
                }
                if (d <= 4) EXPECT_LT(intertwining_error(t), 1e-10) << to_string(hw) << " " << factor_name(f);
            }
        }
    }
}

TEST(cg_dense, mixed_weight_input) {
    for (auto e : std::vector<std::vector<int>>{{0, -1}, {1, 0, -1}, {0, -1, -1}}) {
        for (Factor f : {Factor::kDefining, Factor::kDual}) {
            const CGTable t = cg_dense(HighestWeight(e), f);
            EXPECT_LT(isometry_error(t), 1e-10);
            EXPECT_LT(intertwining_error(t), 1e-10);
        }
    }
}

TEST(cg_dense, anchor_coefficient_is_positive) {
    for (const auto &hw : young_weights(3, 3)) {
        const CGTable t = cg_dense(hw, Factor::kDefining);
        const auto basis = enumerate_gt(hw);
        const int top = lambda_index(basis, highest_pattern(hw));
        for (const auto &b : t.blocks) {
            int r = 0;
            for (int i = 0; i < hw.d(); ++i) {
                if (b.mu[static_cast<std::size_t>(i)] != hw.entries[static_cast<std::size_t>(i)]) r = i;
            }
            const auto mu_basis = enumerate_gt(HighestWeight(b.mu));
            const auto top_mu = static_cast<Eigen::Index>(pattern_index(mu_basis, highest_pattern(HighestWeight(b.mu))));
            EXPECT_GT(b.isometry(top * hw.d() + r, top_mu).real(), 1e-9);
        }
    }
}

TEST(cg_fast, empty_diagram) {
    for (long long d : {1LL, 3LL, 1LL << 20}) {
        for (long long x : {1LL, d}) {
            const auto terms = cg_fast({}, 1, CompressedGT{}, x, d);
            ASSERT_EQ(terms.size(), 1u);
            EXPECT_NEAR(terms[0].coeff, 1.0, 1e-15);
            EXPECT_EQ(terms[0].m_out.p, (std::vector<int>{static_cast<int>(x)}));
        }
    }
}

TEST(cg_fast, errors) {
    try {
        cg_fast({}, 1, CompressedGT{}, 1, 2, Factor::kDual);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::kUnsupportedFactor);
    }
    const CompressedGT m = compress(highest_pattern(HighestWeight({1, 1, 0})));
    try {
        cg_fast({1, 1}, 2, m, 1, 3);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::kInvalidBox);
    }
}

// Entrywise agreement with the dense engine on every input of lambda (x) defining.
TEST(cg_fast, matches_dense) {
    for (int d = 1; d <= 5; ++d) {
        for (const auto &hw : young_weights(d, 4)) {
            const CGTable t = cg_dense(hw, Factor::kDefining);
            const auto basis = enumerate_gt(hw);
            std::vector<int> parts;
            for (int v : hw.entries)
                if (v > 0) parts.push_back(v);
            for (const auto &b : t.blocks) {
                const HighestWeight mu(b.mu);
                const auto mu_basis = enumerate_gt(mu);
                int row = 0;
                for (int i = 0; i < d; ++i)
                    if (b.mu[static_cast<std::size_t>(i)] != hw.entries[static_cast<std::size_t>(i)]) row = i + 1;
                for (std::size_t a = 0; a < basis.size(); ++a) {
                    for (int x = 1; x <= d; ++x) {
                        Eigen::VectorXd fast = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(mu_basis.size()));
                        for (const auto &term : cg_fast(parts, row, compress(basis[a]), x, d)) {
                            fast(static_cast<Eigen::Index>(pattern_index(mu_basis, decompress(term.m_out, d)))) += term.coeff;
                        }
                        const Eigen::VectorXd dense = b.isometry.row(static_cast<Eigen::Index>(a) * d + x - 1).real().transpose();
                        EXPECT_LT(max_abs(fast - dense), 1e-10)
                            << to_string(hw) << " row " << row << " m=" << to_string(basis[a]) << " x=" << x;
                    }
                }
            }
        }
    }
}

TEST(cg_fast, independent_of_d) {
    const CompressedGT m = compress(GTPattern{{{1}, {2, 0}, {2, 1, 0}}});
    const auto small = cg_fast_all(m, 2, 4);
    const auto large = cg_fast_all(m, 2, 1LL << 30);
    ASSERT_EQ(small.size(), large.size());
    for (std::size_t i = 0; i < small.size(); ++i) {
        EXPECT_EQ(small[i].first, large[i].first);
        EXPECT_EQ(small[i].second.m_out, large[i].second.m_out);
        EXPECT_DOUBLE_EQ(small[i].second.coeff, large[i].second.coeff);
    }
}

TEST(dual_cg, empty_to_box) {
    for (int d = 1; d <= 4; ++d) {
        const HighestWeight lambda = HighestWeight::zero(d);
        const CGTable t = cg_dense(lambda, Factor::kDefining);
        HighestWeight mu = add_box(lambda, 1);
        const DualCGTensor dual = dual_cg(t, lambda.entries, mu.entries, 1.0, static_cast<double>(d));
        std::vector<double> per_label(static_cast<std::size_t>(d), 0.0);
        for (const auto &e : dual.entries) per_label[e.m_out] += std::norm(e.value);
        for (double s : per_label) EXPECT_NEAR(s, 1.0 / d, 1e-12);
    }
}

TEST(dual_cg, ratio_and_orientation) {
    const HighestWeight lambda({1, 0});
    const CGTable t = cg_dense(lambda, Factor::kDefining);
    const DualCGTensor a = dual_cg(t, {1, 0}, {2, 0}, 2.0, 3.0);
    const DualCGTensor b = dual_cg(t, {1, 0}, {2, 0}, 2.0, 3.0, DualOrientation::kSqrtMuOverLambda);
    const CGBlock *blk = t.find_block({2, 0});
    ASSERT_EQ(a.entries.size(), b.entries.size());
    for (std::size_t i = 0; i < a.entries.size(); ++i) {
        const auto &e = a.entries[i];
        const Complex cg = blk->isometry(static_cast<Eigen::Index>(e.m) * 2 + e.y, static_cast<Eigen::Index>(e.m_out));
        EXPECT_LT(std::abs(e.value - std::sqrt(2.0 / 3.0) * cg), 1e-14);
        EXPECT_LT(std::abs(b.entries[i].value - std::sqrt(3.0 / 2.0) * cg), 1e-14);
    }
    try {
        dual_cg(t, {1, 0}, {0, 0}, 2.0, 1.0);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::kBlockMissing);
    }
}

TEST(dual_cg, one_dimensional_chain) {
    const CGTable t = cg_dense(HighestWeight({2}), Factor::kDefining);
    const DualCGTensor dual = dual_cg(t, {2}, {3}, 1.0, 1.0);
    ASSERT_EQ(dual.entries.size(), 1u);
    EXPECT_NEAR(std::abs(dual.entries[0].value), 1.0, 1e-15);
}

TEST(cg_table, binary_round_trip) {
    const CGTable t = cg_dense(HighestWeight({2, 1, 0}), Factor::kDual);
    std::stringstream ss;
    write_cg_table(ss, t, kCGConventionTag);
    const CGTable back = read_cg_table(ss, kCGConventionTag);
    ASSERT_EQ(back.blocks.size(), t.blocks.size());
    EXPECT_EQ(back.lambda, t.lambda);
    EXPECT_EQ(back.factor, t.factor);
    for (std::size_t i = 0; i < t.blocks.size(); ++i) EXPECT_EQ(back.blocks[i].isometry, t.blocks[i].isometry);
    std::stringstream bad;
    write_cg_table(bad, t, "other");
    EXPECT_THROW(read_cg_table(bad, kCGConventionTag), Error);
}

TEST(cg_cache, shares_tables_and_persists) {
    const auto dir = std::filesystem::temp_directory_path() / "haarcg_cg_cache_test";
    std::filesystem::remove_all(dir);
    {
        CGCache cache(dir.string());
        const auto a = cache.get(HighestWeight({1, 0, 0}), Factor::kDefining);
        const auto b = cache.get(HighestWeight({1, 0, 0}), Factor::kDefining);
        EXPECT_EQ(a.get(), b.get());
        EXPECT_EQ(cache.size(), 1u);
    }
    EXPECT_TRUE(std::filesystem::exists(dir / cg_cache_filename(HighestWeight({1, 0, 0}), Factor::kDefining)));
    CGCache reload(dir.string());
    const auto c = reload.get(HighestWeight({1, 0, 0}), Factor::kDefining);
    EXPECT_LT(isometry_error(*c), 1e-12);
    std::filesystem::remove_all(dir);
}
