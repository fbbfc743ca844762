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


#include "haarcg/oracle.hpp"

#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "haarcg/errors.hpp"
#include "haarcg/haar.hpp"

using namespace haarcg;

namespace {

const std::vector<QueryType> kAllTypes{QueryType::kForward, QueryType::kConjugate, QueryType::kTranspose, QueryType::kInverse};

std::vector<int> random_word(std::mt19937_64 &rng, std::size_t t, int d) {
    std::uniform_int_distribution<int> pick(0, d - 1);
    std::vector<int> w(t);
    for (auto &v : w) v = pick(rng);
    return w;
}

// Every word of length t over [d], first letter most significant.
std::vector<std::vector<int>> all_words(std::size_t t, int d) {
    std::vector<std::vector<int>> out{{}};
    for (std::size_t k = 0; k < t; ++k) {
        std::vector<std::vector<int>> next;
        for (const auto &w : out)
            for (int v = 0; v < d; ++v) {
                next.push_back(w);
                next.back().push_back(v);
            }
        out = std::move(next);
    }
    return out;
}

Eigen::MatrixXcd kron(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b) {
    Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

}  // namespace

TEST(Oracle, Vacuum) {
    const auto fast = make_backend("u-fast", 2);
    const OracleState s = init_vacuum(fast);
    ASSERT_EQ(s.amps.size(), 1u);
    EXPECT_TRUE(s.amps.begin()->first.lambda.empty());
    const OracleState f = init_vacuum(make_backend("s3", 0));
    EXPECT_EQ(f.amps.begin()->first.lambda, (Label{0}));
    EXPECT_DOUBLE_EQ(f.norm_squared(), 1.0);
}

TEST(Oracle, FirstForwardQuery) {
    for (const char *kind : {"u-dense", "u-fast"}) {
        const int d = 3;
        const OracleState s = apply_oracle(init_vacuum(make_backend(kind, d), {d}, {1}), QueryType::kForward, 0);
        EXPECT_EQ(s.amps.size(), static_cast<std::size_t>(d));
        for (const auto &[k, v] : s.amps) EXPECT_NEAR(std::abs(v), 1.0 / std::sqrt(d), 1e-14);
        const Eigen::MatrixXcd rho = trace_out_aux(s);
        EXPECT_LT((rho - Eigen::MatrixXcd::Identity(d, d) / d).cwiseAbs().maxCoeff(), 1e-14) << kind;
    }
}

TEST(Oracle, IsometryAllTypes) {
    for (const char *kind : {"u-dense", "s3", "s4"}) {
        const auto b = make_backend(kind, 2);
        const int d = b->rep_dim();
        std::mt19937_64 rng(3);
        for (int trial = 0; trial < 6; ++trial) {
            OracleState s = init_vacuum(b, {d, d}, random_word(rng, 2, d));
            for (int k = 0; k < 3; ++k) {
                s = apply_oracle(s, kAllTypes[static_cast<std::size_t>(rng() % 4)], static_cast<int>(rng() % 2));
                EXPECT_NEAR(s.norm_squared(), 1.0, 1e-12) << kind;
            }
        }
    }
}

TEST(Oracle, ForwardThenInverseRestoresInput) {
    const auto b = make_backend("s3", 0);
    const OracleState s = apply_oracle(apply_oracle(init_vacuum(b, {3}, {2}), QueryType::kForward, 0), QueryType::kInverse, 0);
    ASSERT_EQ(s.amps.size(), 1u);
    EXPECT_EQ(s.amps.begin()->first.sys, (std::vector<int>{2}));
    EXPECT_EQ(s.amps.begin()->first.lambda, b->vacuum_irrep());
    EXPECT_NEAR(std::abs(s.amps.begin()->second - Complex(1.0)), 0.0, 1e-12);
}

TEST(Oracle, TwoQueryDensityMatchesWeingarten) {
    const int d = 2;
    for (const auto &x : all_words(2, d)) {
        OracleState s = init_vacuum(make_backend("u-fast", d), {d, d}, x);
        s = apply_oracle(apply_oracle(s, QueryType::kForward, 0), QueryType::kForward, 1);
        const Eigen::MatrixXcd rho = trace_out_aux(s);
        double err = 0.0;
        for (const auto &a : all_words(2, d))
            for (const auto &b : all_words(2, d)) {
                const double ref = haar_moment_unitary({{a[0], x[0]}, {a[1], x[1]}}, {{b[0], x[0]}, {b[1], x[1]}}, d);
                err = std::max(err, std::abs(rho(a[0] * d + a[1], b[0] * d + b[1]) - ref));
            }
        EXPECT_LT(err, 1e-10);
    }
}

TEST(Moments, FirstOrder) {
    for (int d = 2; d <= 4; ++d) {
        for (const char *kind : {"u-dense", "u-fast"}) {
            const auto b = make_backend(kind, d);
            double err = 0.0;
            for (int x = 0; x < d; ++x)
                for (int y = 0; y < d; ++y)
                    for (int xh = 0; xh < d; ++xh)
                        for (int yh = 0; yh < d; ++yh) {
                            const Complex v = moment_tensor(*b, {QueryType::kForward}, {x}, {y}, {xh}, {yh});
                            err = std::max(err, std::abs(v - ((x == xh && y == yh) ? 1.0 / d : 0.0)));
                        }
            EXPECT_LT(err, 1e-12) << kind << " d=" << d;
        }
    }
}

TEST(Moments, Examples) {
    const auto u2 = make_backend("u-dense", 2);
    EXPECT_NEAR(std::abs(moment_tensor(*u2, {QueryType::kForward, QueryType::kForward}, {0, 0}, {0, 0}, {0, 0}, {0, 0}) - 1.0 / 3.0), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(commutant_moment(dynamic_cast<const TableBackend &>(*u2), {QueryType::kForward, QueryType::kForward}, {0, 0}, {0, 0}, {0, 0}, {0, 0}) - 1.0 / 3.0), 0.0, 1e-12);
    const auto s3 = make_backend("s3", 0);
    EXPECT_NEAR(std::abs(moment_tensor(*s3, {QueryType::kForward}, {0}, {0}, {0}, {0}) - 1.0 / 3.0), 0.0, 1e-12);
}

TEST(Moments, ThreeWayUnitary) {
    struct Case {
        int d;
        std::size_t t;
    };
    for (const Case c : {Case{2, 2}, Case{3, 2}, Case{2, 3}}) {
        const auto b = std::make_shared<DenseUnitaryBackend>(c.d);
        std::mt19937_64 rng(11);
        for (int script = 0; script < 6; ++script) {
            std::vector<QueryType> types;
            for (std::size_t k = 0; k < c.t; ++k) types.push_back(kAllTypes[static_cast<std::size_t>(rng() % 4)]);
            const CommutantMoments comm(*b, types);
            double err = 0.0;
            for (int trial = 0; trial < 40; ++trial) {
                const auto x = random_word(rng, c.t, c.d), y = random_word(rng, c.t, c.d);
                // Half the draws reuse the words so that nonzero moments are exercised.
                const bool same = trial % 2 == 0;
                const auto xh = same ? x : random_word(rng, c.t, c.d), yh = same ? y : random_word(rng, c.t, c.d);
                const Complex ref = reference_moment(*b, types, x, y, xh, yh);
                err = std::max(err, std::abs(moment_tensor(*b, types, x, y, xh, yh) - ref));
                err = std::max(err, std::abs(comm(x, y, xh, yh) - ref));
            }
            EXPECT_LT(err, 1e-10) << "d=" << c.d << " script=" << script_string(types);
        }
    }
}

TEST(Moments, ThreeWayFinite) {
    for (const char *name : {"s3", "s4"}) {
        const auto b = std::dynamic_pointer_cast<const TableBackend>(make_backend(name, 0));
        const int d = b->rep_dim();
        std::mt19937_64 rng(5);
        for (int script = 0; script < 8; ++script) {
            std::vector<QueryType> types;
            const std::size_t t = 1 + rng() % 3;
            for (std::size_t k = 0; k < t; ++k) types.push_back(kAllTypes[static_cast<std::size_t>(rng() % 4)]);
            const CommutantMoments comm(*b, types);
            double err = 0.0;
            for (int trial = 0; trial < 30; ++trial) {
                const auto x = random_word(rng, t, d), y = random_word(rng, t, d);
                const bool same = trial % 2 == 0;
                const auto xh = same ? x : random_word(rng, t, d), yh = same ? y : random_word(rng, t, d);
                const Complex ref = reference_moment(*b, types, x, y, xh, yh);
                err = std::max(err, std::abs(moment_tensor(*b, types, x, y, xh, yh) - ref));
                err = std::max(err, std::abs(comm(x, y, xh, yh) - ref));
            }
            EXPECT_LT(err, 1e-12) << name << " " << script_string(types);
        }
    }
}

TEST(Moments, FastMatchesDense) {
    const int d = 3;
    const auto fast = make_backend("u-fast", d), dense = make_backend("u-dense", d);
    std::mt19937_64 rng(9);
    for (std::size_t t = 1; t <= 3; ++t) {
        const std::vector<QueryType> types(t, QueryType::kForward);
        for (int trial = 0; trial < 30; ++trial) {
            const auto x = random_word(rng, t, d), y = random_word(rng, t, d);
            const auto xh = trial % 2 ? x : random_word(rng, t, d), yh = trial % 2 ? y : random_word(rng, t, d);
            EXPECT_NEAR(std::abs(moment_tensor(*fast, types, x, y, xh, yh) - moment_tensor(*dense, types, x, y, xh, yh)), 0.0, 1e-12);
        }
    }
    try {
        moment_tensor(*fast, {QueryType::kInverse}, {0}, {0}, {0}, {0});
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::kUnsupportedQueryType);
    }
}

TEST(Moments, FastLargeAlphabet) {
    const int d = 1 << 20;
    const auto fast = make_backend("u-fast", d);
    const std::vector<QueryType> ff(2, QueryType::kForward);
    // E|U_{11}|^4 = 2 / (d (d + 1)).
    const Complex v = moment_tensor(*fast, ff, {5, 5}, {9, 9}, {5, 5}, {9, 9});
    EXPECT_NEAR(v.real() * d * (d + 1.0), 2.0, 1e-8);
}

TEST(MatrixUnits, TwoQubitProjectors) {
    const DenseUnitaryBackend b(2);
    const auto paths = path_isometries(b, {Factor::kDefining, Factor::kDefining});
    ASSERT_EQ(paths.size(), 2u);
    Eigen::MatrixXcd swap = Eigen::MatrixXcd::Zero(4, 4);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) swap(j * 2 + i, i * 2 + j) = 1.0;
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(4, 4);
    for (const auto &p : paths) {
        const Eigen::MatrixXcd e = matrix_unit(p, p);
        const Eigen::MatrixXcd expect = p.lambda == Label{2, 0} ? Eigen::MatrixXcd((id + swap) / 2) : Eigen::MatrixXcd((id - swap) / 2);
        EXPECT_LT((e - expect).cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(MatrixUnits, AlgebraAndCommutation) {
    const auto check = [](const TableBackend &b, const std::vector<Factor> &factors, const std::vector<Eigen::MatrixXcd> &actions) {
        const auto paths = path_isometries(b, factors);
        double err = 0.0;
        for (const auto &t : paths)
            for (const auto &s : paths) {
                if (t.lambda != s.lambda) continue;
                const Eigen::MatrixXcd e = matrix_unit(t, s);
                const double tr = &t == &s ? b.dim(t.lambda) : 0.0;
                err = std::max(err, std::abs(e.trace() - tr));
                for (const auto &a : actions) err = std::max(err, (e * a - a * e).cwiseAbs().maxCoeff());
                for (const auto &s2 : paths)
                    for (const auto &t2 : paths) {
                        if (s2.lambda != t2.lambda) continue;
                        Eigen::MatrixXcd expect = Eigen::MatrixXcd::Zero(e.rows(), e.cols());
                        if (t.lambda == s2.lambda && &s == &s2) expect = matrix_unit(t, t2);
                        err = std::max(err, (e * matrix_unit(s2, t2) - expect).cwiseAbs().maxCoeff());
                    }
            }
        return err;
    };
    for (int d = 2; d <= 3; ++d) {
        const DenseUnitaryBackend b(d);
        for (std::size_t t = 1; t <= 3; ++t) {
            std::vector<Factor> factors;
            for (std::size_t k = 0; k < t; ++k) factors.push_back(k % 2 ? Factor::kDual : Factor::kDefining);
            std::vector<Eigen::MatrixXcd> gens;
            for (int i = 1; i <= d; ++i)
                for (int j = 1; j <= d; ++j) {
                    const auto n = static_cast<Eigen::Index>(std::pow(d, t));
                    Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(n, n);
                    for (std::size_t k = 0; k < t; ++k) {
                        Eigen::MatrixXcd term = Eigen::MatrixXcd::Ones(1, 1);
                        for (std::size_t m = 0; m < t; ++m)
                            term = kron(term, m == k ? Eigen::MatrixXcd(factor_generator(factors[m], d, i, j).cast<Complex>()) : Eigen::MatrixXcd(Eigen::MatrixXcd::Identity(d, d)));
                        g += term;
                    }
                    gens.push_back(g);
                }
            EXPECT_LT(check(b, factors, gens), 1e-10) << "d=" << d << " t=" << t;
        }
    }
    for (const char *name : {"S3", "S4"}) {
        const FiniteGroupBackend b(builtin_group(name));
        for (std::size_t t = 1; t <= 2; ++t) {
            std::vector<Factor> factors(t, Factor::kDefining);
            if (t == 2) factors[1] = Factor::kDual;
            std::vector<Eigen::MatrixXcd> acts;
            for (int e = 0; e < b.group().order; ++e) {
                Eigen::MatrixXcd a = Eigen::MatrixXcd::Ones(1, 1);
                for (Factor f : factors) a = kron(a, rep_matrix(b.group(), e, f));
                acts.push_back(a);
            }
            EXPECT_LT(check(b, factors, acts), 1e-10) << name << " t=" << t;
        }
    }
}

TEST(SystemOperator, IdentitySwapHadamard) {
    const auto b = make_backend("u-dense", 2);
    OracleState s = apply_oracle(init_vacuum(b, {2, 2}, {0, 1}), QueryType::kForward, 0);
    const OracleState same = apply_system_operator(s, Eigen::MatrixXcd::Identity(2, 2), {1});
    EXPECT_EQ(same.amps, s.amps);
    Eigen::MatrixXcd swap = Eigen::MatrixXcd::Zero(4, 4);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) swap(j * 2 + i, i * 2 + j) = 1.0;
    const OracleState swapped = apply_system_operator(s, swap, {0, 1});
    for (const auto &[k, v] : s.amps) {
        OracleKey k2 = k;
        std::swap(k2.sys[0], k2.sys[1]);
        EXPECT_EQ(swapped.amps.at(k2), v);
    }
    Eigen::MatrixXcd h(2, 2);
    h << 1, 1, 1, -1;
    h /= std::sqrt(2.0);
    const OracleState hs = apply_system_operator(s, h, {1});
    EXPECT_NEAR(hs.norm_squared(), 1.0, 1e-14);
    EXPECT_EQ(hs.amps.size(), 2 * s.amps.size());
    try {
        apply_system_operator(s, h, {0, 1});
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::kDimensionMismatch);
    }
}

TEST(SystemOperator, VacuumDensity) {
    Eigen::VectorXcd psi(2);
    psi << Complex(0.6, 0.0), Complex(0.0, 0.8);
    const OracleState s = init_vacuum_state(make_backend("u-fast", 2), {2}, psi);
    EXPECT_LT((trace_out_aux(s) - psi * psi.adjoint()).cwiseAbs().maxCoeff(), 1e-15);
    try {
        trace_out_aux(s, 1);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::kCapExceeded);
    }
}

TEST(Snapshot, RoundTrip) {
    const auto b = make_backend("u-fast", 4);
    OracleState s = init_vacuum(b, {4, 4}, {1, 3});
    s = apply_oracle(apply_oracle(s, QueryType::kForward, 0), QueryType::kForward, 1);
    std::stringstream buf;
    write_snapshot(buf, s);
    const OracleState r = read_snapshot(buf, b);
    EXPECT_EQ(r.amps, s.amps);
    EXPECT_EQ(r.sys_dims, s.sys_dims);
    std::stringstream buf2;
    write_snapshot(buf2, s);
    try {
        read_snapshot(buf2, make_backend("u-dense", 4));
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::kInconsistentInputs);
    }
}
