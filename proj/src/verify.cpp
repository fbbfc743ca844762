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


#include "haarcg/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <random>
#include <set>

#include "haarcg/cg.hpp"
#include "haarcg/errors.hpp"
#include "haarcg/finite_group.hpp"
#include "haarcg/gtcompress.hpp"
#include "haarcg/haar.hpp"
#include "haarcg/oracle.hpp"
#include "haarcg/repcore.hpp"
#include "haarcg/twirl.hpp"

namespace haarcg {

namespace {

class Timer {
  public:
    Timer() : start_(std::chrono::steady_clock::now()) {}
    double ms() const { return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count(); }

  private:
    std::chrono::steady_clock::time_point start_;
};

HighestWeight padded(const std::vector<int> &parts, int d) {
    std::vector<int> e(static_cast<std::size_t>(d), 0);
    std::copy(parts.begin(), parts.end(), e.begin());
    return HighestWeight(e);
}

std::vector<HighestWeight> young_weights(int d, int max_boxes) {
    std::vector<HighestWeight> out;
    for (int t = 0; t <= max_boxes; ++t)
        for (const auto &parts : partitions(t, d)) out.push_back(padded(parts, d));
    return out;
}

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

std::vector<int> random_word(std::mt19937_64 &rng, std::size_t t, int d) {
    std::uniform_int_distribution<int> pick(0, d - 1);
    std::vector<int> w(t);
    for (auto &v : w) v = pick(rng);
    return w;
}

const std::vector<QueryType> kTypes{QueryType::kForward, QueryType::kConjugate, QueryType::kTranspose, QueryType::kInverse};

Eigen::MatrixXcd kron(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b) {
    Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

// Index quadruples for one script: everything, or random draws with half repeating the words.
template <typename Fn>
void for_assignments(std::size_t t, int d, int samples, std::mt19937_64 &rng, Fn &&fn) {
    if (samples == 0) {
        const auto words = all_words(t, d);
        for (const auto &x : words)
            for (const auto &y : words)
                for (const auto &xh : words)
                    for (const auto &yh : words) fn(x, y, xh, yh);
        return;
    }
    for (int s = 0; s < samples; ++s) {
        const auto x = random_word(rng, t, d), y = random_word(rng, t, d);
        if (s % 2 == 0) {
            fn(x, y, x, y);
        } else {
            fn(x, y, random_word(rng, t, d), random_word(rng, t, d));
        }
    }
}

// moment_tensor with chain amplitudes cached per (x, y).
class CachedMoments {
  public:
    CachedMoments(const OracleBackend &b, std::vector<QueryType> script) : b_(b), script_(std::move(script)) {}

    Complex operator()(const std::vector<int> &x, const std::vector<int> &y, const std::vector<int> &xh,
                       const std::vector<int> &yh) {
        const ChainAmplitudes &a = chain(x, y);
        const ChainAmplitudes &c = chain(xh, yh);
        Complex sum = 0.0;
        for (const auto &[k, v] : a) {
            const auto it = c.find(k);
            if (it != c.end()) sum += std::conj(it->second) * v;
        }
        return sum;
    }

  private:
    const ChainAmplitudes &chain(const std::vector<int> &x, const std::vector<int> &y) {
        auto &slot = cache_[{x, y}];
        if (!slot) slot = std::make_unique<ChainAmplitudes>(chain_amplitudes(b_, script_, x, y));
        return *slot;
    }

    const OracleBackend &b_;
    std::vector<QueryType> script_;
    std::map<std::pair<std::vector<int>, std::vector<int>>, std::unique_ptr<ChainAmplitudes>> cache_;
};

void check_matrix_units(SuiteResult &r, const TableBackend &b, const std::vector<Factor> &factors,
                        const std::vector<Eigen::MatrixXcd> &actions, double tol, const std::string &tag) {
    const auto paths = path_isometries(b, factors);
    double err = 0.0;
    for (const auto &t : paths)
        for (const auto &s : paths) {
            if (t.lambda != s.lambda) continue;
            const Eigen::MatrixXcd e = matrix_unit(t, s);
            err = std::max(err, std::abs(e.trace() - (&t == &s ? b.dim(t.lambda) : 0.0)));
            for (const auto &a : actions) err = std::max(err, (e * a - a * e).cwiseAbs().maxCoeff());
            for (const auto &s2 : paths)
                for (const auto &t2 : paths) {
                    if (s2.lambda != t2.lambda) continue;
                    const Eigen::MatrixXcd prod = e * matrix_unit(s2, t2);
                    const double dev = (&s == &s2 && t.lambda == s2.lambda) ? (prod - matrix_unit(t, t2)).cwiseAbs().maxCoeff()
                                                                             : prod.cwiseAbs().maxCoeff();
                    err = std::max(err, dev);
                }
        }
    r.record(err, tol, tag);
}

}  // namespace

void SuiteResult::record(double dev, double tol, const std::string &what) {
    ++checks;
    max_deviation = std::max(max_deviation, dev);
    if (!(dev <= tol)) {
        pass = false;
        if (notes.size() < 20) notes.push_back(what + ": deviation " + std::to_string(dev));
    }
}

void SuiteResult::fail(const std::string &what) {
    ++checks;
    pass = false;
    if (notes.size() < 20) notes.push_back(what);
}

SuiteResult suite_gtcompress(int max_d, int max_boxes) {
    const Timer timer;
    SuiteResult r;
    r.name = "gtcompress";
    const GTPattern worked{{{0}, {2, 0}, {2, 0, 0}, {2, 1, 0, 0}, {3, 2, 0, 0, 0}}};
    const CompressedGT c = compress(worked);
    if (c.mtilde != GTPattern{{{2}, {2, 1}, {3, 2, 0}}} || c.p != std::vector<int>{2, 4, 5} || decompress(c, 5) != worked) {
        r.fail("worked example: got " + to_string(c.mtilde));
    } else {
        ++r.checks;
        r.notes.push_back("worked example: M~=((2),(2,1),(3,2,0)), p=(2,4,5)");
    }
    for (int d = 1; d <= max_d; ++d)
        for (const auto &hw : young_weights(d, max_boxes))
            for (const auto &m : enumerate_gt(hw)) {
                ++r.checks;
                if (decompress(compress(m), d) != m) r.fail("round trip " + to_string(m));
            }
    for (int d = 1; d <= 3; ++d) {
        std::set<CompressedGT> labels;
        for (const auto &hw : young_weights(d, 3))
            for (const auto &m : enumerate_gt(hw)) labels.insert(compress(m));
        std::set<PreprocessResult> seen;
        for (const auto &lab : labels) {
            if (lab.p.size() > 2) continue;
            for (int x = 1; x <= d; ++x) {
                ++r.checks;
                const PreprocessResult p = apply_P(lab.p, lab.mtilde, x);
                if (!seen.insert(p).second) r.fail("apply_P collision at d=" + std::to_string(d));
                if (recover_c(p.xtilde, p.n) != op_A(lab.p, x).c) r.fail("c not recovered");
            }
        }
    }
    r.runtime_ms = timer.ms();
    return r;
}

SuiteResult suite_cg(int max_d, int max_boxes, double tol) {
    const Timer timer;
    SuiteResult r;
    r.name = "cg";
    for (int d = 1; d <= max_d; ++d) {
        for (const auto &hw : young_weights(d, max_boxes)) {
            for (Factor f : {Factor::kDefining, Factor::kDual}) {
                const CGTable t = cg_dense(hw, f);
                const std::string tag = to_string(hw) + " " + factor_name(f);
                r.record(isometry_error(t), tol, "isometry " + tag);
                r.record(intertwining_error(t), tol, "intertwining " + tag);
            }
            const CGTable t = cg_dense(hw, Factor::kDefining);
            const auto basis = enumerate_gt(hw);
            std::vector<int> parts;
            for (int v : hw.entries)
                if (v > 0) parts.push_back(v);
            double err = 0.0;
            for (const auto &b : t.blocks) {
                const auto mu_basis = enumerate_gt(HighestWeight(b.mu));
                int row = 0;
                for (int i = 0; i < d; ++i)
                    if (b.mu[static_cast<std::size_t>(i)] != hw.entries[static_cast<std::size_t>(i)]) row = i + 1;
                for (std::size_t a = 0; a < basis.size(); ++a)
                    for (int x = 1; x <= d; ++x) {
                        Eigen::VectorXd fast = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(mu_basis.size()));
                        for (const auto &term : cg_fast(parts, row, compress(basis[a]), x, d))
                            fast(static_cast<Eigen::Index>(pattern_index(mu_basis, decompress(term.m_out, d)))) += term.coeff;
                        const Eigen::VectorXd dense = b.isometry.row(static_cast<Eigen::Index>(a) * d + x - 1).real().transpose();
                        err = std::max(err, (fast - dense).cwiseAbs().maxCoeff());
                    }
            }
            r.record(err, tol, "fast vs dense " + to_string(hw));
        }
    }
    r.runtime_ms = timer.ms();
    return r;
}

SuiteResult suite_weingarten(int max_t, double tol) {
    const Timer timer;
    SuiteResult r;
    r.name = "weingarten";
    for (int t = 1; t <= max_t; ++t) {
        for (int d = 1; d <= t + 2; ++d) {
            const WeingartenTable &tab = weingarten_table(t, d);
            for (std::size_t i = 0; i < tab.perms.size(); ++i) {
                const CycleType cls = cycle_type(tab.perms[i]);
                const Rational cs = weingarten_charsum(cls, d, t);
                if (d >= t) {
                    ++r.checks;
                    if (!(weingarten(cls, d, t) == cs)) r.fail("Gram vs character sum t=" + std::to_string(t) + " d=" + std::to_string(d));
                }
                r.record(std::abs(tab.values[i] - cs.to_double()), tol, "table vs character sum");
            }
            if (d < t) continue;
            // Gram residual: sum_tau Wg(sigma tau^-1) d^cycles(tau) = delta_{sigma, e}.
            for (const auto &sigma : tab.perms) {
                double sum = 0.0;
                for (const auto &tau : tab.perms) {
                    Permutation inv(tau.size()), prod(tau.size());
                    for (std::size_t k = 0; k < tau.size(); ++k) inv[static_cast<std::size_t>(tau[k])] = static_cast<int>(k);
                    for (std::size_t k = 0; k < tau.size(); ++k) prod[k] = sigma[static_cast<std::size_t>(inv[k])];
                    sum += tab.values[static_cast<std::size_t>(tab.index.at(prod))] * std::pow(d, cycle_count(tau));
                }
                const bool id = cycle_count(sigma) == t;
                r.record(std::abs(sum - (id ? 1.0 : 0.0)), tol, "Gram residual");
            }
        }
    }
    r.record(std::abs(weingarten({1, 1}, 2, 2).to_double() - 1.0 / 3.0), 0.0, "Wg(e) t=2 d=2");
    r.record(std::abs(weingarten({2}, 2, 2).to_double() + 1.0 / 6.0), 0.0, "Wg(transposition) t=2 d=2");
    r.runtime_ms = timer.ms();
    return r;
}

SuiteResult suite_first_order(const std::vector<int> &ds, double tol) {
    const Timer timer;
    SuiteResult r;
    r.name = "first-order";
    for (int d : ds) {
        for (const char *kind : {"u-fast", "u-dense"}) {
            const auto b = make_backend(kind, d);
            CachedMoments mt(*b, {QueryType::kForward});
            for (int x = 0; x < d; ++x)
                for (int y = 0; y < d; ++y)
                    for (int xh = 0; xh < d; ++xh)
                        for (int yh = 0; yh < d; ++yh) {
                            const double expect = (x == xh && y == yh) ? 1.0 / d : 0.0;
                            r.record(std::abs(mt({x}, {y}, {xh}, {yh}) - expect), tol, std::string(kind) + " d=" + std::to_string(d));
                        }
        }
    }
    r.runtime_ms = timer.ms();
    return r;
}

SuiteResult suite_three_way(int d, const std::vector<QueryType> &script, int samples, std::uint64_t seed, double tol) {
    const Timer timer;
    SuiteResult r;
    r.name = "three-way U" + std::to_string(d) + " " + script_string(script);
    const DenseUnitaryBackend dense(d);
    CachedMoments oracle(dense, script);
    const CommutantMoments comm(dense, script);
    std::mt19937_64 rng(seed);
    for_assignments(script.size(), d, samples, rng, [&](const auto &x, const auto &y, const auto &xh, const auto &yh) {
        const double ref = haar_moment_queries(script, x, y, xh, yh, d);
        const Complex m = oracle(x, y, xh, yh);
        r.record(std::abs(m - ref), tol, "oracle vs Weingarten");
        r.record(std::abs(comm(x, y, xh, yh) - ref), tol, "commutant vs Weingarten");
        r.record(std::abs(comm(x, y, xh, yh) - m), tol, "oracle vs commutant");
    });
    r.runtime_ms = timer.ms();
    return r;
}

SuiteResult suite_finite_moments(const std::string &group, int max_len, int random_scripts, std::uint64_t seed, double tol) {
    const Timer timer;
    SuiteResult r;
    r.name = "finite moments " + group;
    const FiniteGroupBackend b(builtin_group(group));
    const int d = b.rep_dim();
    std::mt19937_64 rng(seed);
    std::vector<std::vector<QueryType>> scripts;
    for (QueryType q : kTypes)
        for (int len = 1; len <= max_len; ++len) scripts.emplace_back(static_cast<std::size_t>(len), q);
    for (int s = 0; s < random_scripts; ++s) {
        const std::size_t len = 1 + rng() % static_cast<std::uint64_t>(max_len);
        std::vector<QueryType> script;
        for (std::size_t k = 0; k < len; ++k) script.push_back(kTypes[rng() % 4]);
        scripts.push_back(std::move(script));
    }
    for (const auto &script : scripts) {
        CachedMoments oracle(b, script);
        const CommutantMoments comm(b, script);
        const double total = std::pow(static_cast<double>(d), 4.0 * static_cast<double>(script.size()));
        const int samples = total <= 4096 ? 0 : 400;
        for_assignments(script.size(), d, samples, rng, [&](const auto &x, const auto &y, const auto &xh, const auto &yh) {
            const Complex ref = reference_moment(b, script, x, y, xh, yh);
            r.record(std::abs(oracle(x, y, xh, yh) - ref), tol, "oracle " + script_string(script));
            r.record(std::abs(comm(x, y, xh, yh) - ref), tol, "commutant " + script_string(script));
        });
    }
    r.notes.push_back(std::to_string(scripts.size()) + " scripts");
    r.runtime_ms = timer.ms();
    return r;
}

SuiteResult suite_matrix_units_unitary(int max_d, int max_t, double tol) {
    const Timer timer;
    SuiteResult r;
    r.name = "matrix units U(d)";
    for (int d = 1; d <= max_d; ++d) {
        const DenseUnitaryBackend b(d);
        for (int t = 1; t <= max_t; ++t) {
            for (bool mixed : {false, true}) {
                std::vector<Factor> factors;
                for (int k = 0; k < t; ++k) factors.push_back(mixed && k % 2 ? Factor::kDual : Factor::kDefining);
                const auto n = static_cast<Eigen::Index>(std::pow(d, t));
                std::vector<Eigen::MatrixXcd> gens;
                for (int i = 1; i <= d; ++i)
                    for (int j = 1; j <= d; ++j) {
                        Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(n, n);
                        for (int k = 0; k < t; ++k) {
                            Eigen::MatrixXcd term = Eigen::MatrixXcd::Ones(1, 1);
                            for (int m = 0; m < t; ++m) {
                                const Eigen::MatrixXcd f = m == k ? Eigen::MatrixXcd(factor_generator(factors[static_cast<std::size_t>(m)], d, i, j).cast<Complex>())
                                                                  : Eigen::MatrixXcd(Eigen::MatrixXcd::Identity(d, d));
                                term = kron(term, f);
                            }
                            g += term;
                        }
                        gens.push_back(std::move(g));
                    }
                check_matrix_units(r, b, factors, gens, tol, "U(" + std::to_string(d) + ") t=" + std::to_string(t) + (mixed ? " mixed" : ""));
            }
        }
    }
    r.runtime_ms = timer.ms();
    return r;
}

SuiteResult suite_matrix_units_finite(const std::string &group, int max_t, double tol) {
    const Timer timer;
    SuiteResult r;
    r.name = "matrix units " + group;
    const FiniteGroupBackend b(builtin_group(group));
    for (int t = 1; t <= max_t; ++t) {
        for (bool mixed : {false, true}) {
            std::vector<Factor> factors(static_cast<std::size_t>(t), Factor::kDefining);
            if (mixed) factors.back() = Factor::kDual;
            std::vector<Eigen::MatrixXcd> acts;
            for (int e = 0; e < b.group().order; ++e) {
                Eigen::MatrixXcd a = Eigen::MatrixXcd::Ones(1, 1);
                for (Factor f : factors) a = kron(a, rep_matrix(b.group(), e, f));
                acts.push_back(std::move(a));
            }
            check_matrix_units(r, b, factors, acts, tol, group + " t=" + std::to_string(t) + (mixed ? " mixed" : ""));
        }
    }
    r.runtime_ms = timer.ms();
    return r;
}

BenchRow bench_forward(int d, int t, std::uint64_t seed) {
    const FastUnitaryBackend b(d);
    std::mt19937_64 rng(seed);
    std::vector<int> symbols;
    if (d >= 2 * t) {
        std::set<int> used;
        std::uniform_int_distribution<int> pick(0, d - 1);
        while (static_cast<int>(symbols.size()) < 2 * t) {
            const int v = pick(rng);
            if (used.insert(v).second) symbols.push_back(v);
        }
    } else {
        symbols = random_word(rng, static_cast<std::size_t>(2 * t), d);
    }
    BenchRow row{d, t, 0.0, 0, 0};
    const Timer timer;
    ChainAmplitudes cur{{ChainKey{b.vacuum_irrep(), b.vacuum_basis(), b.vacuum_basis()}, 1.0}};
    for (int k = 0; k < t; ++k) {
        ChainAmplitudes next;
        for (const auto &[key, amp] : cur) {
            b.multiply(key.lambda, key.ket, key.bra, QueryType::kForward, symbols[static_cast<std::size_t>(2 * k)],
                       symbols[static_cast<std::size_t>(2 * k + 1)],
                       [&](const Label &mu, const Label &i, const Label &j, Complex c) { next[ChainKey{mu, i, j}] += c * amp; });
        }
        cur = std::move(next);
        row.peak_keys = std::max(row.peak_keys, cur.size());
        for (const auto &[key, amp] : cur) row.peak_key_bits = std::max(row.peak_key_bits, b.key_bits(key.lambda, key.ket, key.bra));
    }
    row.wall_ms = timer.ms();
    return row;
}

SuiteResult suite_scaling(int t, const std::vector<int> &ds, double time_limit_ms, std::uint64_t seed, std::vector<BenchRow> *rows) {
    const Timer timer;
    SuiteResult r;
    r.name = "scaling t=" + std::to_string(t);
    std::vector<BenchRow> out;
    for (int d : ds) out.push_back(bench_forward(d, t, seed));
    if (!out.empty()) {
        const BenchRow &last = out.back();
        r.record(last.wall_ms / time_limit_ms, 1.0, "wall time at d=" + std::to_string(last.d) + " (fraction of limit)");
        r.notes.push_back("d=" + std::to_string(last.d) + ": " + std::to_string(last.wall_ms) + " ms, " + std::to_string(last.peak_key_bits) + " bits/key");
    }
    if (out.size() >= 3) {
        // Least-squares line bits = a + b log2 d.
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        const double n = static_cast<double>(out.size());
        for (const auto &row : out) {
            const double x = std::log2(static_cast<double>(row.d)), y = static_cast<double>(row.peak_key_bits);
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
        }
        const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        const double icpt = (sy - slope * sx) / n;
        double ss_res = 0, ss_tot = 0;
        for (const auto &row : out) {
            const double x = std::log2(static_cast<double>(row.d)), y = static_cast<double>(row.peak_key_bits);
            ss_res += (y - icpt - slope * x) * (y - icpt - slope * x);
            ss_tot += (y - sy / n) * (y - sy / n);
        }
        const double r2 = ss_tot == 0.0 ? 0.0 : 1.0 - ss_res / ss_tot;
        r.record(1.0 - r2, 1e-3, "linear fit of key bits in log2 d (1 - R^2)");
        if (slope <= 0.0) r.fail("key bits do not grow with log2 d");
        r.notes.push_back("bits/key ~ " + std::to_string(icpt) + " + " + std::to_string(slope) + " log2 d, R^2 = " + std::to_string(r2));
    }
    if (rows) *rows = out;
    r.runtime_ms = timer.ms();
    return r;
}

SuiteResult suite_twirl(const std::vector<std::string> &combs, double tol, const std::string &engine) {
    const Timer timer;
    SuiteResult r;
    r.name = "twirl";
    Eigen::MatrixXcd h(2, 2), ph(2, 2);
    h << 1, 1, 1, -1;
    h /= std::sqrt(2.0);
    ph << 1, 0, 0, std::polar(1.0, std::numbers::pi / 4);
    const std::vector<Eigen::MatrixXcd> us{Eigen::MatrixXcd::Identity(2, 2), h, ph};
    const std::map<std::string, double> expected_delta{{"identity", 0.75}, {"u", 0.5}, {"perfect", 0.0}};
    for (const auto &name : combs) {
        const Comb comb = builtin_comb(name, 2);
        const TwirlReport rep = verify_twirl(comb, us, engine);
        if (const auto it = expected_delta.find(name); it != expected_delta.end())
            r.record(std::abs(rep.delta - it->second), 1e-12, name + " delta");
        r.record(std::abs(rep.fidelity - average_inversion_fidelity_clifford(comb)), 1e-12, name + " Weingarten vs design fidelity");
        for (std::size_t i = 0; i < rep.cases.size(); ++i) {
            const auto &c = rep.cases[i];
            const std::string tag = name + " U#" + std::to_string(i);
            r.record(c.oracle_deviation, tol, tag + " oracle path vs D_eta o U^-1");
            r.record(c.reference_deviation, tol, tag + " reference vs D_eta o U^-1");
            r.record(c.path_agreement, tol, tag + " oracle vs reference");
        }
        r.notes.push_back(name + ": delta=" + std::to_string(rep.delta) + " eta=" + std::to_string(rep.eta));
    }
    r.runtime_ms = timer.ms();
    return r;
}

SuiteResult suite_permutation(int random_count, std::uint64_t seed) {
    const Timer timer;
    SuiteResult r;
    r.name = "permutation oracles";
    std::vector<std::vector<int>> cases;
    std::vector<int> g{0, 1, 2};
    do {
        cases.push_back(g);
    } while (std::next_permutation(g.begin(), g.end()));
    std::mt19937_64 rng(seed);
    for (int k = 0; k < random_count; ++k) {
        std::vector<int> p(2 + rng() % 5);
        std::iota(p.begin(), p.end(), 0);
        std::shuffle(p.begin(), p.end(), rng);
        cases.push_back(std::move(p));
    }
    int printed_fail = 0, adjoint_fail = 0;
    for (const auto &p : cases) {
        const std::string tag = "d=" + std::to_string(p.size());
        const long u_bad = (perm_U_from_V(p) - perm_U(p)).cwiseAbs().sum();
        r.record(static_cast<double>(u_bad), 0.0, "U from V " + tag);
        const long v_bad = (perm_V_from_U(p) - perm_V(p)).cwiseAbs().sum();
        ++r.checks;
        r.max_deviation = std::max(r.max_deviation, static_cast<double>(v_bad));
        if (v_bad != 0) {
            r.pass = false;
            ++printed_fail;
        }
        if (perm_V_from_U_adjoint(p) != perm_V(p)) ++adjoint_fail;
    }
    r.notes.push_back("V from U as written: " + std::to_string(printed_fail) + "/" + std::to_string(cases.size()) + " permutations differ");
    r.notes.push_back("V from U with U_{g^-1}^dagger: " + std::to_string(adjoint_fail) + "/" + std::to_string(cases.size()) + " differ");
    r.runtime_ms = timer.ms();
    return r;
}

}  // namespace haarcg
