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

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <memory>
#include <numbers>

#include "json.hpp"

#include "haarcg/errors.hpp"
#include "haarcg/haar.hpp"
#include "haarcg/json_util.hpp"
#include "haarcg/oracle.hpp"

namespace haarcg {

namespace {

using Cplx = std::complex<double>;

// Matrix with polynomial entries in the Haar unitary V.
struct PolyMat {
    Eigen::Index rows = 0;
    Eigen::Index cols = 0;
    std::vector<HaarPolynomial> v;

    PolyMat(Eigen::Index r, Eigen::Index c) : rows(r), cols(c), v(static_cast<std::size_t>(r * c)) {}
    HaarPolynomial &at(Eigen::Index r, Eigen::Index c) { return v[static_cast<std::size_t>(r * cols + c)]; }
    const HaarPolynomial &at(Eigen::Index r, Eigen::Index c) const { return v[static_cast<std::size_t>(r * cols + c)]; }
};

PolyMat haar_matrix(int d, bool adjoint) {
    PolyMat m(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) m.at(i, j) = adjoint ? HaarPolynomial::entry(j, i, true) : HaarPolynomial::entry(i, j);
    return m;
}

PolyMat mul(const PolyMat &a, const Eigen::MatrixXcd &b) {
    PolyMat out(a.rows, b.cols());
    for (Eigen::Index i = 0; i < a.rows; ++i)
        for (Eigen::Index k = 0; k < a.cols; ++k)
            for (Eigen::Index j = 0; j < b.cols(); ++j)
                if (b(k, j) != 0.0) out.at(i, j) += a.at(i, k).scaled(b(k, j));
    return out;
}

PolyMat mul(const Eigen::MatrixXcd &a, const PolyMat &b) {
    PolyMat out(a.rows(), b.cols);
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index k = 0; k < a.cols(); ++k)
            if (a(i, k) != 0.0)
                for (Eigen::Index j = 0; j < b.cols; ++j) out.at(i, j) += b.at(k, j).scaled(a(i, k));
    return out;
}

PolyMat mul(const PolyMat &a, const PolyMat &b) {
    PolyMat out(a.rows, b.cols);
    for (Eigen::Index i = 0; i < a.rows; ++i)
        for (Eigen::Index k = 0; k < a.cols; ++k)
            if (!a.at(i, k).is_zero())
                for (Eigen::Index j = 0; j < b.cols; ++j) out.at(i, j) += a.at(i, k) * b.at(k, j);
    return out;
}

PolyMat kron_identity(const PolyMat &a, int m) {
    PolyMat out(a.rows * m, a.cols * m);
    for (Eigen::Index i = 0; i < a.rows; ++i)
        for (Eigen::Index j = 0; j < a.cols; ++j)
            for (int k = 0; k < m; ++k) out.at(i * m + k, j * m + k) = a.at(i, j);
    return out;
}

Eigen::MatrixXcd kron_identity(const Eigen::MatrixXcd &a, int m) {
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(a.rows() * m, a.cols() * m);
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            for (int k = 0; k < m; ++k) out(i * m + k, j * m + k) = a(i, j);
    return out;
}

// Kraus operators of C[W] as polynomial matrices, given W.
std::vector<PolyMat> comb_kraus_poly(const Comb &comb, const PolyMat &w) {
    const PolyMat x = kron_identity(w, comb.memory_dim);
    std::vector<PolyMat> out;
    for (const auto &e : comb.pre) {
        const PolyMat xe = mul(x, e);
        for (const auto &p : comb.post) out.push_back(mul(p, xe));
    }
    return out;
}

double max_abs(const Eigen::MatrixXcd &m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

Eigen::MatrixXcd choi_conjugated_input(const std::vector<Eigen::MatrixXcd> &kraus, const Eigen::MatrixXcd &v) {
    std::vector<Eigen::MatrixXcd> kv;
    for (const auto &k : kraus) kv.push_back(k * v);
    return choi_from_kraus(kv);
}

Eigen::MatrixXcd reference_weingarten(const Comb &comb, const Eigen::MatrixXcd &u) {
    const int d = comb.d;
    const PolyMat v = haar_matrix(d, false);
    const PolyMat w = comb.slot == SlotKind::kForward ? mul(v, u) : mul(Eigen::MatrixXcd(u.adjoint()), haar_matrix(d, true));
    std::vector<PolyMat> amps;
    for (const auto &k : comb_kraus_poly(comb, w)) amps.push_back(mul(k, v));
    const Eigen::Index n = static_cast<Eigen::Index>(d) * d;
    Eigen::MatrixXcd j = Eigen::MatrixXcd::Zero(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
        for (Eigen::Index c = r; c < n; ++c) {
            HaarPolynomial sum;
            for (const auto &a : amps) sum += a.at(r / d, r % d) * a.at(c / d, c % d).conj();
            j(r, c) = sum.expectation(d);
            j(c, r) = std::conj(j(r, c));
        }
    }
    return j;
}

Eigen::MatrixXcd reference_clifford(const Comb &comb, const Eigen::MatrixXcd &u) {
    const auto group = clifford_group_1q();
    Eigen::MatrixXcd j = Eigen::MatrixXcd::Zero(4, 4);
    for (const auto &v : group) j += choi_conjugated_input(comb_kraus(comb, v * u), v);
    return j / static_cast<double>(group.size());
}

Eigen::MatrixXcd oracle_twirl(const Comb &comb, const Eigen::MatrixXcd &u, const std::string &engine) {
    const int d = comb.d, m = comb.memory_dim;
    const int k1 = static_cast<int>(comb.pre.size()), k2 = static_cast<int>(comb.post.size());
    enum Reg { kRef, kSys, kSlot, kMem, kPreEnv, kPostEnv };
    const std::vector<int> dims{d, d, d, m, k1, k2};
    std::shared_ptr<const OracleBackend> backend;
    if (engine == "fast" && comb.slot == SlotKind::kForward) {
        backend = std::make_shared<FastUnitaryBackend>(d);
    } else if (engine == "fast" || engine == "dense") {
        backend = std::make_shared<DenseUnitaryBackend>(d);
    } else {
        throw Error(ErrorKind::kFormatError, "unknown engine '" + engine + "'");
    }

    // (1/sqrt d) sum_k |k>_ref |k>_sys.
    std::size_t total = 1;
    for (int v : dims) total *= static_cast<std::size_t>(v);
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(total));
    const std::size_t stride = total / static_cast<std::size_t>(d * d);
    for (int k = 0; k < d; ++k) psi(static_cast<Eigen::Index>((static_cast<std::size_t>(k) * d + static_cast<std::size_t>(k)) * stride)) = 1.0 / std::sqrt(d);
    OracleState s = init_vacuum_state(backend, dims, psi);

    s = apply_oracle(s, QueryType::kForward, kSys);

    // Pre slice: |s, 0, 0, 0> -> sum_i (E_i |s>)_{slot, mem} |i>, system register reset.
    {
        const Eigen::Index n = static_cast<Eigen::Index>(d) * d * m * k1;
        Eigen::MatrixXcd op = Eigen::MatrixXcd::Zero(n, n);
        for (int in = 0; in < d; ++in) {
            const Eigen::Index col = static_cast<Eigen::Index>(in) * d * m * k1;
            for (int i = 0; i < k1; ++i)
                for (int q = 0; q < d; ++q)
                    for (int mem = 0; mem < m; ++mem)
                        op((static_cast<Eigen::Index>(q) * m + mem) * k1 + i, col) = comb.pre[static_cast<std::size_t>(i)](q * m + mem, in);
        }
        s = apply_system_operator(s, op, {kSys, kSlot, kMem, kPreEnv});
    }

    if (comb.slot == SlotKind::kForward) {
        s = apply_system_operator(s, u, {kSlot});
        s = apply_oracle(s, QueryType::kForward, kSlot);
    } else {
        s = apply_oracle(s, QueryType::kInverse, kSlot);
        s = apply_system_operator(s, u.adjoint(), {kSlot});
    }

    // Post slice: |0, q, mem, 0> -> sum_j (P_j |q, mem>)_sys |j>, slot and memory reset.
    {
        const Eigen::Index n = static_cast<Eigen::Index>(d) * d * m * k2;
        Eigen::MatrixXcd op = Eigen::MatrixXcd::Zero(n, n);
        for (int q = 0; q < d; ++q)
            for (int mem = 0; mem < m; ++mem) {
                const Eigen::Index col = (static_cast<Eigen::Index>(q) * m + mem) * k2;
                for (int j = 0; j < k2; ++j)
                    for (int o = 0; o < d; ++o)
                        op(static_cast<Eigen::Index>(o) * d * m * k2 + j, col) = comb.post[static_cast<std::size_t>(j)](o, q * m + mem);
            }
        s = apply_system_operator(s, op, {kSys, kSlot, kMem, kPostEnv});
    }
    return static_cast<double>(d) * reduced_density(s, {kSys, kRef});
}

}  // namespace

Comb builtin_comb(const std::string &name, int d) {
    if (d < 1) throw Error(ErrorKind::kOutOfRange, "d must be positive");
    Comb c;
    c.name = name;
    c.d = d;
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(d, d);
    if (name == "identity") {
        // The query slot receives |0> and is discarded; the input waits in memory.
        c.memory_dim = d;
        Eigen::MatrixXcd e = Eigen::MatrixXcd::Zero(d * d, d);
        for (int s = 0; s < d; ++s) e(s, s) = 1.0;
        c.pre = {e};
        for (int a = 0; a < d; ++a) {
            Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(d, d * d);
            for (int o = 0; o < d; ++o) p(o, a * d + o) = 1.0;
            c.post.push_back(p);
        }
    } else if (name == "u" || name == "perfect") {
        c.slot = name == "u" ? SlotKind::kForward : SlotKind::kInverse;
        c.pre = {id};
        c.post = {id};
    } else {
        throw Error(ErrorKind::kFormatError, "unknown comb '" + name + "'");
    }
    return c;
}

Comb load_comb_json(const std::string &text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception &e) {
        throw Error(ErrorKind::kFormatError, e.what());
    }
    Comb c;
    try {
        c.name = j.value("name", "custom");
        c.d = j.at("d").get<int>();
        c.memory_dim = j.value("memory_dim", 1);
        c.n = j.value("n", 1);
        const std::string slot = j.value("slot", "forward");
        if (slot != "forward" && slot != "inverse") throw Error(ErrorKind::kFormatError, "slot must be forward or inverse");
        c.slot = slot == "forward" ? SlotKind::kForward : SlotKind::kInverse;
        for (const auto &m : j.at("pre")) c.pre.push_back(matrix_from_json(m));
        for (const auto &m : j.at("post")) c.post.push_back(matrix_from_json(m));
    } catch (const nlohmann::json::exception &e) {
        throw Error(ErrorKind::kFormatError, e.what());
    }
    validate_comb(c);
    return c;
}

void validate_comb(const Comb &comb, double tol) {
    if (comb.n != 1) throw Error(ErrorKind::kUnsupportedN, "only single-query combs are supported");
    if (comb.d < 1 || comb.memory_dim < 1) throw Error(ErrorKind::kDimensionMismatch, "dimensions must be positive");
    if (comb.pre.empty() || comb.post.empty()) throw Error(ErrorKind::kDimensionMismatch, "both slices need Kraus operators");
    const Eigen::Index dm = static_cast<Eigen::Index>(comb.d) * comb.memory_dim;
    auto check = [&](const std::vector<Eigen::MatrixXcd> &ks, Eigen::Index rows, Eigen::Index cols, const char *what) {
        Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(cols, cols);
        for (const auto &k : ks) {
            if (k.rows() != rows || k.cols() != cols) throw Error(ErrorKind::kDimensionMismatch, std::string(what) + " Kraus operator has the wrong shape");
            sum += k.adjoint() * k;
        }
        if (max_abs(sum - Eigen::MatrixXcd::Identity(cols, cols)) > tol) throw Error(ErrorKind::kInconsistentInputs, std::string(what) + " slice is not trace preserving");
    };
    check(comb.pre, dm, comb.d, "pre");
    check(comb.post, comb.d, dm, "post");
}

std::vector<Eigen::MatrixXcd> comb_kraus(const Comb &comb, const Eigen::MatrixXcd &u) {
    if (u.rows() != comb.d || u.cols() != comb.d) throw Error(ErrorKind::kDimensionMismatch, "unitary does not match the comb dimension");
    const Eigen::MatrixXcd x = kron_identity(comb.slot == SlotKind::kForward ? u : Eigen::MatrixXcd(u.adjoint()), comb.memory_dim);
    std::vector<Eigen::MatrixXcd> out;
    for (const auto &e : comb.pre)
        for (const auto &p : comb.post) out.push_back(p * x * e);
    return out;
}

Eigen::MatrixXcd choi_from_kraus(const std::vector<Eigen::MatrixXcd> &kraus) {
    if (kraus.empty()) return {};
    const Eigen::Index dout = kraus[0].rows(), din = kraus[0].cols();
    Eigen::MatrixXcd j = Eigen::MatrixXcd::Zero(dout * din, dout * din);
    for (const auto &k : kraus) {
        // |K>> with entries K_{jk} at (j, k).
        Eigen::VectorXcd vec(dout * din);
        for (Eigen::Index a = 0; a < dout; ++a)
            for (Eigen::Index b = 0; b < din; ++b) vec(a * din + b) = k(a, b);
        j += vec * vec.adjoint();
    }
    return j;
}

Eigen::MatrixXcd depolarized_inverse_choi(const Eigen::MatrixXcd &u, double eta) {
    const auto d = u.rows();
    return (1.0 - eta) * choi_from_kraus({u.adjoint()}) + eta / static_cast<double>(d) * Eigen::MatrixXcd::Identity(d * d, d * d);
}

double cptp_violation(const Eigen::MatrixXcd &choi, int d_in) {
    const Eigen::Index dout = choi.rows() / d_in;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(choi);
    double viol = std::max(0.0, -es.eigenvalues().minCoeff());
    Eigen::MatrixXcd ptr = Eigen::MatrixXcd::Zero(d_in, d_in);
    for (Eigen::Index j = 0; j < dout; ++j) ptr += choi.block(j * d_in, j * d_in, d_in, d_in);
    return std::max(viol, max_abs(ptr - Eigen::MatrixXcd::Identity(d_in, d_in)));
}

double channel_fidelity(const std::vector<Eigen::MatrixXcd> &kraus, const Eigen::MatrixXcd &u) {
    const double d = static_cast<double>(u.rows());
    double sum = 0.0;
    for (const auto &k : kraus) {
        if (k.rows() != u.rows() || k.cols() != u.cols()) throw Error(ErrorKind::kDimensionMismatch, "Kraus operator and unitary differ in shape");
        sum += std::norm((k * u).trace());
    }
    return sum / (d * d);
}

double channel_fidelity_choi(const Eigen::MatrixXcd &choi, const Eigen::MatrixXcd &u) {
    const auto d = u.rows();
    if (choi.rows() != d * d) throw Error(ErrorKind::kDimensionMismatch, "Choi matrix and unitary differ in dimension");
    Eigen::VectorXcd v(d * d);
    const Eigen::MatrixXcd ud = u.adjoint();
    for (Eigen::Index a = 0; a < d; ++a)
        for (Eigen::Index b = 0; b < d; ++b) v(a * d + b) = ud(a, b);
    return (v.adjoint() * choi * v)(0, 0).real() / static_cast<double>(d * d);
}

double average_inversion_fidelity(const Comb &comb) {
    validate_comb(comb);
    const int d = comb.d;
    const PolyMat u = haar_matrix(d, false);
    const PolyMat w = comb.slot == SlotKind::kForward ? u : haar_matrix(d, true);
    double sum = 0.0;
    for (const auto &k : comb_kraus_poly(comb, w)) {
        const PolyMat ku = mul(k, u);
        HaarPolynomial tr;
        for (Eigen::Index i = 0; i < d; ++i) tr += ku.at(i, i);
        sum += (tr * tr.conj()).expectation(d).real();
    }
    return sum / (static_cast<double>(d) * d);
}

double average_inversion_fidelity_clifford(const Comb &comb) {
    validate_comb(comb);
    if (comb.d != 2) throw Error(ErrorKind::kDimensionMismatch, "the Clifford design is single-qubit");
    const auto group = clifford_group_1q();
    double sum = 0.0;
    for (const auto &v : group) sum += channel_fidelity(comb_kraus(comb, v), v);
    return sum / static_cast<double>(group.size());
}

double eta_of_delta(double delta, int d) {
    constexpr double kSlack = 1e-12;
    const double dd = static_cast<double>(d) * d;
    if (d < 2) throw Error(ErrorKind::kOutOfRange, "eta needs d >= 2");
    if (delta < -kSlack) throw Error(ErrorKind::kOutOfRange, "delta must be nonnegative");
    const double eta = dd * delta / (dd - 1.0);
    if (eta > 1.0 + kSlack) throw Error(ErrorKind::kOutOfRange, "eta exceeds 1");
    return std::clamp(eta, 0.0, 1.0);
}

std::vector<Eigen::MatrixXcd> clifford_group_1q() {
    Eigen::MatrixXcd h(2, 2), s(2, 2);
    h << 1, 1, 1, -1;
    h /= std::sqrt(2.0);
    s << 1, 0, 0, Cplx(0, 1);
    // Phase-normalized rounded entries identify an element modulo phase.
    auto key = [](const Eigen::MatrixXcd &m) {
        Cplx phase = 1.0;
        for (Eigen::Index i = 0; i < m.size(); ++i)
            if (std::abs(m.data()[i]) > 1e-9) {
                phase = std::abs(m.data()[i]) / m.data()[i];
                break;
            }
        std::vector<long long> out;
        for (Eigen::Index i = 0; i < m.size(); ++i) {
            const Cplx v = m.data()[i] * phase;
            out.push_back(std::llround(v.real() * 1e6));
            out.push_back(std::llround(v.imag() * 1e6));
        }
        return out;
    };
    std::vector<Eigen::MatrixXcd> group{Eigen::MatrixXcd::Identity(2, 2)};
    std::map<std::vector<long long>, bool> seen{{key(group[0]), true}};
    for (std::size_t i = 0; i < group.size(); ++i) {
        for (const auto &g : {h, s}) {
            const Eigen::MatrixXcd next = g * group[i];
            if (seen.emplace(key(next), true).second) group.push_back(next);
        }
    }
    return group;
}

TwirlResult twirl_comb(const Comb &comb, const Eigen::MatrixXcd &u, const std::string &engine) {
    validate_comb(comb);
    if (u.rows() != comb.d || u.cols() != comb.d) throw Error(ErrorKind::kDimensionMismatch, "unitary does not match the comb dimension");
    TwirlResult r;
    r.oracle_choi = oracle_twirl(comb, u, engine);
    if (comb.d == 2) {
        r.reference_choi = reference_clifford(comb, u);
        r.reference_method = "clifford-3-design";
    } else {
        r.reference_choi = reference_weingarten(comb, u);
        r.reference_method = "weingarten";
    }
    return r;
}

double TwirlReport::max_deviation() const {
    double m = 0.0;
    for (const auto &c : cases) m = std::max({m, c.oracle_deviation, c.reference_deviation, c.path_agreement});
    return m;
}

TwirlReport verify_twirl(const Comb &comb, const std::vector<Eigen::MatrixXcd> &us, const std::string &engine) {
    TwirlReport rep;
    rep.fidelity = average_inversion_fidelity(comb);
    rep.delta = std::max(0.0, 1.0 - rep.fidelity);
    rep.eta = eta_of_delta(rep.delta, comb.d);
    for (const auto &u : us) {
        const TwirlResult t = twirl_comb(comb, u, engine);
        const Eigen::MatrixXcd target = depolarized_inverse_choi(u, rep.eta);
        rep.cases.push_back({max_abs(t.oracle_choi - target), max_abs(t.reference_choi - target), max_abs(t.oracle_choi - t.reference_choi)});
    }
    return rep;
}

}  // namespace haarcg
