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

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <istream>
#include <ostream>

#include "haarcg/errors.hpp"
#include "haarcg/haar.hpp"
#include "haarcg/repcore.hpp"
#include "haarcg/serialize.hpp"

namespace haarcg {

namespace {

constexpr char kSnapshotMagic[4] = {'H', 'C', 'G', 'S'};
constexpr std::uint32_t kSnapshotVersion = 1;

std::size_t bit_width_of(std::size_t v) { return std::max<std::size_t>(1, std::bit_width(v)); }

template <typename Key>
void prune(std::map<Key, Complex> &m) {
    double top = 0.0;
    for (const auto &[k, v] : m) top = std::max(top, std::abs(v));
    const double tol = 1e-14 * top;
    std::erase_if(m, [&](const auto &kv) { return std::abs(kv.second) <= tol; });
}

void check_index(int v, int d, const char *what) {
    if (v < 0 || v >= d) throw Error(ErrorKind::kIndexOutOfRange, std::string(what) + " index " + std::to_string(v) + " outside [0, " + std::to_string(d) + ")");
}

std::size_t word_index(const std::vector<int> &digits, const std::vector<int> &dims, const std::vector<int> &regs) {
    std::size_t idx = 0;
    for (int r : regs) idx = idx * static_cast<std::size_t>(dims[static_cast<std::size_t>(r)]) + static_cast<std::size_t>(digits[static_cast<std::size_t>(r)]);
    return idx;
}

void set_word(std::vector<int> &digits, const std::vector<int> &dims, const std::vector<int> &regs, std::size_t idx) {
    for (auto it = regs.rbegin(); it != regs.rend(); ++it) {
        const auto dim = static_cast<std::size_t>(dims[static_cast<std::size_t>(*it)]);
        digits[static_cast<std::size_t>(*it)] = static_cast<int>(idx % dim);
        idx /= dim;
    }
}

}  // namespace

// Backends ---------------------------------------------------------------------

void TableBackend::multiply(const Label &lambda, const Label &i, const Label &j, QueryType q, int x, int y,
                            const Sink &emit) const {
    if (!supports(q)) throw Error(ErrorKind::kUnsupportedQueryType, name() + " does not support " + query_char(q));
    check_index(x, rep_dim(), "input");
    check_index(y, rep_dim(), "output");
    const bool tr = query_transposed(q);
    const int a = tr ? x : y;
    const int b = tr ? y : x;
    const auto tab = table(lambda, query_factor(q));
    const auto &ket = tab->at(static_cast<std::size_t>(i.at(0)), a);
    const auto &bra = tab->at(static_cast<std::size_t>(j.at(0)), b);
    const double dl = dim(lambda);
    for (const auto &e1 : ket) {
        for (const auto &e2 : bra) {
            if (e1.block != e2.block) continue;
            const Label &mu = tab->blocks[e1.block].mu;
            emit(mu, {static_cast<int>(e1.out_index)}, {static_cast<int>(e2.out_index)},
                 std::sqrt(dl / dim(mu)) * e1.coeff * std::conj(e2.coeff));
        }
    }
}

std::size_t TableBackend::key_bits(const Label &lambda, const Label &, const Label &) const {
    return 8 * lambda.size() + 2 * bit_width_of(static_cast<std::size_t>(dim(lambda)) - 1);
}

DenseUnitaryBackend::DenseUnitaryBackend(int d, CGCache *cache) : d_(d), cache_(cache) {
    if (d < 1) throw Error(ErrorKind::kOutOfRange, "d must be positive");
}

std::shared_ptr<const CGTable> DenseUnitaryBackend::table(const Label &lambda, Factor factor) const {
    return cache_->get(HighestWeight(lambda), factor);
}

double DenseUnitaryBackend::dim(const Label &lambda) const {
    return static_cast<double>(weyl_dimension(HighestWeight(lambda)));
}

FiniteGroupBackend::FiniteGroupBackend(FiniteGroup group) : group_(std::move(group)) {}

std::shared_ptr<const CGTable> FiniteGroupBackend::table(const Label &lambda, Factor factor) const {
    std::lock_guard<std::mutex> lock(mu_);
    auto &slot = tables_[{lambda.at(0), factor}];
    if (!slot) slot = std::make_shared<const CGTable>(cg_finite(group_, lambda.at(0), factor));
    return slot;
}

double FiniteGroupBackend::dim(const Label &lambda) const {
    return group_.irreps.at(static_cast<std::size_t>(lambda.at(0))).dim;
}

Label FastUnitaryBackend::encode_label(const CompressedGT &c) {
    Label out{static_cast<int>(c.p.size())};
    out.insert(out.end(), c.p.begin(), c.p.end());
    for (const auto &row : c.mtilde.rows) out.insert(out.end(), row.begin(), row.end());
    return out;
}

CompressedGT FastUnitaryBackend::decode_label(const Label &label) {
    if (label.empty() || label[0] < 0) throw Error(ErrorKind::kFormatError, "bad compressed label");
    const auto rows = static_cast<std::size_t>(label[0]);
    if (label.size() != 1 + rows + rows * (rows + 1) / 2) throw Error(ErrorKind::kFormatError, "bad compressed label");
    CompressedGT c;
    c.p.assign(label.begin() + 1, label.begin() + 1 + static_cast<std::ptrdiff_t>(rows));
    auto it = label.begin() + 1 + static_cast<std::ptrdiff_t>(rows);
    for (std::size_t l = 1; l <= rows; ++l) {
        c.mtilde.rows.emplace_back(it, it + static_cast<std::ptrdiff_t>(l));
        it += static_cast<std::ptrdiff_t>(l);
    }
    return c;
}

void FastUnitaryBackend::multiply(const Label &lambda, const Label &i, const Label &j, QueryType q, int x, int y,
                                  const Sink &emit) const {
    if (q != QueryType::kForward) throw Error(ErrorKind::kUnsupportedQueryType, name() + " handles forward queries only");
    check_index(x, d_, "input");
    check_index(y, d_, "output");
    const auto ket = cg_fast_all(decode_label(i), y + 1, d_);
    const auto bra = cg_fast_all(decode_label(j), x + 1, d_);
    for (const auto &[r1, t1] : ket) {
        for (const auto &[r2, t2] : bra) {
            if (r1 != r2) continue;
            Label mu = lambda;
            if (r1 > static_cast<int>(mu.size())) mu.push_back(0);
            ++mu[static_cast<std::size_t>(r1 - 1)];
            const double ratio = weyl_dimension_ratio_add_box(lambda, r1, d_);
            emit(mu, encode_label(t1.m_out), encode_label(t2.m_out), Complex(t1.coeff * t2.coeff / std::sqrt(ratio)));
        }
    }
}

std::size_t FastUnitaryBackend::key_bits(const Label &lambda, const Label &ket, const Label &bra) const {
    int boxes = 0;
    for (int v : lambda) boxes += v;
    const std::size_t part_bits = lambda.size() * bit_width_of(static_cast<std::size_t>(boxes));
    return part_bits + compressed_bits(decode_label(ket), d_, std::max(boxes, 1)) +
           compressed_bits(decode_label(bra), d_, std::max(boxes, 1));
}

std::shared_ptr<const OracleBackend> make_backend(const std::string &kind, int d) {
    if (kind == "u" || kind == "u-dense" || kind == "dense") return std::make_shared<DenseUnitaryBackend>(d);
    if (kind == "u-fast" || kind == "fast") return std::make_shared<FastUnitaryBackend>(d);
    std::string name = kind;
    if (!name.empty()) name[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(name[0])));
    return std::make_shared<FiniteGroupBackend>(builtin_group(name));
}

// State ------------------------------------------------------------------------

double OracleState::norm_squared() const {
    double s = 0.0;
    for (const auto &[k, v] : amps) s += std::norm(v);
    return s;
}

std::size_t OracleState::system_dim() const {
    std::size_t n = 1;
    for (int v : sys_dims) n *= static_cast<std::size_t>(v);
    return n;
}

OracleState init_vacuum(std::shared_ptr<const OracleBackend> backend, std::vector<int> sys_dims, std::vector<int> word) {
    if (word.empty()) word.assign(sys_dims.size(), 0);
    if (word.size() != sys_dims.size()) throw Error(ErrorKind::kDimensionMismatch, "system word length differs from the register count");
    for (std::size_t r = 0; r < word.size(); ++r) check_index(word[r], sys_dims[r], "system");
    OracleState s;
    s.amps[OracleKey{backend->vacuum_irrep(), backend->vacuum_basis(), backend->vacuum_basis(), word}] = 1.0;
    s.backend = std::move(backend);
    s.sys_dims = std::move(sys_dims);
    return s;
}

OracleState init_vacuum_state(std::shared_ptr<const OracleBackend> backend, std::vector<int> sys_dims, const Eigen::VectorXcd &psi) {
    OracleState s = init_vacuum(std::move(backend), sys_dims);
    if (static_cast<std::size_t>(psi.size()) != s.system_dim()) throw Error(ErrorKind::kDimensionMismatch, "state vector size differs from the system dimension");
    const OracleKey base = s.amps.begin()->first;
    s.amps.clear();
    std::vector<int> regs(sys_dims.size());
    for (std::size_t r = 0; r < regs.size(); ++r) regs[r] = static_cast<int>(r);
    for (Eigen::Index i = 0; i < psi.size(); ++i) {
        if (psi(i) == Complex(0.0)) continue;
        OracleKey k = base;
        set_word(k.sys, s.sys_dims, regs, static_cast<std::size_t>(i));
        s.amps[k] = psi(i);
    }
    return s;
}

OracleState apply_oracle(const OracleState &state, QueryType q, int reg) {
    const OracleBackend &b = *state.backend;
    if (!b.supports(q)) throw Error(ErrorKind::kUnsupportedQueryType, b.name() + " does not support " + query_char(q));
    if (reg < 0 || reg >= static_cast<int>(state.sys_dims.size())) throw Error(ErrorKind::kDimensionMismatch, "no register " + std::to_string(reg));
    const int d = b.rep_dim();
    if (state.sys_dims[static_cast<std::size_t>(reg)] != d) throw Error(ErrorKind::kDimensionMismatch, "query register must have dimension " + std::to_string(d));
    OracleState out{state.backend, state.sys_dims, {}};
    for (const auto &[key, amp] : state.amps) {
        const int x = key.sys[static_cast<std::size_t>(reg)];
        for (int y = 0; y < d; ++y) {
            b.multiply(key.lambda, key.ket, key.bra, q, x, y, [&](const Label &mu, const Label &k, const Label &l, Complex c) {
                OracleKey nk{mu, k, l, key.sys};
                nk.sys[static_cast<std::size_t>(reg)] = y;
                out.amps[std::move(nk)] += c * amp;
            });
        }
    }
    prune(out.amps);
    return out;
}

OracleState apply_system_operator(const OracleState &state, const Eigen::MatrixXcd &op, const std::vector<int> &regs) {
    std::size_t n = 1;
    for (int r : regs) {
        if (r < 0 || r >= static_cast<int>(state.sys_dims.size())) throw Error(ErrorKind::kDimensionMismatch, "no register " + std::to_string(r));
        n *= static_cast<std::size_t>(state.sys_dims[static_cast<std::size_t>(r)]);
    }
    if (static_cast<std::size_t>(op.rows()) != n || static_cast<std::size_t>(op.cols()) != n) {
        throw Error(ErrorKind::kDimensionMismatch, "operator is " + std::to_string(op.rows()) + "x" + std::to_string(op.cols()) + ", registers span " + std::to_string(n));
    }
    OracleState out{state.backend, state.sys_dims, {}};
    for (const auto &[key, amp] : state.amps) {
        const auto col = static_cast<Eigen::Index>(word_index(key.sys, state.sys_dims, regs));
        for (Eigen::Index row = 0; row < op.rows(); ++row) {
            const Complex c = op(row, col);
            if (c == Complex(0.0)) continue;
            OracleKey nk = key;
            set_word(nk.sys, state.sys_dims, regs, static_cast<std::size_t>(row));
            out.amps[std::move(nk)] += c * amp;
        }
    }
    prune(out.amps);
    return out;
}

Eigen::MatrixXcd reduced_density(const OracleState &state, const std::vector<int> &keep, std::size_t cap) {
    std::size_t n = 1;
    for (int r : keep) n *= static_cast<std::size_t>(state.sys_dims.at(static_cast<std::size_t>(r)));
    if (n > cap) throw Error(ErrorKind::kCapExceeded, "reduced system dimension " + std::to_string(n) + " exceeds cap");
    std::vector<bool> kept(state.sys_dims.size(), false);
    for (int r : keep) kept[static_cast<std::size_t>(r)] = true;
    // Aux = memory labels plus every register not kept.
    std::map<OracleKey, std::vector<std::pair<Eigen::Index, Complex>>> groups;
    for (const auto &[key, amp] : state.amps) {
        OracleKey aux = key;
        for (std::size_t r = 0; r < kept.size(); ++r)
            if (kept[r]) aux.sys[r] = -1;
        groups[aux].emplace_back(static_cast<Eigen::Index>(word_index(key.sys, state.sys_dims, keep)), amp);
    }
    const auto dim = static_cast<Eigen::Index>(n);
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
    for (const auto &[aux, entries] : groups)
        for (const auto &[i, a] : entries)
            for (const auto &[j, b] : entries) rho(i, j) += a * std::conj(b);
    return rho;
}

Eigen::MatrixXcd trace_out_aux(const OracleState &state, std::size_t cap) {
    std::vector<int> all(state.sys_dims.size());
    for (std::size_t r = 0; r < all.size(); ++r) all[r] = static_cast<int>(r);
    return reduced_density(state, all, cap);
}

void write_snapshot(std::ostream &os, const OracleState &state) {
    BinaryWriter w(os);
    w.raw(kSnapshotMagic, sizeof(kSnapshotMagic));
    w.u32(kSnapshotVersion);
    w.str(state.backend->name());
    w.ints(state.sys_dims);
    w.u64(state.amps.size());
    for (const auto &[key, amp] : state.amps) {
        w.ints(key.lambda);
        w.ints(key.ket);
        w.ints(key.bra);
        w.ints(key.sys);
        w.cplx(amp);
    }
}

OracleState read_snapshot(std::istream &is, std::shared_ptr<const OracleBackend> backend) {
    BinaryReader r(is);
    char magic[4];
    r.raw(magic, sizeof(magic));
    if (std::string(magic, 4) != std::string(kSnapshotMagic, 4)) throw Error(ErrorKind::kFormatError, "not an oracle snapshot");
    if (r.u32() != kSnapshotVersion) throw Error(ErrorKind::kFormatError, "unsupported snapshot version");
    const std::string name = r.str();
    if (name != backend->name()) throw Error(ErrorKind::kInconsistentInputs, "snapshot was written by backend " + name);
    OracleState s;
    s.backend = std::move(backend);
    s.sys_dims = r.ints();
    const std::uint64_t n = r.u64();
    for (std::uint64_t k = 0; k < n; ++k) {
        OracleKey key;
        key.lambda = r.ints();
        key.ket = r.ints();
        key.bra = r.ints();
        key.sys = r.ints();
        if (key.sys.size() != s.sys_dims.size()) throw Error(ErrorKind::kFormatError, "system word length mismatch");
        s.amps[std::move(key)] = r.cplx();
    }
    return s;
}

// Moments ----------------------------------------------------------------------

ChainAmplitudes chain_amplitudes(const OracleBackend &backend, const std::vector<QueryType> &types,
                                 const std::vector<int> &x, const std::vector<int> &y) {
    if (x.size() != types.size() || y.size() != types.size()) throw Error(ErrorKind::kDimensionMismatch, "index words must match the script length");
    ChainAmplitudes cur{{ChainKey{backend.vacuum_irrep(), backend.vacuum_basis(), backend.vacuum_basis()}, 1.0}};
    for (std::size_t k = 0; k < types.size(); ++k) {
        ChainAmplitudes next;
        for (const auto &[key, amp] : cur) {
            backend.multiply(key.lambda, key.ket, key.bra, types[k], x[k], y[k],
                             [&](const Label &mu, const Label &i, const Label &j, Complex c) { next[ChainKey{mu, i, j}] += c * amp; });
        }
        prune(next);
        cur = std::move(next);
    }
    return cur;
}

Complex moment_tensor(const OracleBackend &backend, const std::vector<QueryType> &types, const std::vector<int> &x,
                      const std::vector<int> &y, const std::vector<int> &xh, const std::vector<int> &yh) {
    const ChainAmplitudes a = chain_amplitudes(backend, types, x, y);
    const ChainAmplitudes b = chain_amplitudes(backend, types, xh, yh);
    Complex sum = 0.0;
    for (const auto &[key, v] : a) {
        const auto it = b.find(key);
        if (it != b.end()) sum += std::conj(it->second) * v;
    }
    return sum;
}

Complex reference_moment(const OracleBackend &backend, const std::vector<QueryType> &types, const std::vector<int> &x,
                         const std::vector<int> &y, const std::vector<int> &xh, const std::vector<int> &yh) {
    if (const auto *fin = dynamic_cast<const FiniteGroupBackend *>(&backend)) {
        std::vector<EntryFactor> factors;
        for (std::size_t k = 0; k < types.size(); ++k) {
            factors.push_back({types[k], y[k], x[k], false});
            factors.push_back({types[k], yh[k], xh[k], true});
        }
        return haar_average_finite(fin->group(), factors);
    }
    return haar_moment_queries(types, x, y, xh, yh, backend.rep_dim());
}

std::vector<PathIsometry> path_isometries(const TableBackend &backend, const std::vector<Factor> &factors, std::size_t cap) {
    const auto d = static_cast<Eigen::Index>(backend.rep_dim());
    std::size_t words = 1;
    for (std::size_t k = 0; k < factors.size(); ++k) {
        words *= static_cast<std::size_t>(d);
        if (words > cap) throw Error(ErrorKind::kCapExceeded, "tensor power dimension exceeds cap");
    }
    std::vector<PathIsometry> cur{PathIsometry{backend.vacuum_irrep(), {}, Eigen::MatrixXcd::Ones(1, 1)}};
    for (Factor f : factors) {
        std::vector<PathIsometry> next;
        for (const auto &p : cur) {
            const auto tab = backend.table(p.lambda, f);
            for (const auto &blk : tab->blocks) {
                // (W (x) I_d) C, with C rows indexed m * d + x.
                const Eigen::Index rows = p.w.rows(), cols = blk.isometry.cols(), dl = p.w.cols();
                Eigen::MatrixXcd w(rows * d, cols);
                for (Eigen::Index x = 0; x < d; ++x) {
                    Eigen::MatrixXcd cx(dl, cols);
                    for (Eigen::Index m = 0; m < dl; ++m) cx.row(m) = blk.isometry.row(m * d + x);
                    const Eigen::MatrixXcd part = p.w * cx;
                    for (Eigen::Index r = 0; r < rows; ++r) w.row(r * d + x) = part.row(r);
                }
                PathIsometry q{blk.mu, p.steps, std::move(w)};
                q.steps.emplace_back(blk.mu, blk.multiplicity);
                next.push_back(std::move(q));
            }
        }
        cur = std::move(next);
    }
    return cur;
}

Eigen::MatrixXcd matrix_unit(const PathIsometry &t, const PathIsometry &s) {
    if (t.lambda != s.lambda) throw Error(ErrorKind::kInconsistentInputs, "matrix units need paths ending in the same irrep");
    return t.w * s.w.adjoint();
}

CommutantMoments::CommutantMoments(const TableBackend &backend, std::vector<QueryType> types, std::size_t cap)
    : types_(std::move(types)), d_(backend.rep_dim()) {
    std::vector<Factor> factors;
    for (QueryType q : types_) factors.push_back(query_factor(q));
    paths_ = path_isometries(backend, factors, cap);
    for (const auto &t : paths_) {
        for (const auto &s : paths_) {
            if (t.lambda == s.lambda) units_.push_back(Unit{1.0 / backend.dim(t.lambda), matrix_unit(t, s)});
        }
    }
}

Complex CommutantMoments::operator()(const std::vector<int> &x, const std::vector<int> &y, const std::vector<int> &xh,
                                     const std::vector<int> &yh) const {
    const std::size_t t = types_.size();
    if (x.size() != t || y.size() != t || xh.size() != t || yh.size() != t) throw Error(ErrorKind::kDimensionMismatch, "index words must match the script length");
    Eigen::Index a = 0, ah = 0, b = 0, bh = 0;
    for (std::size_t k = 0; k < t; ++k) {
        const bool tr = query_transposed(types_[k]);
        for (int v : {x[k], y[k], xh[k], yh[k]}) check_index(v, d_, "word");
        a = a * d_ + (tr ? x[k] : y[k]);
        ah = ah * d_ + (tr ? xh[k] : yh[k]);
        b = b * d_ + (tr ? y[k] : x[k]);
        bh = bh * d_ + (tr ? yh[k] : xh[k]);
    }
    Complex sum = 0.0;
    for (const auto &u : units_) sum += u.weight * u.e(a, ah) * std::conj(u.e(b, bh));
    return sum;
}

Complex commutant_moment(const TableBackend &backend, const std::vector<QueryType> &types, const std::vector<int> &x,
                         const std::vector<int> &y, const std::vector<int> &xh, const std::vector<int> &yh) {
    return CommutantMoments(backend, types)(x, y, xh, yh);
}

}  // namespace haarcg
