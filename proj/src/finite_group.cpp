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

#include "haarcg/finite_group.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <regex>

#include "json.hpp"

#include "haarcg/errors.hpp"
#include "haarcg/json_util.hpp"

namespace haarcg {

namespace {

using Perm = std::vector<int>;

std::vector<Perm> all_perms(int n) {
    Perm p(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) p[static_cast<std::size_t>(i)] = i;
    std::vector<Perm> out;
    do {
        out.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

Perm compose(const Perm &g, const Perm &h) {
    Perm out(g.size());
    for (std::size_t x = 0; x < g.size(); ++x) out[x] = g[static_cast<std::size_t>(h[x])];
    return out;
}

int parity(const Perm &p) {
    int inversions = 0;
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = i + 1; j < p.size(); ++j) inversions += p[i] > p[j] ? 1 : 0;
    return inversions % 2 == 0 ? 1 : -1;
}

Eigen::MatrixXcd perm_matrix(const Perm &p) {
    const auto n = static_cast<Eigen::Index>(p.size());
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
    for (Eigen::Index x = 0; x < n; ++x) m(p[static_cast<std::size_t>(x)], x) = 1.0;
    return m;
}

// Orthonormal basis of the sum-zero subspace of C^n (Helmert vectors).
Eigen::MatrixXcd sum_zero_basis(int n) {
    Eigen::MatrixXcd b = Eigen::MatrixXcd::Zero(n, n - 1);
    for (int k = 1; k < n; ++k) {
        const double norm = std::sqrt(static_cast<double>(k * (k + 1)));
        for (int i = 0; i < k; ++i) b(i, k - 1) = 1.0 / norm;
        b(k, k - 1) = -static_cast<double>(k) / norm;
    }
    return b;
}

Eigen::MatrixXi kron_int(const Eigen::MatrixXi &a, const Eigen::MatrixXi &b) {
    Eigen::MatrixXi out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

std::vector<std::vector<int>> perm_table(const std::vector<Perm> &elems) {
    std::map<Perm, int> index;
    for (std::size_t i = 0; i < elems.size(); ++i) index[elems[i]] = static_cast<int>(i);
    std::vector<std::vector<int>> mult(elems.size(), std::vector<int>(elems.size()));
    for (std::size_t a = 0; a < elems.size(); ++a)
        for (std::size_t b = 0; b < elems.size(); ++b) mult[a][b] = index.at(compose(elems[a], elems[b]));
    return mult;
}

Irrep restricted(const std::string &label, const std::vector<Perm> &elems, const Eigen::MatrixXcd &basis) {
    Irrep r{label, static_cast<int>(basis.cols()), {}};
    for (const auto &p : elems) r.mats.push_back(basis.adjoint() * perm_matrix(p) * basis);
    return r;
}

Irrep one_dim(const std::string &label, const std::vector<Complex> &values) {
    Irrep r{label, 1, {}};
    for (Complex v : values) r.mats.push_back(Eigen::MatrixXcd::Constant(1, 1, v));
    return r;
}

FiniteGroup symmetric_group(int n) {
    const std::vector<Perm> elems = all_perms(n);
    std::vector<Complex> ones, signs;
    for (const auto &p : elems) {
        ones.emplace_back(1.0);
        signs.emplace_back(parity(p));
    }
    std::vector<Irrep> irreps{one_dim("trivial", ones), one_dim("sign", signs)};
    if (n == 4) {
        // S4 -> S3 through the action on the three pair partitions of {0,1,2,3}.
        const std::vector<std::vector<std::pair<int, int>>> parts{{{0, 1}, {2, 3}}, {{0, 2}, {1, 3}}, {{0, 3}, {1, 2}}};
        auto which = [&](std::pair<int, int> a) {
            if (a.first > a.second) std::swap(a.first, a.second);
            for (int k = 0; k < 3; ++k)
                for (auto q : parts[static_cast<std::size_t>(k)])
                    if (q == a) return k;
            return -1;
        };
        const Eigen::MatrixXcd b3 = sum_zero_basis(3);
        Irrep two{"two", 2, {}};
        for (const auto &p : elems) {
            Perm s(3);
            for (int k = 0; k < 3; ++k) {
                const auto &pair = parts[static_cast<std::size_t>(k)][0];
                s[static_cast<std::size_t>(k)] = which({p[static_cast<std::size_t>(pair.first)], p[static_cast<std::size_t>(pair.second)]});
            }
            two.mats.push_back(b3.adjoint() * perm_matrix(s) * b3);
        }
        irreps.push_back(std::move(two));
    }
    Irrep standard = restricted("standard", elems, sum_zero_basis(n));
    irreps.push_back(standard);
    if (n == 4) {
        Irrep twisted{"standard_sign", standard.dim, {}};
        for (std::size_t g = 0; g < elems.size(); ++g) twisted.mats.push_back(standard.mats[g] * signs[g]);
        irreps.push_back(std::move(twisted));
    }
    std::vector<Eigen::MatrixXcd> rep;
    for (const auto &p : elems) rep.push_back(perm_matrix(p));
    FiniteGroup g = make_group("S" + std::to_string(n), perm_table(elems), std::move(irreps), std::move(rep));
    g.perms = elems;
    return g;
}

FiniteGroup cyclic_group(int k) {
    std::vector<std::vector<int>> mult(static_cast<std::size_t>(k), std::vector<int>(static_cast<std::size_t>(k)));
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b) mult[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = (a + b) % k;
    std::vector<Irrep> irreps;
    for (int j = 0; j < k; ++j) {
        std::vector<Complex> vals;
        for (int g = 0; g < k; ++g) vals.push_back(std::polar(1.0, 2.0 * std::numbers::pi * j * g / k));
        irreps.push_back(one_dim("chi" + std::to_string(j), vals));
    }
    std::vector<Eigen::MatrixXcd> rep;
    for (int g = 0; g < k; ++g) {
        Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(k, k);
        for (int x = 0; x < k; ++x) m((x + g) % k, x) = 1.0;
        rep.push_back(std::move(m));
    }
    return make_group("Z" + std::to_string(k), std::move(mult), std::move(irreps), std::move(rep));
}

}  // namespace

int FiniteGroup::trivial_irrep() const {
    for (std::size_t i = 0; i < irreps.size(); ++i) {
        if (irreps[i].dim != 1) continue;
        bool ok = true;
        for (const auto &m : irreps[i].mats) ok = ok && std::abs(m(0, 0) - 1.0) < 1e-12;
        if (ok) return static_cast<int>(i);
    }
    throw Error(ErrorKind::kInvalidGroup, "no trivial irrep");
}

FiniteGroup make_group(std::string name, std::vector<std::vector<int>> mult, std::vector<Irrep> irreps,
                       std::vector<Eigen::MatrixXcd> rep) {
    FiniteGroup g;
    g.name = std::move(name);
    g.order = static_cast<int>(mult.size());
    g.mult = std::move(mult);
    g.irreps = std::move(irreps);
    g.rep = std::move(rep);
    g.identity = -1;
    for (int e = 0; e < g.order && g.identity < 0; ++e) {
        bool ok = true;
        for (int h = 0; h < g.order && ok; ++h) {
            const auto &row = g.mult[static_cast<std::size_t>(e)];
            if (row.size() != static_cast<std::size_t>(g.order)) throw Error(ErrorKind::kInvalidGroup, "multiplication table is not square");
            ok = row[static_cast<std::size_t>(h)] == h && g.mult[static_cast<std::size_t>(h)][static_cast<std::size_t>(e)] == h;
        }
        if (ok) g.identity = e;
    }
    if (g.identity < 0) throw Error(ErrorKind::kInvalidGroup, "no identity element");
    g.inverse.assign(static_cast<std::size_t>(g.order), -1);
    for (int a = 0; a < g.order; ++a)
        for (int b = 0; b < g.order; ++b)
            if (g.mult[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] == g.identity) g.inverse[static_cast<std::size_t>(a)] = b;
    validate_group(g);
    return g;
}

void validate_group(const FiniteGroup &g, double tol) {
    const int n = g.order;
    if (n < 1 || g.mult.size() != static_cast<std::size_t>(n)) throw Error(ErrorKind::kInvalidGroup, "bad order");
    auto at = [&](int a, int b) { return g.mult[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]; };
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            const int ab = at(a, b);
            if (ab < 0 || ab >= n) throw Error(ErrorKind::kInvalidGroup, "table entry out of range");
        }
        if (g.inverse[static_cast<std::size_t>(a)] < 0 || at(g.inverse[static_cast<std::size_t>(a)], a) != g.identity) {
            throw Error(ErrorKind::kInvalidGroup, "element without two-sided inverse");
        }
    }
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                if (at(at(a, b), c) != at(a, at(b, c))) throw Error(ErrorKind::kInvalidGroup, "multiplication is not associative");

    auto check_rep = [&](const std::vector<Eigen::MatrixXcd> &mats, const std::string &what) {
        if (mats.size() != static_cast<std::size_t>(n)) throw Error(ErrorKind::kInvalidGroup, what + ": wrong number of matrices");
        const Eigen::Index dim = mats[0].rows();
        for (int a = 0; a < n; ++a) {
            const auto &m = mats[static_cast<std::size_t>(a)];
            if (m.rows() != dim || m.cols() != dim) throw Error(ErrorKind::kInvalidGroup, what + ": inconsistent shapes");
            if ((m.adjoint() * m - Eigen::MatrixXcd::Identity(dim, dim)).cwiseAbs().maxCoeff() > tol) {
                throw Error(ErrorKind::kInvalidGroup, what + ": matrix is not unitary");
            }
            for (int b = 0; b < n; ++b) {
                if ((m * mats[static_cast<std::size_t>(b)] - mats[static_cast<std::size_t>(at(a, b))]).cwiseAbs().maxCoeff() > tol) {
                    throw Error(ErrorKind::kInvalidGroup, what + ": not a homomorphism");
                }
            }
        }
    };
    int dim_sq = 0;
    for (const auto &ir : g.irreps) {
        if (ir.mats.empty() || ir.mats[0].rows() != ir.dim) throw Error(ErrorKind::kInvalidGroup, ir.label + ": dimension mismatch");
        check_rep(ir.mats, ir.label);
        dim_sq += ir.dim * ir.dim;
    }
    check_rep(g.rep, "rep");
    if (dim_sq != n) throw Error(ErrorKind::kInvalidGroup, "irreps are incomplete (sum of squared dimensions != order)");
    for (std::size_t a = 0; a < g.irreps.size(); ++a) {
        for (std::size_t b = 0; b < g.irreps.size(); ++b) {
            Complex s = 0.0;
            for (int e = 0; e < n; ++e) s += g.irreps[a].mats[static_cast<std::size_t>(e)].trace() * std::conj(g.irreps[b].mats[static_cast<std::size_t>(e)].trace());
            s /= static_cast<double>(n);
            if (std::abs(s - (a == b ? 1.0 : 0.0)) > tol) throw Error(ErrorKind::kInvalidGroup, "character orthogonality fails");
        }
    }
}

FiniteGroup builtin_group(const std::string &name) {
    if (name == "S3") return symmetric_group(3);
    if (name == "S4") return symmetric_group(4);
    std::smatch m;
    static const std::regex cyclic(R"(Z(?:n\()?(\d+)\)?)");
    if (std::regex_match(name, m, cyclic)) {
        const int k = std::stoi(m[1].str());
        if (k >= 1 && k <= 64) return cyclic_group(k);
    }
    throw Error(ErrorKind::kUnknownGroup, "unknown group '" + name + "'");
}

FiniteGroup load_group_json(const std::string &text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception &e) {
        throw Error(ErrorKind::kFormatError, e.what());
    }
    try {
        const int order = j.at("order").get<int>();
        auto mult = j.at("mult_table").get<std::vector<std::vector<int>>>();
        if (static_cast<int>(mult.size()) != order) throw Error(ErrorKind::kInvalidGroup, "mult_table size differs from order");
        std::vector<Irrep> irreps;
        for (const auto &ij : j.at("irreps")) {
            Irrep ir;
            ir.label = ij.value("label", "irrep" + std::to_string(irreps.size()));
            ir.dim = ij.at("dim").get<int>();
            for (const auto &mj : ij.at("matrices")) ir.mats.push_back(matrix_from_json(mj));
            irreps.push_back(std::move(ir));
        }
        const auto &rj = j.at("rep");
        const auto &rmats = rj.is_object() ? rj.at("matrices") : rj;
        std::vector<Eigen::MatrixXcd> rep;
        for (const auto &mj : rmats) rep.push_back(matrix_from_json(mj));
        return make_group(j.value("name", "custom"), std::move(mult), std::move(irreps), std::move(rep));
    } catch (const nlohmann::json::exception &e) {
        throw Error(ErrorKind::kFormatError, e.what());
    }
}

FiniteGroup with_rep(FiniteGroup g, std::vector<Eigen::MatrixXcd> rep) {
    g.rep = std::move(rep);
    validate_group(g);
    return g;
}

Eigen::MatrixXcd rep_matrix(const FiniteGroup &g, int element, Factor factor) {
    const auto &m = g.rep[static_cast<std::size_t>(element)];
    return factor == Factor::kDefining ? Eigen::MatrixXcd(m) : Eigen::MatrixXcd(m.conjugate());
}

CGTable cg_finite(const FiniteGroup &g, int lambda, Factor factor) {
    if (lambda < 0 || lambda >= static_cast<int>(g.irreps.size())) throw Error(ErrorKind::kBlockMissing, "irrep index out of range");
    const Irrep &rl = g.irreps[static_cast<std::size_t>(lambda)];
    const int f = g.rep_dim();
    const Eigen::Index dim = static_cast<Eigen::Index>(rl.dim) * f;
    std::vector<Eigen::MatrixXcd> prod;
    for (int e = 0; e < g.order; ++e) {
        const Eigen::MatrixXcd r = rep_matrix(g, e, factor);
        const Eigen::MatrixXcd &a = rl.mats[static_cast<std::size_t>(e)];
        Eigen::MatrixXcd k(dim, dim);
        for (Eigen::Index i = 0; i < a.rows(); ++i)
            for (Eigen::Index j = 0; j < a.cols(); ++j) k.block(i * f, j * f, f, f) = a(i, j) * r;
        prod.push_back(std::move(k));
    }
    CGTable table;
    table.lambda = {lambda};
    table.factor = factor;
    table.lambda_dim = static_cast<std::size_t>(rl.dim);
    table.factor_dim = f;
    for (std::size_t mu = 0; mu < g.irreps.size(); ++mu) {
        const Irrep &rm = g.irreps[mu];
        std::vector<Eigen::MatrixXcd> proj(static_cast<std::size_t>(rm.dim), Eigen::MatrixXcd::Zero(dim, dim));
        for (int e = 0; e < g.order; ++e)
            for (int k = 0; k < rm.dim; ++k) proj[static_cast<std::size_t>(k)] += std::conj(rm.mats[static_cast<std::size_t>(e)](k, 0)) * prod[static_cast<std::size_t>(e)];
        for (auto &p : proj) p *= static_cast<double>(rm.dim) / g.order;
        // Deterministic Gram-Schmidt over the columns of P_{00}.
        std::vector<Eigen::VectorXcd> seeds;
        for (Eigen::Index c = 0; c < dim; ++c) {
            Eigen::VectorXcd v = proj[0].col(c);
            for (int pass = 0; pass < 2; ++pass)
                for (const auto &u : seeds) v -= u.dot(v) * u;
            if (v.norm() > 1e-9) seeds.push_back(v / v.norm());
        }
        for (std::size_t r = 0; r < seeds.size(); ++r) {
            Eigen::MatrixXcd w(dim, rm.dim);
            for (int k = 0; k < rm.dim; ++k) w.col(k) = proj[static_cast<std::size_t>(k)] * seeds[r];
            table.blocks.push_back(CGBlock{{static_cast<int>(mu)}, static_cast<int>(r), std::move(w)});
        }
    }
    table.build_index();
    return table;
}

double intertwining_error(const FiniteGroup &g, const CGTable &table) {
    const int lambda = table.lambda.at(0);
    const int f = table.factor_dim;
    const Eigen::MatrixXcd c = table.assembled();
    double err = 0.0;
    for (int e = 0; e < g.order; ++e) {
        const Eigen::MatrixXcd r = rep_matrix(g, e, table.factor);
        const Eigen::MatrixXcd &a = g.irreps[static_cast<std::size_t>(lambda)].mats[static_cast<std::size_t>(e)];
        Eigen::MatrixXcd k(a.rows() * f, a.cols() * f);
        for (Eigen::Index i = 0; i < a.rows(); ++i)
            for (Eigen::Index j = 0; j < a.cols(); ++j) k.block(i * f, j * f, f, f) = a(i, j) * r;
        Eigen::MatrixXcd blockdiag = Eigen::MatrixXcd::Zero(c.cols(), c.cols());
        Eigen::Index off = 0;
        for (const auto &b : table.blocks) {
            const auto &m = g.irreps[static_cast<std::size_t>(b.mu[0])].mats[static_cast<std::size_t>(e)];
            blockdiag.block(off, off, m.rows(), m.cols()) = m;
            off += m.rows();
        }
        err = std::max(err, (c.adjoint() * k * c - blockdiag).cwiseAbs().maxCoeff());
    }
    return err;
}

Complex haar_average_finite(const FiniteGroup &g, const std::vector<EntryFactor> &factors) {
    Complex sum = 0.0;
    for (int e = 0; e < g.order; ++e) {
        Complex prod = 1.0;
        for (const auto &f : factors) {
            const auto &r = g.rep[static_cast<std::size_t>(e)];
            Complex v;
            switch (f.type) {
                case QueryType::kForward:
                    v = r(f.row, f.col);
                    break;
                case QueryType::kConjugate:
                    v = std::conj(r(f.row, f.col));
                    break;
                case QueryType::kTranspose:
                    v = r(f.col, f.row);
                    break;
                case QueryType::kInverse:
                    v = std::conj(r(f.col, f.row));
                    break;
            }
            prod *= f.conjugate ? std::conj(v) : v;
        }
        sum += prod;
    }
    return sum / static_cast<double>(g.order);
}

Eigen::MatrixXi perm_V(const std::vector<int> &g) {
    const auto d = static_cast<Eigen::Index>(g.size());
    Eigen::MatrixXi v = Eigen::MatrixXi::Zero(d, d);
    for (Eigen::Index x = 0; x < d; ++x) v(g[static_cast<std::size_t>(x)], x) = 1;
    return v;
}

Eigen::MatrixXi perm_U(const std::vector<int> &g) {
    const int d = static_cast<int>(g.size());
    Eigen::MatrixXi u = Eigen::MatrixXi::Zero(d * d, d * d);
    for (int x = 0; x < d; ++x)
        for (int y = 0; y < d; ++y) u(x * d + (y + g[static_cast<std::size_t>(x)]) % d, x * d + y) = 1;
    return u;
}

Eigen::MatrixXi cx_d(int d) {
    Eigen::MatrixXi u = Eigen::MatrixXi::Zero(d * d, d * d);
    for (int x = 0; x < d; ++x)
        for (int y = 0; y < d; ++y) u(x * d + (x + y) % d, x * d + y) = 1;
    return u;
}

Eigen::MatrixXi swap_d(int d) {
    Eigen::MatrixXi u = Eigen::MatrixXi::Zero(d * d, d * d);
    for (int x = 0; x < d; ++x)
        for (int y = 0; y < d; ++y) u(y * d + x, x * d + y) = 1;
    return u;
}

std::vector<int> perm_inverse(const std::vector<int> &g) {
    std::vector<int> inv(g.size());
    for (std::size_t x = 0; x < g.size(); ++x) inv[static_cast<std::size_t>(g[x])] = static_cast<int>(x);
    return inv;
}

Eigen::MatrixXi perm_U_from_V(const std::vector<int> &g) {
    const int d = static_cast<int>(g.size());
    const Eigen::MatrixXi id = Eigen::MatrixXi::Identity(d, d);
    return kron_int(perm_V(perm_inverse(g)), id) * cx_d(d) * kron_int(perm_V(g), id);
}

namespace {
Eigen::MatrixXi project_ancilla(const Eigen::MatrixXi &m, int d) {
    Eigen::MatrixXi v(d, d);
    for (int a = 0; a < d; ++a)
        for (int x = 0; x < d; ++x) v(a, x) = m(a * d, x * d);
    return v;
}
}  // namespace

Eigen::MatrixXi perm_V_from_U(const std::vector<int> &g) {
    const int d = static_cast<int>(g.size());
    return project_ancilla(perm_U(perm_inverse(g)) * swap_d(d) * perm_U(g), d);
}

Eigen::MatrixXi perm_V_from_U_adjoint(const std::vector<int> &g) {
    const int d = static_cast<int>(g.size());
    return project_ancilla(perm_U(perm_inverse(g)).transpose() * swap_d(d) * perm_U(g), d);
}

std::vector<int> parse_cycles(const std::string &text, int d) {
    std::vector<int> p(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) p[static_cast<std::size_t>(i)] = i;
    std::size_t pos = 0;
    auto skip = [&] {
        while (pos < text.size() && (text[pos] == ' ' || text[pos] == ',')) ++pos;
    };
    skip();
    while (pos < text.size()) {
        if (text[pos] != '(') throw Error(ErrorKind::kFormatError, "expected '(' in cycle notation");
        ++pos;
        std::vector<int> cycle;
        for (;;) {
            skip();
            if (pos >= text.size()) throw Error(ErrorKind::kFormatError, "unterminated cycle");
            if (text[pos] == ')') {
                ++pos;
                break;
            }
            std::size_t used = 0;
            const int v = std::stoi(text.substr(pos), &used);
            pos += used;
            if (v < 1 || v > d) throw Error(ErrorKind::kOutOfRange, "cycle symbol outside [1, d]");
            cycle.push_back(v - 1);
        }
        // p = p o cycle: the rightmost cycle acts first.
        std::vector<int> composed(p.size());
        for (std::size_t x = 0; x < p.size(); ++x) {
            int y = static_cast<int>(x);
            for (std::size_t i = 0; i < cycle.size(); ++i)
                if (cycle[i] == y) {
                    y = cycle[(i + 1) % cycle.size()];
                    break;
                }
            composed[x] = p[static_cast<std::size_t>(y)];
        }
        p = composed;
        skip();
    }
    std::vector<int> check = p;
    std::sort(check.begin(), check.end());
    for (int i = 0; i < d; ++i)
        if (check[static_cast<std::size_t>(i)] != i) throw Error(ErrorKind::kFormatError, "cycles repeat a symbol");
    return p;
}

}  // namespace haarcg
