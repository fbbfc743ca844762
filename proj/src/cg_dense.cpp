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

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>

#include "haarcg/cg.hpp"
#include "haarcg/errors.hpp"

namespace haarcg {

namespace {

Eigen::MatrixXd kron(const Eigen::MatrixXd &a, const Eigen::MatrixXd &b) {
    Eigen::MatrixXd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

// l_{kj} = m_{kj} - j + 1 with 1-based k, j.
double shifted(const GTPattern &m, int k, int j) { return m.rows[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(j - 1)] - j + 1; }

double raising_coefficient(const GTPattern &m, int k, int i) {
    const double lki = shifted(m, k, i);
    double num = -1.0;
    for (int j = 1; j <= k + 1; ++j) num *= lki - shifted(m, k + 1, j);
    for (int j = 1; j <= k - 1; ++j) num *= lki - shifted(m, k - 1, j) + 1.0;
    double den = 1.0;
    for (int j = 1; j <= k; ++j) {
        if (j == i) continue;
        const double diff = lki - shifted(m, k, j);
        den *= diff * (diff + 1.0);
    }
    return std::sqrt(std::abs(num / den));
}

Eigen::MatrixXd product_operator(const GeneratorSet &g, Factor factor, int i, int j) {
    const int d = g.d();
    const auto n = static_cast<Eigen::Index>(g.basis.size());
    return kron(g.e(i, j), Eigen::MatrixXd::Identity(d, d)) + kron(Eigen::MatrixXd::Identity(n, n), factor_generator(factor, d, i, j));
}

int depth_of(const std::vector<int> &weight, const std::vector<int> &top_weight) {
    int depth = 0;
    int partial = 0;
    for (std::size_t k = 0; k + 1 < weight.size(); ++k) {
        partial += top_weight[k] - weight[k];
        depth += partial;
    }
    return depth;
}

}  // namespace

Eigen::MatrixXd GeneratorSet::e(int i, int j) const {
    if (i == j) return cartan[static_cast<std::size_t>(i - 1)];
    if (j == i + 1) return raising[static_cast<std::size_t>(i - 1)];
    if (i == j + 1) return lowering[static_cast<std::size_t>(j - 1)];
    if (i < j) {
        const Eigen::MatrixXd a = e(i, j - 1);
        const Eigen::MatrixXd &b = raising[static_cast<std::size_t>(j - 2)];
        return a * b - b * a;
    }
    const Eigen::MatrixXd a = e(i, j + 1);
    const Eigen::MatrixXd &b = lowering[static_cast<std::size_t>(j - 1)];
    return a * b - b * a;
}

GeneratorSet generators_gt(const HighestWeight &hw, std::size_t cap) {
    GeneratorSet g;
    g.weight = hw;
    g.basis = enumerate_gt(hw, cap);
    const int d = hw.d();
    const auto n = static_cast<Eigen::Index>(g.basis.size());
    for (int k = 1; k <= d; ++k) {
        Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
        for (Eigen::Index a = 0; a < n; ++a) {
            const auto &m = g.basis[static_cast<std::size_t>(a)];
            h(a, a) = m.row_sum(k) - m.row_sum(k - 1);
        }
        g.cartan.push_back(std::move(h));
    }
    for (int k = 1; k < d; ++k) {
        Eigen::MatrixXd up = Eigen::MatrixXd::Zero(n, n);
        for (Eigen::Index a = 0; a < n; ++a) {
            const auto &m = g.basis[static_cast<std::size_t>(a)];
            for (int i = 1; i <= k; ++i) {
                GTPattern target = m;
                ++target.rows[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(i - 1)];
                if (!validate_gt(target)) continue;
                const auto b = static_cast<Eigen::Index>(pattern_index(g.basis, target));
                up(b, a) = raising_coefficient(m, k, i);
            }
        }
        g.lowering.push_back(up.transpose());
        g.raising.push_back(std::move(up));
    }
    return g;
}

Eigen::MatrixXd factor_generator(Factor factor, int d, int i, int j) {
    Eigen::MatrixXd e = Eigen::MatrixXd::Zero(d, d);
    if (factor == Factor::kDefining) {
        e(i - 1, j - 1) = 1.0;
    } else {
        e(j - 1, i - 1) = -1.0;
    }
    return e;
}

CGTable cg_dense(const HighestWeight &lambda, Factor factor, std::size_t cap) {
    const int d = lambda.d();
    if (d < 1) throw Error(ErrorKind::kShapeError, "empty highest weight");
    const std::uint64_t dl = weyl_dimension(lambda);
    if (dl * static_cast<std::uint64_t>(d) > cap) throw Error(ErrorKind::kCapExceeded, "product space exceeds cap");
    const GeneratorSet g = generators_gt(lambda, cap);
    const auto n = static_cast<Eigen::Index>(g.basis.size());
    const Eigen::Index dim = n * d;
    const int sign = factor == Factor::kDefining ? 1 : -1;

    std::vector<std::vector<int>> weights(static_cast<std::size_t>(dim));
    for (Eigen::Index a = 0; a < n; ++a) {
        const std::vector<int> w = weight_of(g.basis[static_cast<std::size_t>(a)]);
        for (int x = 0; x < d; ++x) {
            auto wx = w;
            wx[static_cast<std::size_t>(x)] += sign;
            weights[static_cast<std::size_t>(a * d + x)] = std::move(wx);
        }
    }
    std::vector<Eigen::MatrixXd> raise, lower;
    for (int k = 1; k < d; ++k) {
        raise.push_back(product_operator(g, factor, k, k + 1));
        lower.push_back(product_operator(g, factor, k + 1, k));
    }
    const auto top_lambda = static_cast<Eigen::Index>(pattern_index(g.basis, highest_pattern(lambda)));

    CGTable table;
    table.lambda = lambda.entries;
    table.factor = factor;
    table.lambda_dim = static_cast<std::size_t>(n);
    table.factor_dim = d;

    for (int r = 1; r <= d; ++r) {
        HighestWeight mu;
        try {
            mu = factor == Factor::kDefining ? add_box(lambda, r) : remove_box(lambda, r);
        } catch (const Error &) {
            continue;
        }
        std::vector<Eigen::Index> support;
        for (Eigen::Index a = 0; a < dim; ++a) {
            if (weights[static_cast<std::size_t>(a)] == mu.entries) support.push_back(a);
        }
        const auto s = static_cast<Eigen::Index>(support.size());
        Eigen::VectorXd hw_vec = Eigen::VectorXd::Zero(dim);
        if (d == 1) {
            if (s != 1) throw Error(ErrorKind::kMultiplicityAnomaly, "unexpected weight space");
            hw_vec(support[0]) = 1.0;
        } else {
            Eigen::MatrixXd stacked(dim * (d - 1), s);
            for (int k = 0; k < d - 1; ++k) {
                for (Eigen::Index c = 0; c < s; ++c) stacked.block(k * dim, c, dim, 1) = raise[static_cast<std::size_t>(k)].col(support[static_cast<std::size_t>(c)]);
            }
            Eigen::JacobiSVD<Eigen::MatrixXd> svd(stacked, Eigen::ComputeFullV);
            const auto &sv = svd.singularValues();
            const double tol = 1e-9 * std::max(1.0, sv.size() > 0 ? sv(0) : 0.0);
            Eigen::Index rank = 0;
            for (Eigen::Index i = 0; i < sv.size(); ++i) rank += sv(i) > tol ? 1 : 0;
            if (s - rank != 1) {
                throw Error(ErrorKind::kMultiplicityAnomaly, "highest-weight space of " + to_string(mu) + " has dimension " + std::to_string(s - rank));
            }
            const Eigen::VectorXd v = svd.matrixV().col(s - 1);
            for (Eigen::Index c = 0; c < s; ++c) hw_vec(support[static_cast<std::size_t>(c)]) = v(c);
        }
        Eigen::Index anchor = top_lambda * d + (r - 1);
        if (std::abs(hw_vec(anchor)) < 1e-8) {
            for (Eigen::Index a = 0; a < dim; ++a) {
                if (std::abs(hw_vec(a)) > 1e-8) {
                    anchor = a;
                    break;
                }
            }
        }
        hw_vec /= hw_vec.norm();
        if (hw_vec(anchor) < 0) hw_vec = -hw_vec;

        const GeneratorSet gm = generators_gt(mu, cap);
        const auto nm = static_cast<Eigen::Index>(gm.basis.size());
        const auto top_mu = static_cast<Eigen::Index>(pattern_index(gm.basis, highest_pattern(mu)));
        Eigen::MatrixXd phi = Eigen::MatrixXd::Zero(dim, nm);
        phi.col(top_mu) = hw_vec;

        std::map<std::vector<int>, std::vector<Eigen::Index>> by_weight;
        std::map<int, std::vector<std::vector<int>>> by_depth;
        for (Eigen::Index a = 0; a < nm; ++a) by_weight[weight_of(gm.basis[static_cast<std::size_t>(a)])].push_back(a);
        for (const auto &[w, idx] : by_weight) by_depth[depth_of(w, mu.entries)].push_back(w);

        for (const auto &[depth, ws] : by_depth) {
            if (depth == 0) continue;
            for (const auto &w : ws) {
                const auto &targets = by_weight[w];
                const auto nt = static_cast<Eigen::Index>(targets.size());
                std::vector<Eigen::VectorXd> a_rows;
                std::vector<Eigen::VectorXd> b_rows;
                for (int k = 1; k < d; ++k) {
                    std::vector<int> src = w;
                    ++src[static_cast<std::size_t>(k - 1)];
                    --src[static_cast<std::size_t>(k)];
                    auto it = by_weight.find(src);
                    if (it == by_weight.end()) continue;
                    for (Eigen::Index q : it->second) {
                        Eigen::VectorXd a(nt);
                        for (Eigen::Index i = 0; i < nt; ++i) a(i) = gm.lowering[static_cast<std::size_t>(k - 1)](targets[static_cast<std::size_t>(i)], q);
                        if (a.cwiseAbs().maxCoeff() == 0.0) continue;
                        a_rows.push_back(std::move(a));
                        b_rows.push_back(lower[static_cast<std::size_t>(k - 1)] * phi.col(q));
                    }
                }
                Eigen::MatrixXd amat(static_cast<Eigen::Index>(a_rows.size()), nt);
                Eigen::MatrixXd bmat(static_cast<Eigen::Index>(b_rows.size()), dim);
                for (std::size_t e = 0; e < a_rows.size(); ++e) {
                    amat.row(static_cast<Eigen::Index>(e)) = a_rows[e].transpose();
                    bmat.row(static_cast<Eigen::Index>(e)) = b_rows[e].transpose();
                }
                const Eigen::MatrixXd x = amat.completeOrthogonalDecomposition().solve(bmat);
                for (Eigen::Index i = 0; i < nt; ++i) phi.col(targets[static_cast<std::size_t>(i)]) = x.row(i).transpose();
            }
        }
        table.blocks.push_back(CGBlock{mu.entries, 0, phi.cast<Complex>()});
    }
    table.build_index();
    return table;
}

double intertwining_error(const CGTable &table) {
    const HighestWeight lambda(table.lambda);
    const int d = lambda.d();
    const GeneratorSet g = generators_gt(lambda);
    std::vector<GeneratorSet> gms;
    for (const auto &b : table.blocks) gms.push_back(generators_gt(HighestWeight(b.mu)));
    const Eigen::MatrixXcd c = table.assembled();
    double err = 0.0;
    for (int i = 1; i <= d; ++i) {
        for (int j = 1; j <= d; ++j) {
            const Eigen::MatrixXcd lhs = c.adjoint() * product_operator(g, table.factor, i, j).cast<Complex>() * c;
            Eigen::MatrixXcd rhs = Eigen::MatrixXcd::Zero(lhs.rows(), lhs.cols());
            Eigen::Index off = 0;
            for (const auto &gm : gms) {
                const Eigen::MatrixXd e = gm.e(i, j);
                rhs.block(off, off, e.rows(), e.cols()) = e.cast<Complex>();
                off += e.rows();
            }
            err = std::max(err, (lhs - rhs).cwiseAbs().maxCoeff());
        }
    }
    return err;
}

std::string cg_cache_filename(const HighestWeight &lambda, Factor factor) {
    std::string name = "cg_d" + std::to_string(lambda.d()) + "_" + factor_name(factor);
    for (int v : lambda.entries) name += v < 0 ? "_m" + std::to_string(-v) : "_" + std::to_string(v);
    std::string tag = kCGConventionTag;
    for (char &ch : tag) {
        if (ch == '/') ch = '-';
    }
    return name + "_" + tag + ".hcgt";
}

std::shared_ptr<const CGTable> CGCache::get(const HighestWeight &lambda, Factor factor) {
    std::lock_guard<std::mutex> lock(mu_);
    const auto key = std::make_pair(lambda.entries, factor);
    if (auto it = tables_.find(key); it != tables_.end()) return it->second;
    std::shared_ptr<const CGTable> table;
    std::filesystem::path path;
    if (!disk_dir_.empty()) {
        path = std::filesystem::path(disk_dir_) / cg_cache_filename(lambda, factor);
        std::ifstream in(path, std::ios::binary);
        if (in) {
            try {
                table = std::make_shared<const CGTable>(read_cg_table(in, kCGConventionTag));
            } catch (const Error &) {
                table.reset();
            }
        }
    }
    if (!table) {
        table = std::make_shared<const CGTable>(cg_dense(lambda, factor));
        if (!disk_dir_.empty()) {
            std::error_code ec;
            std::filesystem::create_directories(disk_dir_, ec);
            const auto tmp = path.string() + ".tmp";
            {
                std::ofstream out(tmp, std::ios::binary);
                if (out) write_cg_table(out, *table, kCGConventionTag);
            }
            std::filesystem::rename(tmp, path, ec);
        }
    }
    tables_.emplace(key, table);
    return table;
}

std::size_t CGCache::size() const {
    std::lock_guard<std::mutex> lock(mu_);
    return tables_.size();
}

CGCache &default_cg_cache() {
    static CGCache cache([] {
        const char *dir = std::getenv("HAARCG_CACHE_DIR");
        return std::string(dir == nullptr ? "" : dir);
    }());
    return cache;
}

}  // namespace haarcg
