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

#include "haarcg/cg_table.hpp"

#include <cmath>
#include <cstdint>
#include <istream>
#include <ostream>

#include "haarcg/errors.hpp"
#include "haarcg/serialize.hpp"

namespace haarcg {

namespace {
constexpr char kMagic[4] = {'H', 'C', 'G', 'T'};
constexpr std::uint32_t kVersion = 1;
}  // namespace

const char *factor_name(Factor f) { return f == Factor::kDefining ? "defining" : "dual"; }

void CGTable::build_index(double zero_tol) {
    const std::size_t rows = lambda_dim * static_cast<std::size_t>(factor_dim);
    entries.assign(rows, {});
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        const auto &iso = blocks[b].isometry;
        for (Eigen::Index col = 0; col < iso.cols(); ++col) {
            for (Eigen::Index row = 0; row < iso.rows(); ++row) {
                const Complex c = iso(row, col);
                if (std::abs(c) > zero_tol) {
                    entries[static_cast<std::size_t>(row)].push_back(CGEntry{b, static_cast<std::size_t>(col), c});
                }
            }
        }
    }
}

const CGBlock *CGTable::find_block(const Label &mu, int multiplicity) const {
    for (const auto &b : blocks) {
        if (b.mu == mu && b.multiplicity == multiplicity) return &b;
    }
    return nullptr;
}

Eigen::MatrixXcd CGTable::assembled() const {
    Eigen::Index cols = 0;
    for (const auto &b : blocks) cols += b.isometry.cols();
    Eigen::MatrixXcd c(static_cast<Eigen::Index>(lambda_dim) * factor_dim, cols);
    Eigen::Index offset = 0;
    for (const auto &b : blocks) {
        c.middleCols(offset, b.isometry.cols()) = b.isometry;
        offset += b.isometry.cols();
    }
    return c;
}

double isometry_error(const CGTable &table) {
    const Eigen::MatrixXcd c = table.assembled();
    const Eigen::MatrixXcd g = c.adjoint() * c;
    return (g - Eigen::MatrixXcd::Identity(g.rows(), g.cols())).cwiseAbs().maxCoeff();
}

DualCGTensor dual_cg(const CGTable &table, const Label &lambda, const Label &mu, double dim_lambda, double dim_mu,
                     DualOrientation orientation, int multiplicity) {
    if (table.lambda != lambda) throw Error(ErrorKind::kBlockMissing, "table was built for a different lambda");
    const CGBlock *block = table.find_block(mu, multiplicity);
    if (block == nullptr) throw Error(ErrorKind::kBlockMissing, "mu does not occur in the decomposition");
    const double scale = orientation == DualOrientation::kSqrtLambdaOverMu ? std::sqrt(dim_lambda / dim_mu)
                                                                           : std::sqrt(dim_mu / dim_lambda);
    DualCGTensor out{lambda, mu, multiplicity, {}};
    const auto &iso = block->isometry;
    for (Eigen::Index row = 0; row < iso.rows(); ++row) {
        for (Eigen::Index col = 0; col < iso.cols(); ++col) {
            const Complex c = iso(row, col);
            if (std::abs(c) <= 1e-13) continue;
            out.entries.push_back(DualEntry{static_cast<std::size_t>(row) / static_cast<std::size_t>(table.factor_dim),
                                            static_cast<int>(row % table.factor_dim), static_cast<std::size_t>(col),
                                            scale * c});
        }
    }
    return out;
}

void write_cg_table(std::ostream &os, const CGTable &table, const std::string &convention) {
    BinaryWriter w(os);
    w.raw(kMagic, sizeof(kMagic));
    w.u32(kVersion);
    w.str(convention);
    w.ints(table.lambda);
    w.u32(table.factor == Factor::kDefining ? 0 : 1);
    w.u64(table.lambda_dim);
    w.i32(table.factor_dim);
    w.u32(static_cast<std::uint32_t>(table.blocks.size()));
    for (const auto &b : table.blocks) {
        w.ints(b.mu);
        w.i32(b.multiplicity);
        w.u64(static_cast<std::uint64_t>(b.isometry.rows()));
        w.u64(static_cast<std::uint64_t>(b.isometry.cols()));
        for (Eigen::Index i = 0; i < b.isometry.size(); ++i) w.cplx(b.isometry.data()[i]);
    }
}

CGTable read_cg_table(std::istream &is, const std::string &expected_convention) {
    BinaryReader r(is);
    char magic[4];
    r.raw(magic, sizeof(magic));
    if (std::string(magic, 4) != std::string(kMagic, 4)) throw Error(ErrorKind::kFormatError, "not a CG table");
    if (r.u32() != kVersion) throw Error(ErrorKind::kFormatError, "unsupported CG table version");
    if (r.str() != expected_convention) throw Error(ErrorKind::kFormatError, "CG table convention mismatch");
    CGTable t;
    t.lambda = r.ints();
    t.factor = r.u32() == 0 ? Factor::kDefining : Factor::kDual;
    t.lambda_dim = r.u64();
    t.factor_dim = r.i32();
    const std::uint32_t nblocks = r.u32();
    for (std::uint32_t k = 0; k < nblocks; ++k) {
        CGBlock b;
        b.mu = r.ints();
        b.multiplicity = r.i32();
        const auto rows = static_cast<Eigen::Index>(r.u64());
        const auto cols = static_cast<Eigen::Index>(r.u64());
        b.isometry.resize(rows, cols);
        for (Eigen::Index i = 0; i < b.isometry.size(); ++i) b.isometry.data()[i] = r.cplx();
        t.blocks.push_back(std::move(b));
    }
    t.build_index();
    return t;
}

}  // namespace haarcg
