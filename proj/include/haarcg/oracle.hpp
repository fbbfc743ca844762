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


/**
 * @file
 * Compressed oracle simulation.  A state stores the Peter-Weyl coefficients of
 * the purified random group element: amplitude a(lambda, i, j, s) multiplies
 * sqrt(d_lambda) rho_lambda(g)_{ij} |s>.  Queries multiply by an entry of R(g)
 * and are expanded back into irreps with Clebsch-Gordan tables, so a key only
 * ever holds one irrep label and two basis labels.
 */

#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "haarcg/cg.hpp"
#include "haarcg/cg_table.hpp"
#include "haarcg/finite_group.hpp"
#include "haarcg/gtcompress.hpp"
#include "haarcg/query.hpp"

namespace haarcg {

using Sink = std::function<void(const Label &mu, const Label &ket, const Label &bra, Complex coeff)>;

class OracleBackend {
  public:
    virtual ~OracleBackend() = default;

    virtual std::string name() const = 0;
    virtual int rep_dim() const = 0;
    virtual Label vacuum_irrep() const = 0;
    virtual Label vacuum_basis() const = 0;
    virtual bool supports(QueryType) const { return true; }

    /// Expands sqrt(d_lambda) rho_lambda(g)_{ij} Q(g)_{yx} as sum c sqrt(d_mu) rho_mu(g)_{kl},
    /// calling emit(mu, k, l, c) per term.  Copies of the same mu may be emitted separately.
    virtual void multiply(const Label &lambda, const Label &i, const Label &j, QueryType q, int x, int y,
                          const Sink &emit) const = 0;

    /// Storage cost of one memory key (irrep plus both basis labels).
    virtual std::size_t key_bits(const Label &lambda, const Label &ket, const Label &bra) const = 0;
};

/// Backends driven by explicit CG tables; they also provide path isometries.
class TableBackend : public OracleBackend {
  public:
    virtual std::shared_ptr<const CGTable> table(const Label &lambda, Factor factor) const = 0;
    virtual double dim(const Label &lambda) const = 0;

    void multiply(const Label &lambda, const Label &i, const Label &j, QueryType q, int x, int y,
                  const Sink &emit) const override;
    std::size_t key_bits(const Label &lambda, const Label &ket, const Label &bra) const override;
};

/// U(d) with dense Gelfand-Tsetlin tables; any highest weight, all four query types.
class DenseUnitaryBackend : public TableBackend {
  public:
    explicit DenseUnitaryBackend(int d, CGCache *cache = &default_cg_cache());

    std::string name() const override { return "U" + std::to_string(d_) + "-dense"; }
    int rep_dim() const override { return d_; }
    Label vacuum_irrep() const override { return Label(static_cast<std::size_t>(d_), 0); }
    Label vacuum_basis() const override { return {0}; }
    std::shared_ptr<const CGTable> table(const Label &lambda, Factor factor) const override;
    double dim(const Label &lambda) const override;

  private:
    int d_;
    CGCache *cache_;
};

/// Finite group with the queried representation R.
class FiniteGroupBackend : public TableBackend {
  public:
    explicit FiniteGroupBackend(FiniteGroup group);

    std::string name() const override { return group_.name; }
    int rep_dim() const override { return group_.rep_dim(); }
    Label vacuum_irrep() const override { return {group_.trivial_irrep()}; }
    Label vacuum_basis() const override { return {0}; }
    std::shared_ptr<const CGTable> table(const Label &lambda, Factor factor) const override;
    double dim(const Label &lambda) const override;
    const FiniteGroup &group() const { return group_; }

  private:
    FiniteGroup group_;
    mutable std::mutex mu_;
    mutable std::map<std::pair<int, Factor>, std::shared_ptr<const CGTable>> tables_;
};

/// U(d) with closed-form coefficients on compressed labels.  Forward queries only; the
/// cost of a query does not depend on d.
class FastUnitaryBackend : public OracleBackend {
  public:
    explicit FastUnitaryBackend(int d) : d_(d) {}

    std::string name() const override { return "U" + std::to_string(d_) + "-fast"; }
    int rep_dim() const override { return d_; }
    Label vacuum_irrep() const override { return {}; }
    Label vacuum_basis() const override { return encode_label(CompressedGT{}); }
    bool supports(QueryType q) const override { return q == QueryType::kForward; }
    void multiply(const Label &lambda, const Label &i, const Label &j, QueryType q, int x, int y,
                  const Sink &emit) const override;
    std::size_t key_bits(const Label &lambda, const Label &ket, const Label &bra) const override;

    /// [rows, p_1..p_rows, row entries...]
    static Label encode_label(const CompressedGT &c);
    static CompressedGT decode_label(const Label &label);

  private:
    int d_;
};

/// Shared by the CLI and the tests: "u" / "u-dense" / "u-fast" with d, or a finite group name.
std::shared_ptr<const OracleBackend> make_backend(const std::string &kind, int d);

struct OracleKey {
    Label lambda;
    Label ket;
    Label bra;
    std::vector<int> sys;

    auto operator<=>(const OracleKey &) const = default;
};

struct OracleState {
    std::shared_ptr<const OracleBackend> backend;
    std::vector<int> sys_dims;
    std::map<OracleKey, Complex> amps;

    double norm_squared() const;
    std::size_t system_dim() const;
};

/// Vacuum with the system word in computational basis state `word` (zeros if empty).
OracleState init_vacuum(std::shared_ptr<const OracleBackend> backend, std::vector<int> sys_dims = {},
                        std::vector<int> word = {});
/// Vacuum with system state psi; the first register is the most significant digit.
OracleState init_vacuum_state(std::shared_ptr<const OracleBackend> backend, std::vector<int> sys_dims,
                              const Eigen::VectorXcd &psi);

/// One query on system register `reg`.  Throws kUnsupportedQueryType, kDimensionMismatch.
OracleState apply_oracle(const OracleState &state, QueryType q, int reg);

/// Applies `op` (square, product of the selected register dims) to registers `regs`, the
/// first listed register being the most significant.  Throws kDimensionMismatch.
OracleState apply_system_operator(const OracleState &state, const Eigen::MatrixXcd &op, const std::vector<int> &regs);

/// Density matrix of the whole system word.  Throws kCapExceeded past `cap`.
Eigen::MatrixXcd trace_out_aux(const OracleState &state, std::size_t cap = 4096);
/// Density matrix of registers `keep` (in the listed order), the rest traced out.
Eigen::MatrixXcd reduced_density(const OracleState &state, const std::vector<int> &keep, std::size_t cap = 4096);

void write_snapshot(std::ostream &os, const OracleState &state);
/// Throws kFormatError, or kInconsistentInputs when the backend name differs.
OracleState read_snapshot(std::istream &is, std::shared_ptr<const OracleBackend> backend);

// Moments ---------------------------------------------------------------------

struct ChainKey {
    Label lambda;
    Label ket;
    Label bra;

    auto operator<=>(const ChainKey &) const = default;
};
using ChainAmplitudes = std::map<ChainKey, Complex>;

/// Coefficients of prod_k Q_k(g)_{y_k x_k} starting from the vacuum.
ChainAmplitudes chain_amplitudes(const OracleBackend &backend, const std::vector<QueryType> &types,
                                 const std::vector<int> &x, const std::vector<int> &y);

/// E[prod_k Q_k(g)_{y_k x_k} conj(Q_k(g)_{yh_k xh_k})] read off the compressed oracle.
Complex moment_tensor(const OracleBackend &backend, const std::vector<QueryType> &types, const std::vector<int> &x,
                      const std::vector<int> &y, const std::vector<int> &xh, const std::vector<int> &yh);

/// The same moment from the Weingarten oracle (U(d)) or the uniform average (finite groups).
Complex reference_moment(const OracleBackend &backend, const std::vector<QueryType> &types, const std::vector<int> &x,
                         const std::vector<int> &y, const std::vector<int> &xh, const std::vector<int> &yh);

/// Isometry W_P from V_lambda into the product of the query factors along a chain of irreps.
struct PathIsometry {
    Label lambda;
    std::vector<std::pair<Label, int>> steps;  // (irrep, multiplicity copy) after each factor
    Eigen::MatrixXcd w;                         // rows: factor word, first factor most significant
};

/// All paths for the factor sequence.  Throws kCapExceeded when the word space exceeds `cap`.
std::vector<PathIsometry> path_isometries(const TableBackend &backend, const std::vector<Factor> &factors,
                                          std::size_t cap = 4096);

/// E_{T,S} = W_T W_S^dagger.  Throws kInconsistentInputs for different irreps.
Eigen::MatrixXcd matrix_unit(const PathIsometry &t, const PathIsometry &s);

/// Sum over irreps of (1/d_lambda) sum_{T,S} <a|E_{T,S}|ah> conj(<b|E_{T,S}|bh>) with the path
/// matrix units precomputed for one query script.
class CommutantMoments {
  public:
    CommutantMoments(const TableBackend &backend, std::vector<QueryType> types, std::size_t cap = 4096);

    Complex operator()(const std::vector<int> &x, const std::vector<int> &y, const std::vector<int> &xh,
                       const std::vector<int> &yh) const;
    const std::vector<PathIsometry> &paths() const { return paths_; }

  private:
    struct Unit {
        double weight;
        Eigen::MatrixXcd e;
    };
    std::vector<QueryType> types_;
    int d_;
    std::vector<PathIsometry> paths_;
    std::vector<Unit> units_;
};

Complex commutant_moment(const TableBackend &backend, const std::vector<QueryType> &types, const std::vector<int> &x,
                         const std::vector<int> &y, const std::vector<int> &xh, const std::vector<int> &yh);

}  // namespace haarcg
