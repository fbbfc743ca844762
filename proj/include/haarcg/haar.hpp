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
 * Exact Haar moments of U(d): symmetric-group characters, Weingarten
 * functions and moment evaluation, plus a Haar sampler for Monte Carlo checks.
 */

#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "haarcg/query.hpp"

namespace haarcg {

/// Exact rational on __int128 with overflow detection (kOverflow).
class Rational {
  public:
    Rational() = default;
    Rational(long long n) : num_(n) {}  // NOLINT: implicit by design
    Rational(__int128 n, __int128 d);

    __int128 num() const { return num_; }
    __int128 den() const { return den_; }
    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
    std::string str() const;
    bool is_zero() const { return num_ == 0; }

    friend Rational operator+(const Rational &a, const Rational &b);
    friend Rational operator-(const Rational &a, const Rational &b);
    friend Rational operator*(const Rational &a, const Rational &b);
    friend Rational operator/(const Rational &a, const Rational &b);
    Rational operator-() const { return Rational(-num_, den_); }
    Rational &operator+=(const Rational &o) { return *this = *this + o; }
    Rational &operator-=(const Rational &o) { return *this = *this - o; }
    friend bool operator==(const Rational &a, const Rational &b) { return a.num_ == b.num_ && a.den_ == b.den_; }

  private:
    __int128 num_ = 0;
    __int128 den_ = 1;
};

using Permutation = std::vector<int>;
using CycleType = std::vector<int>;  // weakly decreasing parts

std::vector<Permutation> all_permutations(int t);
CycleType cycle_type(const Permutation &p);
int cycle_count(const Permutation &p);

/// chi^lambda on the class `rho`, by Murnaghan-Nakayama.
long long sn_character(const std::vector<int> &lambda, const CycleType &rho);

/// Exact Wg(class, d) from the class-reduced Gram system.  Throws kSingularGram when d < t.
Rational weingarten(const CycleType &cls, int d, int t);

/// Exact Wg(class, d) from the character expansion restricted to l(lambda) <= d.
Rational weingarten_charsum(const CycleType &cls, int d, int t);

struct WeingartenTable {
    int t = 0;
    int d = 0;
    bool pseudo_inverse = false;  // set when d < t
    std::string warning;
    std::vector<Permutation> perms;
    std::vector<double> values;  // Wg(perms[i])
    std::map<Permutation, int> index;
};

/// Cached per (t, d).  Uses the exact solve when d >= t and the Moore-Penrose inverse of the
/// full Gram matrix otherwise.
const WeingartenTable &weingarten_table(int t, int d);

/// E[prod_k U_{u_k} prod_k conj(U_{v_k})] for entry lists of (row, col), 0-based.
double haar_moment_unitary(const std::vector<std::pair<int, int>> &u, const std::vector<std::pair<int, int>> &ubar, int d);

/// E[prod_k Q_k(U)_{y_k x_k} conj(Q_k(U)_{yh_k xh_k})] for a query script over U(d).
double haar_moment_queries(const std::vector<QueryType> &types, const std::vector<int> &x, const std::vector<int> &y,
                           const std::vector<int> &xh, const std::vector<int> &yh, int d);

/// Polynomial in the entries of a Haar-random U and their conjugates.
class HaarPolynomial {
  public:
    using Entry = std::pair<int, int>;
    struct Monomial {
        std::vector<Entry> u;     // sorted
        std::vector<Entry> ubar;  // sorted

        auto operator<=>(const Monomial &) const = default;
    };

    HaarPolynomial() = default;
    static HaarPolynomial constant(std::complex<double> c);
    /// U_{row,col}, or its conjugate.
    static HaarPolynomial entry(int row, int col, bool conjugate = false);

    HaarPolynomial operator*(const HaarPolynomial &o) const;
    HaarPolynomial &operator+=(const HaarPolynomial &o);
    HaarPolynomial scaled(std::complex<double> c) const;
    HaarPolynomial conj() const;
    bool is_zero() const { return terms_.empty(); }
    const std::map<Monomial, std::complex<double>> &terms() const { return terms_; }

    /// Exact Haar average through the Weingarten table.
    std::complex<double> expectation(int d) const;

  private:
    std::map<Monomial, std::complex<double>> terms_;
};

/// Haar-random unitary: Gaussian matrix, Householder QR, phases of R's diagonal moved into Q.
Eigen::MatrixXcd sample_haar(int d, std::uint64_t seed);

}  // namespace haarcg
