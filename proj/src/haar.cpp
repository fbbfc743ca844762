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

#include "haarcg/haar.hpp"

#include <algorithm>
#include <iterator>
#include <memory>
#include <mutex>
#include <random>
#include <set>

#include "haarcg/errors.hpp"
#include "haarcg/repcore.hpp"

namespace haarcg {

namespace {

__int128 gcd128(__int128 a, __int128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        const __int128 r = a % b;
        a = b;
        b = r;
    }
    return a;
}

__int128 mul(__int128 a, __int128 b) {
    __int128 out;
    if (__builtin_mul_overflow(a, b, &out)) throw Error(ErrorKind::kOverflow, "rational overflow");
    return out;
}

__int128 add(__int128 a, __int128 b) {
    __int128 out;
    if (__builtin_add_overflow(a, b, &out)) throw Error(ErrorKind::kOverflow, "rational overflow");
    return out;
}

std::string to_str(__int128 v) {
    if (v == 0) return "0";
    const bool neg = v < 0;
    std::string s;
    while (v != 0) {
        const int digit = static_cast<int>(v % 10);
        s.push_back(static_cast<char>('0' + (neg ? -digit : digit)));
        v /= 10;
    }
    if (neg) s.push_back('-');
    std::reverse(s.begin(), s.end());
    return s;
}

Permutation compose(const Permutation &a, const Permutation &b) {
    Permutation out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[static_cast<std::size_t>(b[i])];
    return out;
}

Permutation inverse(const Permutation &a) {
    Permutation out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[static_cast<std::size_t>(a[i])] = static_cast<int>(i);
    return out;
}

long long ipow(long long b, int e) {
    long long r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

long long factorial(int n) { return n <= 1 ? 1 : n * factorial(n - 1); }

long long mn_rec(std::vector<int> beta, const CycleType &rho, std::size_t k) {
    if (k == rho.size()) return 1;
    const int r = rho[k];
    const std::set<int> present(beta.begin(), beta.end());
    long long total = 0;
    for (std::size_t i = 0; i < beta.size(); ++i) {
        const int b = beta[i];
        if (b - r < 0 || present.count(b - r)) continue;
        int between = 0;
        for (int v : beta)
            if (v > b - r && v < b) ++between;
        std::vector<int> next = beta;
        next[i] = b - r;
        const long long sub = mn_rec(std::move(next), rho, k + 1);
        total += (between % 2 == 0 ? 1 : -1) * sub;
    }
    return total;
}

}  // namespace

Rational::Rational(__int128 n, __int128 d) {
    if (d == 0) throw Error(ErrorKind::kSingularGram, "division by zero");
    if (d < 0) {
        n = -n;
        d = -d;
    }
    const __int128 g = gcd128(n, d);
    num_ = g == 0 ? 0 : n / g;
    den_ = g == 0 ? 1 : d / g;
}

std::string Rational::str() const { return den_ == 1 ? to_str(num_) : to_str(num_) + "/" + to_str(den_); }

Rational operator+(const Rational &a, const Rational &b) {
    const __int128 g = gcd128(a.den_, b.den_);
    return Rational(add(mul(a.num_, b.den_ / g), mul(b.num_, a.den_ / g)), mul(a.den_ / g, b.den_));
}
Rational operator-(const Rational &a, const Rational &b) { return a + (-b); }
Rational operator*(const Rational &a, const Rational &b) {
    const __int128 g1 = gcd128(a.num_, b.den_);
    const __int128 g2 = gcd128(b.num_, a.den_);
    const __int128 n1 = g1 == 0 ? a.num_ : a.num_ / g1, d2 = g1 == 0 ? b.den_ : b.den_ / g1;
    const __int128 n2 = g2 == 0 ? b.num_ : b.num_ / g2, d1 = g2 == 0 ? a.den_ : a.den_ / g2;
    return Rational(mul(n1, n2), mul(d1, d2));
}
Rational operator/(const Rational &a, const Rational &b) {
    if (b.num_ == 0) throw Error(ErrorKind::kSingularGram, "division by zero");
    return a * Rational(b.den_, b.num_);
}

std::vector<Permutation> all_permutations(int t) {
    Permutation p(static_cast<std::size_t>(t));
    for (int i = 0; i < t; ++i) p[static_cast<std::size_t>(i)] = i;
    std::vector<Permutation> out;
    do {
        out.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

CycleType cycle_type(const Permutation &p) {
    std::vector<bool> seen(p.size(), false);
    CycleType out;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (seen[i]) continue;
        int len = 0;
        for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(p[j])) {
            seen[j] = true;
            ++len;
        }
        out.push_back(len);
    }
    std::sort(out.rbegin(), out.rend());
    return out;
}

int cycle_count(const Permutation &p) { return static_cast<int>(cycle_type(p).size()); }

long long sn_character(const std::vector<int> &lambda, const CycleType &rho) {
    int n = 0, m = 0;
    for (int v : lambda) n += v;
    for (int v : rho) m += v;
    if (n != m) throw Error(ErrorKind::kShapeError, "partition and class have different sizes");
    const int len = static_cast<int>(lambda.size());
    std::vector<int> beta;
    for (int i = 0; i < len; ++i) beta.push_back(lambda[static_cast<std::size_t>(i)] + len - 1 - i);
    return mn_rec(beta, rho, 0);
}

Rational weingarten(const CycleType &cls, int d, int t) {
    const auto perms = all_permutations(t);
    const auto classes = partitions(t, t);
    std::map<CycleType, std::size_t> class_index;
    for (std::size_t i = 0; i < classes.size(); ++i) class_index[classes[i]] = i;
    const std::size_t n = classes.size();
    std::vector<Permutation> reps(n);
    for (const auto &p : perms) reps[class_index.at(cycle_type(p))] = p;
    // a[c][c'] = sum over tau with class(sigma_c tau^-1) = c' of d^cycles(tau).
    std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n + 1, Rational(0)));
    for (std::size_t c = 0; c < n; ++c) {
        for (const auto &tau : perms) {
            const std::size_t cp = class_index.at(cycle_type(compose(reps[c], inverse(tau))));
            a[c][cp] += Rational(ipow(d, cycle_count(tau)));
        }
        a[c][n] = Rational(cycle_type(reps[c]) == CycleType(static_cast<std::size_t>(t), 1) ? 1 : 0);
    }
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && a[piv][col].is_zero()) ++piv;
        if (piv == n) throw Error(ErrorKind::kSingularGram, "Gram system is singular for d < t");
        std::swap(a[piv], a[col]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || a[r][col].is_zero()) continue;
            const Rational f = a[r][col] / a[col][col];
            for (std::size_t k = col; k <= n; ++k) a[r][k] -= f * a[col][k];
        }
    }
    const std::size_t target = class_index.at(cls);
    return a[target][n] / a[target][target];
}

Rational weingarten_charsum(const CycleType &cls, int d, int t) {
    Rational sum(0);
    for (const auto &lam : partitions(t, d)) {
        std::vector<int> e(static_cast<std::size_t>(d), 0);
        std::copy(lam.begin(), lam.end(), e.begin());
        const long long chi_e = sn_character(lam, CycleType(static_cast<std::size_t>(t), 1));
        const auto s = static_cast<long long>(weyl_dimension(HighestWeight(e)));
        sum += Rational(static_cast<__int128>(chi_e) * chi_e * sn_character(lam, cls), s);
    }
    const long long f = factorial(t);
    return sum * Rational(1, static_cast<__int128>(f) * f);
}

const WeingartenTable &weingarten_table(int t, int d) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::unique_ptr<WeingartenTable>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto &slot = cache[{t, d}];
    if (slot) return *slot;
    auto tab = std::make_unique<WeingartenTable>();
    tab->t = t;
    tab->d = d;
    tab->perms = all_permutations(t);
    for (std::size_t i = 0; i < tab->perms.size(); ++i) tab->index[tab->perms[i]] = static_cast<int>(i);
    if (d >= t) {
        std::map<CycleType, double> by_class;
        for (const auto &cls : partitions(t, t)) by_class[cls] = weingarten(cls, d, t).to_double();
        for (const auto &p : tab->perms) tab->values.push_back(by_class.at(cycle_type(p)));
    } else {
        tab->pseudo_inverse = true;
        tab->warning = "d < t: Weingarten values from the Moore-Penrose inverse of the Gram matrix";
        const auto n = static_cast<Eigen::Index>(tab->perms.size());
        Eigen::MatrixXd gram(n, n);
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = 0; j < n; ++j)
                gram(i, j) = static_cast<double>(ipow(d, cycle_count(compose(tab->perms[static_cast<std::size_t>(i)], inverse(tab->perms[static_cast<std::size_t>(j)])))));
        const Eigen::MatrixXd pinv = gram.completeOrthogonalDecomposition().pseudoInverse();
        for (Eigen::Index i = 0; i < n; ++i) tab->values.push_back(pinv(i, 0));
    }
    slot = std::move(tab);
    return *slot;
}

double haar_moment_unitary(const std::vector<std::pair<int, int>> &u, const std::vector<std::pair<int, int>> &ubar, int d) {
    if (u.size() != ubar.size()) return 0.0;
    const int t = static_cast<int>(u.size());
    if (t == 0) return 1.0;
    const WeingartenTable &tab = weingarten_table(t, d);
    // Matchings: sigma pairs rows, tau pairs columns; Wg(sigma tau^-1).
    std::vector<const Permutation *> row_match, col_match;
    for (const auto &p : tab.perms) {
        bool rows_ok = true, cols_ok = true;
        for (int k = 0; k < t; ++k) {
            rows_ok = rows_ok && u[static_cast<std::size_t>(k)].first == ubar[static_cast<std::size_t>(p[static_cast<std::size_t>(k)])].first;
            cols_ok = cols_ok && u[static_cast<std::size_t>(k)].second == ubar[static_cast<std::size_t>(p[static_cast<std::size_t>(k)])].second;
        }
        if (rows_ok) row_match.push_back(&p);
        if (cols_ok) col_match.push_back(&p);
    }
    double sum = 0.0;
    for (const auto *s : row_match)
        for (const auto *c : col_match) sum += tab.values[static_cast<std::size_t>(tab.index.at(compose(*s, inverse(*c))))];
    return sum;
}

double haar_moment_queries(const std::vector<QueryType> &types, const std::vector<int> &x, const std::vector<int> &y,
                           const std::vector<int> &xh, const std::vector<int> &yh, int d) {
    std::vector<std::pair<int, int>> u, ubar;
    for (std::size_t k = 0; k < types.size(); ++k) {
        const bool tr = query_transposed(types[k]);
        const std::pair<int, int> plain = tr ? std::pair{x[k], y[k]} : std::pair{y[k], x[k]};
        const std::pair<int, int> hat = tr ? std::pair{xh[k], yh[k]} : std::pair{yh[k], xh[k]};
        // The conjugated side of an R-bar entry is an entry of U itself.
        if (query_factor(types[k]) == Factor::kDefining) {
            u.push_back(plain);
            ubar.push_back(hat);
        } else {
            ubar.push_back(plain);
            u.push_back(hat);
        }
    }
    return haar_moment_unitary(u, ubar, d);
}

HaarPolynomial HaarPolynomial::constant(std::complex<double> c) {
    HaarPolynomial p;
    if (c != 0.0) p.terms_[Monomial{}] = c;
    return p;
}

HaarPolynomial HaarPolynomial::entry(int row, int col, bool conjugate) {
    HaarPolynomial p;
    Monomial m;
    (conjugate ? m.ubar : m.u).emplace_back(row, col);
    p.terms_[m] = 1.0;
    return p;
}

HaarPolynomial HaarPolynomial::operator*(const HaarPolynomial &o) const {
    HaarPolynomial out;
    for (const auto &[a, ca] : terms_) {
        for (const auto &[b, cb] : o.terms_) {
            Monomial m;
            std::merge(a.u.begin(), a.u.end(), b.u.begin(), b.u.end(), std::back_inserter(m.u));
            std::merge(a.ubar.begin(), a.ubar.end(), b.ubar.begin(), b.ubar.end(), std::back_inserter(m.ubar));
            out.terms_[std::move(m)] += ca * cb;
        }
    }
    std::erase_if(out.terms_, [](const auto &kv) { return kv.second == 0.0; });
    return out;
}

HaarPolynomial &HaarPolynomial::operator+=(const HaarPolynomial &o) {
    for (const auto &[m, c] : o.terms_) terms_[m] += c;
    std::erase_if(terms_, [](const auto &kv) { return kv.second == 0.0; });
    return *this;
}

HaarPolynomial HaarPolynomial::scaled(std::complex<double> c) const {
    if (c == 0.0) return {};
    HaarPolynomial out = *this;
    for (auto &[m, v] : out.terms_) v *= c;
    return out;
}

HaarPolynomial HaarPolynomial::conj() const {
    HaarPolynomial out;
    for (const auto &[m, c] : terms_) out.terms_[Monomial{m.ubar, m.u}] = std::conj(c);
    return out;
}

std::complex<double> HaarPolynomial::expectation(int d) const {
    std::complex<double> sum = 0.0;
    for (const auto &[m, c] : terms_) {
        if (m.u.size() != m.ubar.size()) continue;
        sum += c * haar_moment_unitary(m.u, m.ubar, d);
    }
    return sum;
}

Eigen::MatrixXcd sample_haar(int d, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::MatrixXcd z(d, d);
    for (Eigen::Index i = 0; i < z.size(); ++i) z.data()[i] = std::complex<double>(normal(rng), normal(rng));
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
    Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(d, d);
    const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int i = 0; i < d; ++i) {
        const std::complex<double> rii = r(i, i);
        q.col(i) *= rii / std::abs(rii);
    }
    return q;
}

}  // namespace haarcg
