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

// Closed-form coefficients for lambda (x) defining in the Gelfand-Tsetlin basis,
// written with partial hooks p_{j,l} = m_{j,l} + l - j of the input pattern.
//
// The input (m, x) is first folded into a pattern N of U(k), k = len(alphabet) + 1,
// with apply_P.  Rows of N below the folded symbol row xtilde are untouched, the
// box enters at row xtilde and climbs to the top.  Rows that duplicate their
// predecessor contribute a factor 1, which is why U(k) suffices for U(d).

#include <algorithm>
#include <cmath>

#include "haarcg/cg.hpp"
#include "haarcg/errors.hpp"

namespace haarcg {

namespace {

bool interlaces(const std::vector<int> &upper, const std::vector<int> &lower) {
    for (std::size_t i = 0; i < lower.size(); ++i) {
        if (upper[i] < lower[i] || lower[i] < upper[i + 1]) return false;
    }
    return true;
}

struct Evaluator {
    const GTPattern &n;

    double p(int j, int l) const { return n.rows[static_cast<std::size_t>(l - 1)][static_cast<std::size_t>(j - 1)] + l - j; }

    double start(int l, int tau) const {
        double num = 1.0;
        double den = 1.0;
        for (int j = 1; j <= l - 1; ++j) num *= p(tau, l) - p(j, l - 1);
        for (int j = 1; j <= l; ++j) {
            if (j != tau) den *= p(tau, l) - p(j, l);
        }
        return std::sqrt(std::abs(num / den));
    }

    double pass(int l, int sigma, int tau) const {
        double num = 1.0;
        double den = 1.0;
        for (int j = 1; j <= l - 1; ++j) {
            if (j == sigma) continue;
            num *= p(tau, l) - p(j, l - 1);
            den *= p(sigma, l - 1) - p(j, l - 1) + 1.0;
        }
        for (int j = 1; j <= l; ++j) {
            if (j == tau) continue;
            num *= p(sigma, l - 1) - p(j, l) + 1.0;
            den *= p(tau, l) - p(j, l);
        }
        const double mag = std::sqrt(std::abs(num / den));
        return sigma >= tau ? mag : -mag;
    }
};

// (top-row box position, pattern after insertion, raw coefficient) for every path.
struct RawTerm {
    int row;
    GTPattern out;
    double coeff;
};

std::vector<RawTerm> raw_terms(const GTPattern &n, int xtilde) {
    const Evaluator ev{n};
    const int k = n.d();
    std::vector<RawTerm> out;
    GTPattern cur = n;
    auto rec = [&](auto &&self, int l, int prev, double coeff) -> void {
        if (l > k) {
            out.push_back(RawTerm{prev, cur, coeff});
            return;
        }
        auto &row = cur.rows[static_cast<std::size_t>(l - 1)];
        for (int i = 1; i <= l; ++i) {
            ++row[static_cast<std::size_t>(i - 1)];
            const bool ok = l == 1 || interlaces(row, cur.rows[static_cast<std::size_t>(l - 2)]);
            if (ok) {
                const double f = l == xtilde ? ev.start(l, i) : ev.pass(l, prev, i);
                if (f != 0.0) self(self, l + 1, i, coeff * f);
            }
            --row[static_cast<std::size_t>(i - 1)];
        }
    };
    rec(rec, xtilde, 0, 1.0);
    return out;
}

// Strips padding rows (zero weight) left by apply_P.
CompressedGT canonicalize(const std::vector<int> &p, const GTPattern &n) {
    CompressedGT c;
    for (int l = 1; l <= n.d(); ++l) {
        const int w = n.row_sum(l) - n.row_sum(l - 1);
        const int sym = p[static_cast<std::size_t>(l - 1)];
        if (sym == 0) {
            if (w != 0) throw Error(ErrorKind::kIrreversibleState, "padding row gained weight");
            continue;
        }
        c.p.push_back(sym);
        c.mtilde.rows.push_back(n.rows[static_cast<std::size_t>(l - 1)]);
    }
    return c;
}

std::vector<std::pair<int, FastCGTerm>> unsigned_terms(const CompressedGT &m, long long x, long long d) {
    const CompressedGT c = normalize(m);
    if (!c.p.empty() && c.p.back() > d) throw Error(ErrorKind::kAlphabetOutOfRange, "label symbol exceeds d");
    if (x < 1 || x > d) throw Error(ErrorKind::kAlphabetOutOfRange, "input symbol out of range");
    const PreprocessResult pre = apply_P(c.p, c.mtilde, static_cast<int>(x));
    std::vector<std::pair<int, FastCGTerm>> out;
    for (auto &t : raw_terms(pre.n, pre.xtilde)) {
        if (t.row > d) continue;
        out.emplace_back(t.row, FastCGTerm{canonicalize(pre.p, t.out), t.coeff});
    }
    return out;
}

CompressedGT top_label(const std::vector<int> &parts) {
    CompressedGT c;
    for (std::size_t j = 0; j < parts.size(); ++j) {
        c.p.push_back(static_cast<int>(j) + 1);
        c.mtilde.rows.emplace_back(parts.begin(), parts.begin() + static_cast<std::ptrdiff_t>(j) + 1);
    }
    return c;
}

// Sign of <lambda top, row | mu top> in the raw formula.
double block_sign(const std::vector<int> &lambda_c, int row, long long d) {
    std::vector<int> mu = lambda_c;
    if (row > static_cast<int>(mu.size())) mu.push_back(0);
    ++mu[static_cast<std::size_t>(row - 1)];
    const CompressedGT target = top_label(mu);
    for (const auto &[r, term] : unsigned_terms(top_label(lambda_c), row, d)) {
        if (r == row && term.m_out == target) return term.coeff < 0 ? -1.0 : 1.0;
    }
    throw Error(ErrorKind::kInvalidBox, "no anchor coefficient for the block");
}

std::vector<int> top_parts(const CompressedGT &c) {
    if (c.mtilde.rows.empty()) return {};
    std::vector<int> parts = c.mtilde.rows.back();
    while (!parts.empty() && parts.back() == 0) parts.pop_back();
    return parts;
}

}  // namespace

std::vector<std::pair<int, FastCGTerm>> cg_fast_all(const CompressedGT &m, long long x, long long d) {
    const std::vector<int> lambda_c = top_parts(normalize(m));
    auto terms = unsigned_terms(m, x, d);
    std::stable_sort(terms.begin(), terms.end(), [](const auto &a, const auto &b) { return a.first < b.first; });
    int cached_row = 0;
    double sign = 1.0;
    for (auto &[row, term] : terms) {
        if (row != cached_row) {
            sign = block_sign(lambda_c, row, d);
            cached_row = row;
        }
        term.coeff *= sign;
    }
    return terms;
}

std::vector<FastCGTerm> cg_fast(const std::vector<int> &lambda_c, int row, const CompressedGT &m, long long x,
                                long long d, Factor factor) {
    if (factor != Factor::kDefining) throw Error(ErrorKind::kUnsupportedFactor, "the compressed engine handles the defining factor only");
    for (std::size_t i = 0; i < lambda_c.size(); ++i) {
        if (lambda_c[i] <= 0 || (i > 0 && lambda_c[i - 1] < lambda_c[i])) {
            throw Error(ErrorKind::kInvalidPattern, "lambda must list positive, weakly decreasing parts");
        }
    }
    const int len = static_cast<int>(lambda_c.size());
    if (row < 1 || row > len + 1 || row > d || (row > 1 && row <= len && lambda_c[static_cast<std::size_t>(row - 2)] == lambda_c[static_cast<std::size_t>(row - 1)])) {
        throw Error(ErrorKind::kInvalidBox, "cannot add a box in row " + std::to_string(row));
    }
    if (top_parts(normalize(m)) != lambda_c) throw Error(ErrorKind::kInvalidPattern, "label does not belong to lambda");
    std::vector<FastCGTerm> out;
    for (auto &[r, term] : cg_fast_all(m, x, d)) {
        if (r == row) out.push_back(std::move(term));
    }
    return out;
}

}  // namespace haarcg
