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

#include "haarcg/gtcompress.hpp"

#include <algorithm>
#include <bit>

#include "haarcg/errors.hpp"

namespace haarcg {

namespace {

int real_length(const std::vector<int> &p) {
    int n = 0;
    for (int v : p) {
        if (v == 0) break;
        ++n;
    }
    for (std::size_t i = static_cast<std::size_t>(n); i < p.size(); ++i) {
        if (p[i] != 0) throw Error(ErrorKind::kAlphabetOutOfRange, "padding must trail the alphabet");
    }
    return n;
}

void check_alphabet(const std::vector<int> &p) {
    const int n = real_length(p);
    for (int i = 0; i < n; ++i) {
        if (p[static_cast<std::size_t>(i)] < 1) throw Error(ErrorKind::kAlphabetOutOfRange, "negative symbol");
        if (i > 0 && p[static_cast<std::size_t>(i - 1)] >= p[static_cast<std::size_t>(i)]) {
            throw Error(ErrorKind::kAlphabetOutOfRange, "alphabet is not strictly increasing");
        }
    }
}

unsigned bits_for(unsigned long long values) {
    // Bits to distinguish `values` symbols; at least one.
    if (values <= 2) return 1;
    return static_cast<unsigned>(std::bit_width(values - 1));
}

}  // namespace

CompressedGT compress(const GTPattern &m) {
    if (!validate_gt(m)) throw Error(ErrorKind::kInvalidPattern, to_string(m) + " does not interlace");
    for (const auto &row : m.rows) {
        for (int v : row) {
            if (v < 0) throw Error(ErrorKind::kInvalidPattern, "compression needs a Young-diagram pattern");
        }
    }
    const std::vector<int> w = weight_of(m);
    CompressedGT c;
    for (int k = 1; k <= m.d(); ++k) {
        if (w[static_cast<std::size_t>(k - 1)] == 0) continue;
        c.p.push_back(k);
        const int len = static_cast<int>(c.p.size());
        const auto &row = m.rows[static_cast<std::size_t>(k - 1)];
        for (std::size_t i = static_cast<std::size_t>(len); i < row.size(); ++i) {
            if (row[i] != 0) throw Error(ErrorKind::kInvalidPattern, "row has more parts than symbols seen");
        }
        c.mtilde.rows.emplace_back(row.begin(), row.begin() + len);
    }
    return c;
}

CompressedGT normalize(const CompressedGT &c) {
    check_alphabet(c.p);
    if (c.mtilde.rows.size() != c.p.size()) {
        throw Error(ErrorKind::kShapeError, "compressed pattern and alphabet lengths differ");
    }
    const int n = real_length(c.p);
    CompressedGT out;
    out.p.assign(c.p.begin(), c.p.begin() + n);
    out.mtilde.rows.assign(c.mtilde.rows.begin(), c.mtilde.rows.begin() + n);
    return out;
}

GTPattern decompress(const CompressedGT &c, int d) {
    const CompressedGT n = normalize(c);
    if (!n.p.empty() && n.p.back() > d) {
        throw Error(ErrorKind::kAlphabetOutOfRange, "symbol " + std::to_string(n.p.back()) + " exceeds d");
    }
    GTPattern m;
    std::size_t j = 0;
    for (int k = 1; k <= d; ++k) {
        while (j < n.p.size() && n.p[j] <= k) ++j;
        std::vector<int> row(static_cast<std::size_t>(k), 0);
        if (j > 0) {
            const auto &src = n.mtilde.rows[j - 1];
            std::copy(src.begin(), src.end(), row.begin());
        }
        m.rows.push_back(std::move(row));
    }
    return m;
}

SymbolRecord op_A(const std::vector<int> &p, int x) {
    check_alphabet(p);
    if (x < 1) throw Error(ErrorKind::kAlphabetOutOfRange, "symbols are 1-based");
    const int n = real_length(p);
    for (int i = 0; i < n; ++i) {
        if (p[static_cast<std::size_t>(i)] == x) return {1, i + 1};
        if (p[static_cast<std::size_t>(i)] > x) return {0, i + 1};
    }
    return {0, n + 1};
}

std::vector<int> op_B(const std::vector<int> &p, int x, int c, int xtilde) {
    const SymbolRecord rec = op_A(p, x);
    if (rec.c != c || rec.xtilde != xtilde) {
        throw Error(ErrorKind::kInconsistentInputs, "(c, xtilde) does not match the alphabet");
    }
    std::vector<int> out = p;
    if (c == 1) {
        out.push_back(0);
    } else {
        out.insert(out.begin() + (xtilde - 1), x);
    }
    return out;
}

GTPattern op_C(int c, int xtilde, const GTPattern &mtilde) {
    const int k = mtilde.d() + 1;
    if (c != 0 && c != 1) throw Error(ErrorKind::kIndexOutOfRange, "c must be a bit");
    if (xtilde < 1 || xtilde > k || (c == 1 && xtilde > k - 1)) {
        throw Error(ErrorKind::kIndexOutOfRange, "xtilde out of range");
    }
    GTPattern n;
    if (c == 1) {
        n.rows = mtilde.rows;
        std::vector<int> last = mtilde.rows.back();
        last.push_back(0);
        n.rows.push_back(std::move(last));
        return n;
    }
    for (int l = 1; l < xtilde; ++l) n.rows.push_back(mtilde.rows[static_cast<std::size_t>(l - 1)]);
    for (int l = xtilde; l <= k; ++l) {
        std::vector<int> row = l >= 2 ? mtilde.rows[static_cast<std::size_t>(l - 2)] : std::vector<int>{};
        row.push_back(0);
        n.rows.push_back(std::move(row));
    }
    return n;
}

int recover_c(int xtilde, const GTPattern &n) {
    if (xtilde < 1 || xtilde > n.d()) throw Error(ErrorKind::kIndexOutOfRange, "xtilde out of range");
    const int diff = n.row_sum(xtilde) - n.row_sum(xtilde - 1);
    if (diff < 0) throw Error(ErrorKind::kIrreversibleState, "negative row-sum difference");
    return diff > 0 ? 1 : 0;
}

std::pair<int, GTPattern> op_D(int c, int xtilde, const GTPattern &n) {
    if (recover_c(xtilde, n) != c) {
        throw Error(ErrorKind::kIrreversibleState, "row-sum predicate does not reproduce c");
    }
    return {xtilde, n};
}

PreprocessResult apply_P(const std::vector<int> &p, const GTPattern &mtilde, int x) {
    if (p.size() != mtilde.rows.size()) throw Error(ErrorKind::kShapeError, "alphabet and pattern lengths differ");
    const SymbolRecord rec = op_A(p, x);
    std::vector<int> p_next = op_B(p, x, rec.c, rec.xtilde);
    GTPattern n = op_C(rec.c, rec.xtilde, mtilde);
    auto [xt, n_out] = op_D(rec.c, rec.xtilde, n);
    return PreprocessResult{std::move(p_next), xt, std::move(n_out)};
}

std::size_t compressed_bits(const CompressedGT &c, long long d, int max_entry) {
    const std::size_t symbol_bits = bits_for(static_cast<unsigned long long>(d));
    const std::size_t entry_bits = bits_for(static_cast<unsigned long long>(max_entry) + 1);
    std::size_t entries = 0;
    for (const auto &row : c.mtilde.rows) entries += row.size();
    return c.p.size() * symbol_bits + entries * entry_bits;
}

}  // namespace haarcg
