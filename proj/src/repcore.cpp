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

#include "haarcg/repcore.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "haarcg/errors.hpp"

namespace haarcg {

namespace {

using i128 = __int128;

i128 gcd128(i128 a, i128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        i128 r = a % b;
        a = b;
        b = r;
    }
    return a;
}

void check_weakly_decreasing(const std::vector<int> &e, const char *what) {
    for (std::size_t i = 0; i + 1 < e.size(); ++i) {
        if (e[i] < e[i + 1]) throw Error(ErrorKind::kShapeError, std::string(what) + " is not weakly decreasing");
    }
}

void emit_rows_below(const std::vector<int> &upper, std::vector<std::vector<int>> &rows_rev,
                     std::vector<GTPattern> &out) {
    if (upper.size() == 1) {
        GTPattern p;
        p.rows.assign(rows_rev.rbegin(), rows_rev.rend());
        out.push_back(std::move(p));
        return;
    }
    std::vector<int> lower(upper.size() - 1);
    // Odometer over lower[j] in [upper[j+1], upper[j]].
    for (std::size_t j = 0; j < lower.size(); ++j) lower[j] = upper[j + 1];
    while (true) {
        rows_rev.push_back(lower);
        emit_rows_below(lower, rows_rev, out);
        rows_rev.pop_back();
        std::size_t j = 0;
        while (j < lower.size()) {
            if (lower[j] < upper[j]) {
                ++lower[j];
                break;
            }
            lower[j] = upper[j + 1];
            ++j;
        }
        if (j == lower.size()) break;
    }
}

}  // namespace

HighestWeight::HighestWeight(std::vector<int> e) : entries(std::move(e)) {
    check_weakly_decreasing(entries, "highest weight");
}

bool HighestWeight::is_young_diagram() const {
    return std::all_of(entries.begin(), entries.end(), [](int v) { return v >= 0; });
}

int HighestWeight::box_count() const { return std::accumulate(entries.begin(), entries.end(), 0); }

HighestWeight HighestWeight::zero(int d) { return HighestWeight(std::vector<int>(static_cast<std::size_t>(d), 0)); }

int GTPattern::row_sum(int k) const {
    if (k == 0) return 0;
    const auto &r = rows.at(static_cast<std::size_t>(k - 1));
    return std::accumulate(r.begin(), r.end(), 0);
}

std::string to_string(const HighestWeight &hw) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < hw.entries.size(); ++i) os << (i ? "," : "") << hw.entries[i];
    os << ')';
    return os.str();
}

std::string to_string(const GTPattern &p) {
    std::ostringstream os;
    os << '(';
    for (std::size_t k = 0; k < p.rows.size(); ++k) {
        os << (k ? "," : "") << '(';
        for (std::size_t i = 0; i < p.rows[k].size(); ++i) os << (i ? "," : "") << p.rows[k][i];
        os << ')';
    }
    os << ')';
    return os.str();
}

std::string to_string(const PathLabel &p) {
    std::ostringstream os;
    for (std::size_t k = 0; k < p.diagrams.size(); ++k) {
        os << (k ? " -> " : "") << to_string(p.diagrams[k]);
        if (k > 0 && k - 1 < p.multiplicities.size() && p.multiplicities[k - 1] != 0) {
            os << '#' << p.multiplicities[k - 1];
        }
    }
    return os.str();
}

bool validate_gt(const GTPattern &p) {
    for (std::size_t k = 0; k < p.rows.size(); ++k) {
        if (p.rows[k].size() != k + 1) throw Error(ErrorKind::kShapeError, "row " + std::to_string(k + 1) + " has wrong length");
    }
    for (std::size_t k = 0; k + 1 < p.rows.size(); ++k) {
        const auto &lo = p.rows[k];
        const auto &hi = p.rows[k + 1];
        for (std::size_t i = 0; i < lo.size(); ++i) {
            if (!(hi[i] >= lo[i] && lo[i] >= hi[i + 1])) return false;
        }
    }
    return true;
}

std::uint64_t weyl_dimension(const HighestWeight &hw) {
    const auto &l = hw.entries;
    const int d = hw.d();
    i128 num = 1;
    i128 den = 1;
    for (int i = 0; i < d; ++i) {
        for (int j = i + 1; j < d; ++j) {
            i128 a = static_cast<i128>(l[i]) - l[j] + (j - i);
            i128 b = j - i;
            i128 g1 = gcd128(a, den);
            i128 g2 = gcd128(b, num);
            a /= g1;
            den /= g1;
            b /= g2;
            num /= g2;
            if (__builtin_mul_overflow(num, a, &num) || __builtin_mul_overflow(den, b, &den)) {
                throw Error(ErrorKind::kOverflow, "Weyl dimension of " + to_string(hw));
            }
        }
    }
    i128 q = num / den;
    if (q > static_cast<i128>(UINT64_MAX)) throw Error(ErrorKind::kOverflow, "Weyl dimension of " + to_string(hw));
    return static_cast<std::uint64_t>(q);
}

double weyl_dimension_ratio_add_box(const std::vector<int> &lambda_parts, int row, int d) {
    if (row < 1 || row > d) throw Error(ErrorKind::kInvalidBox, "row out of range");
    const int explicit_rows = std::max(static_cast<int>(lambda_parts.size()), row);
    if (explicit_rows > d) throw Error(ErrorKind::kInvalidBox, "more parts than d");
    std::vector<long double> lam(static_cast<std::size_t>(explicit_rows), 0.0L);
    for (std::size_t i = 0; i < lambda_parts.size(); ++i) lam[i] = lambda_parts[i];
    const int i = row - 1;
    long double ratio = 1.0L;
    for (int j = 0; j < explicit_rows; ++j) {
        if (j == i) continue;
        int a = std::min(i, j);
        int b = std::max(i, j);
        long double before = lam[a] - lam[b] + (b - a);
        long double after = before + (a == i ? 1.0L : -1.0L);
        ratio *= after / before;
    }
    // Rows explicit_rows+1..d are zero; their factors telescope.
    if (d > explicit_rows) {
        ratio *= (lam[i] + 1.0L + (d - 1 - i)) / (lam[i] + (explicit_rows - i));
    }
    return static_cast<double>(ratio);
}

std::vector<GTPattern> enumerate_gt(const HighestWeight &hw, std::size_t cap) {
    check_weakly_decreasing(hw.entries, "highest weight");
    std::uint64_t dim = 0;
    try {
        dim = weyl_dimension(hw);
    } catch (const Error &) {
        throw Error(ErrorKind::kCapExceeded, "dimension of " + to_string(hw) + " overflows");
    }
    if (dim > cap) throw Error(ErrorKind::kCapExceeded, "dimension " + std::to_string(dim) + " of " + to_string(hw));
    std::vector<GTPattern> out;
    out.reserve(static_cast<std::size_t>(dim));
    if (hw.d() == 0) {
        out.push_back(GTPattern{});
        return out;
    }
    std::vector<std::vector<int>> rows_rev{hw.entries};
    emit_rows_below(hw.entries, rows_rev, out);
    std::sort(out.begin(), out.end());
    return out;
}

std::size_t pattern_index(const std::vector<GTPattern> &patterns, const GTPattern &p) {
    auto it = std::lower_bound(patterns.begin(), patterns.end(), p);
    if (it == patterns.end() || *it != p) throw Error(ErrorKind::kInvalidPattern, "pattern " + to_string(p) + " not in basis");
    return static_cast<std::size_t>(it - patterns.begin());
}

GTPattern highest_pattern(const HighestWeight &hw) {
    GTPattern p;
    for (int k = 1; k <= hw.d(); ++k) p.rows.emplace_back(hw.entries.begin(), hw.entries.begin() + k);
    return p;
}

HighestWeight add_box(const HighestWeight &hw, int row) {
    if (row < 1 || row > hw.d()) throw Error(ErrorKind::kInvalidBox, "row out of range");
    std::vector<int> e = hw.entries;
    ++e[static_cast<std::size_t>(row - 1)];
    if (row > 1 && e[static_cast<std::size_t>(row - 2)] < e[static_cast<std::size_t>(row - 1)]) {
        throw Error(ErrorKind::kInvalidBox, "adding a box in row " + std::to_string(row) + " of " + to_string(hw));
    }
    HighestWeight out;
    out.entries = std::move(e);
    return out;
}

HighestWeight remove_box(const HighestWeight &hw, int row) {
    if (row < 1 || row > hw.d()) throw Error(ErrorKind::kInvalidBox, "row out of range");
    std::vector<int> e = hw.entries;
    --e[static_cast<std::size_t>(row - 1)];
    if (row < hw.d() && e[static_cast<std::size_t>(row - 1)] < e[static_cast<std::size_t>(row)]) {
        throw Error(ErrorKind::kInvalidBox, "removing a box in row " + std::to_string(row) + " of " + to_string(hw));
    }
    HighestWeight out;
    out.entries = std::move(e);
    return out;
}

std::vector<int> weight_of(const GTPattern &p) {
    std::vector<int> w(p.rows.size());
    for (int k = 1; k <= p.d(); ++k) w[static_cast<std::size_t>(k - 1)] = p.row_sum(k) - p.row_sum(k - 1);
    return w;
}

std::vector<PathLabel> enumerate_paths(int t, const HighestWeight &lambda, std::size_t cap) {
    if (!lambda.is_young_diagram() || lambda.box_count() != t) {
        throw Error(ErrorKind::kShapeError, to_string(lambda) + " is not a Young diagram with " + std::to_string(t) + " boxes");
    }
    const int d = lambda.d();
    std::vector<PathLabel> out;
    PathLabel current;
    current.diagrams.push_back(HighestWeight::zero(d));
    auto rec = [&](auto &&self) -> void {
        const HighestWeight last = current.diagrams.back();
        if (static_cast<int>(current.diagrams.size()) == t + 1) {
            if (out.size() >= cap) throw Error(ErrorKind::kCapExceeded, "too many paths to " + to_string(lambda));
            out.push_back(current);
            return;
        }
        for (int r = 1; r <= d; ++r) {
            if (last.entries[static_cast<std::size_t>(r - 1)] >= lambda.entries[static_cast<std::size_t>(r - 1)]) continue;
            if (r > 1 && last.entries[static_cast<std::size_t>(r - 2)] == last.entries[static_cast<std::size_t>(r - 1)]) continue;
            current.diagrams.push_back(add_box(last, r));
            current.multiplicities.push_back(0);
            self(self);
            current.diagrams.pop_back();
            current.multiplicities.pop_back();
        }
    };
    rec(rec);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::vector<int>> partitions(int t, int max_rows) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    auto rec = [&](auto &&self, int remaining, int max_part) -> void {
        if (remaining == 0) {
            out.push_back(cur);
            return;
        }
        if (static_cast<int>(cur.size()) == max_rows) return;
        for (int part = std::min(remaining, max_part); part >= 1; --part) {
            cur.push_back(part);
            self(self, remaining - part, part);
            cur.pop_back();
        }
    };
    rec(rec, t, t);
    return out;
}

}  // namespace haarcg
