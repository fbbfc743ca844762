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


// haarcg command-line tool: moments, verify, bench, twirl, permute.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "haarcg/errors.hpp"
#include "haarcg/finite_group.hpp"
#include "haarcg/haar.hpp"
#include "haarcg/json_util.hpp"
#include "haarcg/oracle.hpp"
#include "haarcg/query.hpp"
#include "haarcg/twirl.hpp"
#include "haarcg/verify.hpp"

using json = nlohmann::json;
using namespace haarcg;

namespace {

struct Common {
    std::string output;
    bool deterministic = false;
    std::uint64_t seed = 1;
    double tol = 1e-10;
};

std::string read_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::kFormatError, "cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool ends_with(const std::string &s, const std::string &suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

void emit(const Common &c, const std::string &text) {
    if (c.output.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(c.output);
    if (!out) throw Error(ErrorKind::kFormatError, "cannot write " + c.output);
    out << text;
}

void emit_json(const Common &c, json j, double runtime_ms) {
    if (!c.deterministic) j["runtime_ms"] = runtime_ms;
    emit(c, j.dump(2) + "\n");
}

json suite_json(const SuiteResult &s, bool deterministic) {
    json j{{"name", s.name}, {"pass", s.pass}, {"max_deviation", s.max_deviation}, {"checks", s.checks}, {"notes", s.notes}};
    if (!deterministic) j["runtime_ms"] = s.runtime_ms;
    return j;
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

// ---- moments

struct MomentsArgs {
    std::string backend = "u";
    int d = 2;
    int t = 1;
    std::string types;
    bool check = false;
    int samples = 0;
    std::size_t max_entries = 4096;
};

std::vector<int> digits(std::size_t v, std::size_t t, int d) {
    std::vector<int> w(t);
    for (std::size_t k = t; k-- > 0;) {
        w[k] = static_cast<int>(v % static_cast<std::size_t>(d));
        v /= static_cast<std::size_t>(d);
    }
    return w;
}

int run_moments(const MomentsArgs &a, const Common &c) {
    const auto start = std::chrono::steady_clock::now();
    if (a.d < 1 || a.t < 0 || !(c.tol > 0)) throw Error(ErrorKind::kOutOfRange, "need d >= 1, t >= 0, tol > 0");
    std::shared_ptr<const OracleBackend> backend;
    if (ends_with(a.backend, ".json")) {
        backend = std::make_shared<FiniteGroupBackend>(load_group_json(read_file(a.backend)));
    } else {
        backend = make_backend(a.backend, a.d);
    }
    const int d = backend->rep_dim();
    std::vector<QueryType> script = a.types.empty() ? std::vector<QueryType>(static_cast<std::size_t>(a.t), QueryType::kForward)
                                                    : parse_script(a.types);
    const std::size_t t = script.size();
    for (QueryType q : script)
        if (!backend->supports(q))
            throw Error(ErrorKind::kUnsupportedQueryType, backend->name() + " has no " + std::string(1, query_char(q)) + " query");

    json report{{"backend", backend->name()}, {"d", d}, {"t", t}, {"query_types", script_string(script)}};
    const double words = std::pow(static_cast<double>(d), static_cast<double>(t));
    std::vector<std::vector<int>> all;
    if (words <= 1e6)
        for (std::size_t v = 0; v < static_cast<std::size_t>(words); ++v) all.push_back(digits(v, t, d));

    // Chains are cached per (x, y); the moment tensor pairs them.
    std::map<std::pair<std::vector<int>, std::vector<int>>, ChainAmplitudes> chains;
    auto chain = [&](const std::vector<int> &x, const std::vector<int> &y) -> const ChainAmplitudes & {
        auto it = chains.find({x, y});
        if (it == chains.end()) it = chains.emplace(std::make_pair(x, y), chain_amplitudes(*backend, script, x, y)).first;
        return it->second;
    };
    auto moment = [&](const auto &x, const auto &y, const auto &xh, const auto &yh) {
        const auto &p = chain(x, y);
        const auto &q = chain(xh, yh);
        Complex s = 0.0;
        for (const auto &[k, v] : p)
            if (const auto it = q.find(k); it != q.end()) s += std::conj(it->second) * v;
        return s;
    };

    if (a.check) {
        double err = 0.0;
        std::size_t count = 0;
        auto one = [&](const auto &x, const auto &y, const auto &xh, const auto &yh) {
            err = std::max(err, std::abs(moment(x, y, xh, yh) - reference_moment(*backend, script, x, y, xh, yh)));
            ++count;
        };
        const double total = words * words * words * words;
        if (a.samples == 0 && total <= 1e7 && !all.empty()) {
            for (const auto &x : all)
                for (const auto &y : all)
                    for (const auto &xh : all)
                        for (const auto &yh : all) one(x, y, xh, yh);
        } else {
            std::mt19937_64 rng(c.seed);
            std::uniform_int_distribution<int> pick(0, d - 1);
            auto word = [&] {
                std::vector<int> w(t);
                for (auto &v : w) v = pick(rng);
                return w;
            };
            const int n = a.samples > 0 ? a.samples : 1000;
            for (int s = 0; s < n; ++s) {
                const auto x = word(), y = word();
                if (s % 2 == 0) {
                    one(x, y, x, y);
                } else {
                    one(x, y, word(), word());
                }
            }
        }
        report["max_abs_error"] = err;
        report["assignments"] = count;
        report["tolerance"] = c.tol;
        report["pass"] = err <= c.tol;
        emit_json(c, report, elapsed_ms(start));
        return err <= c.tol ? 0 : 1;
    }

    if (all.empty() || words * words * words * words > 1e8)
        throw Error(ErrorKind::kCapExceeded, "moment tensor too large to list; use --check");
    json entries = json::array();
    for (const auto &x : all)
        for (const auto &y : all)
            for (const auto &xh : all)
                for (const auto &yh : all) {
                    const Complex m = moment(x, y, xh, yh);
                    if (std::abs(m) < 1e-14) continue;
                    if (entries.size() >= a.max_entries)
                        throw Error(ErrorKind::kCapExceeded, "more than " + std::to_string(a.max_entries) + " nonzero entries");
                    entries.push_back({{"x", x}, {"y", y}, {"xh", xh}, {"yh", yh}, {"value", complex_to_json(m)}});
                }
    report["entries"] = std::move(entries);
    emit_json(c, report, elapsed_ms(start));
    return 0;
}

// ---- verify

struct VerifyArgs {
    std::vector<std::string> suites{"all"};
    int d = 3;
    int t = 3;
    int boxes = 3;
    std::string group;
};

int run_verify(const VerifyArgs &a, const Common &c) {
    const auto start = std::chrono::steady_clock::now();
    if (a.d < 1 || a.t < 1 || a.boxes < 0) throw Error(ErrorKind::kOutOfRange, "need d >= 1, t >= 1, boxes >= 0");
    std::vector<std::string> names;
    for (const auto &s : a.suites) {
        if (s == "all") {
            names.insert(names.end(), {"gtcompress", "cg", "weingarten", "first-order", "three-way", "finite", "matrix-units"});
        } else {
            names.push_back(s);
        }
    }
    const std::vector<std::string> groups = a.group.empty() ? std::vector<std::string>{"S3", "S4"} : std::vector<std::string>{a.group};
    std::vector<SuiteResult> results;
    for (const auto &n : names) {
        if (n == "gtcompress") {
            results.push_back(suite_gtcompress(std::max(a.d, 6), std::max(a.boxes, 4)));
        } else if (n == "cg") {
            results.push_back(suite_cg(a.d, a.boxes, c.tol));
        } else if (n == "weingarten") {
            results.push_back(suite_weingarten(std::min(a.t + 1, 6), c.tol));
        } else if (n == "first-order") {
            std::vector<int> ds;
            for (int d = 1; d <= std::max(a.d, 2); ++d) ds.push_back(d);
            results.push_back(suite_first_order(ds, c.tol));
        } else if (n == "three-way") {
            for (int d = 2; d <= a.d; ++d)
                for (int t = 1; t <= a.t; ++t) {
                    const double total = std::pow(static_cast<double>(d), 4.0 * t);
                    results.push_back(suite_three_way(d, std::vector<QueryType>(static_cast<std::size_t>(t), QueryType::kForward),
                                                      total <= 1e5 ? 0 : 500, c.seed, c.tol));
                }
        } else if (n == "finite") {
            for (const auto &g : groups) results.push_back(suite_finite_moments(g, std::min(a.t, 3), 20, c.seed, c.tol));
        } else if (n == "matrix-units") {
            results.push_back(suite_matrix_units_unitary(a.d, a.t, c.tol));
            for (const auto &g : groups) results.push_back(suite_matrix_units_finite(g, a.t, c.tol));
        } else if (n == "twirl") {
            results.push_back(suite_twirl({"identity", "u", "perfect"}, c.tol));
        } else if (n == "permutation") {
            results.push_back(suite_permutation(20, c.seed));
        } else if (n == "scaling") {
            std::vector<int> ds;
            for (int e = 4; e <= 20; e += 4) ds.push_back(1 << e);
            results.push_back(suite_scaling(2, ds, 1000.0, c.seed));
        } else {
            throw Error(ErrorKind::kOutOfRange, "unknown suite " + n);
        }
    }
    bool pass = true;
    json arr = json::array();
    for (const auto &r : results) {
        pass = pass && r.pass;
        arr.push_back(suite_json(r, c.deterministic));
    }
    emit_json(c, {{"suites", arr}, {"pass", pass}, {"tolerance", c.tol}}, elapsed_ms(start));
    return pass ? 0 : 1;
}

// ---- bench

struct BenchArgs {
    int t = 2;
    std::vector<int> ds;
    bool check = false;
};

int run_bench(const BenchArgs &a, const Common &c) {
    if (a.t < 0) throw Error(ErrorKind::kOutOfRange, "t must be >= 0");
    std::vector<int> ds = a.ds;
    if (ds.empty())
        for (int e = 4; e <= 20; e += 4) ds.push_back(1 << e);
    for (int d : ds)
        if (d < 1) throw Error(ErrorKind::kOutOfRange, "d must be >= 1");
    std::vector<BenchRow> rows;
    const SuiteResult s = suite_scaling(a.t, ds, 1000.0, c.seed, &rows);
    std::ostringstream out;
    out << "d,t,wall_ms,peak_key_bits\n";
    for (const auto &r : rows) {
        out << r.d << ',' << r.t << ',';
        if (c.deterministic) {
            out << "0";
        } else {
            out << r.wall_ms;
        }
        out << ',' << r.peak_key_bits << '\n';
    }
    emit(c, out.str());
    for (const auto &n : s.notes) std::cerr << n << '\n';
    return a.check && !s.pass ? 1 : 0;
}

// ---- twirl

struct TwirlArgs {
    std::string comb = "identity";
    int d = 2;
    std::string engine = "fast";
    std::string unitaries;
    int random = 0;
};

int run_twirl(const TwirlArgs &a, const Common &c) {
    const auto start = std::chrono::steady_clock::now();
    const Comb comb = ends_with(a.comb, ".json") ? load_comb_json(read_file(a.comb)) : builtin_comb(a.comb, a.d);
    validate_comb(comb);
    std::vector<Eigen::MatrixXcd> us;
    if (!a.unitaries.empty()) {
        const json j = json::parse(read_file(a.unitaries));
        if (!j.is_array()) throw Error(ErrorKind::kFormatError, "unitaries file must hold a list of matrices");
        for (const auto &m : j) us.push_back(matrix_from_json(m));
    } else if (comb.d == 2) {
        Eigen::MatrixXcd h(2, 2), ph(2, 2);
        h << 1, 1, 1, -1;
        h /= std::sqrt(2.0);
        ph << 1, 0, 0, std::polar(1.0, std::numbers::pi / 4);
        us = {Eigen::MatrixXcd::Identity(2, 2), h, ph};
    } else {
        us.push_back(Eigen::MatrixXcd::Identity(comb.d, comb.d));
    }
    for (int k = 0; k < a.random; ++k) us.push_back(sample_haar(comb.d, c.seed + static_cast<std::uint64_t>(k)));
    const TwirlReport rep = verify_twirl(comb, us, a.engine);
    json cases = json::array();
    for (const auto &cs : rep.cases)
        cases.push_back({{"oracle_deviation", cs.oracle_deviation},
                         {"reference_deviation", cs.reference_deviation},
                         {"path_agreement", cs.path_agreement}});
    const double dev = rep.max_deviation();
    const bool pass = dev <= c.tol;
    emit_json(c,
              {{"comb", comb.name},
               {"d", comb.d},
               {"engine", a.engine},
               {"fidelity", rep.fidelity},
               {"delta", rep.delta},
               {"eta", rep.eta},
               {"cases", cases},
               {"max_deviation", dev},
               {"tolerance", c.tol},
               {"pass", pass}},
              elapsed_ms(start));
    return pass ? 0 : 1;
}

// ---- permute

struct PermuteArgs {
    int d = 3;
    std::vector<std::string> g;
    int random = 0;
};

json perm_json(const std::vector<int> &p) {
    return p;
}

int run_permute(const PermuteArgs &a, const Common &c) {
    const auto start = std::chrono::steady_clock::now();
    if (a.d < 1) throw Error(ErrorKind::kOutOfRange, "d must be >= 1");
    std::vector<std::vector<int>> perms;
    for (const auto &s : a.g) perms.push_back(parse_cycles(s, a.d));
    std::mt19937_64 rng(c.seed);
    for (int k = 0; k < a.random; ++k) {
        std::vector<int> p(static_cast<std::size_t>(a.d));
        std::iota(p.begin(), p.end(), 0);
        std::shuffle(p.begin(), p.end(), rng);
        perms.push_back(std::move(p));
    }
    if (perms.empty()) {
        std::vector<int> p(static_cast<std::size_t>(a.d));
        std::iota(p.begin(), p.end(), 0);
        do {
            perms.push_back(p);
        } while (std::next_permutation(p.begin(), p.end()));
    }
    bool pass = true;
    json arr = json::array();
    for (const auto &p : perms) {
        const bool u_ok = perm_U_from_V(p) == perm_U(p);
        const bool v_ok = perm_V_from_U(p) == perm_V(p);
        const bool v_adj_ok = perm_V_from_U_adjoint(p) == perm_V(p);
        pass = pass && u_ok && v_ok;
        arr.push_back({{"g", perm_json(p)}, {"U_from_V", u_ok}, {"V_from_U", v_ok}, {"V_from_U_adjoint", v_adj_ok}});
    }
    emit_json(c, {{"d", a.d}, {"permutations", arr}, {"pass", pass}}, elapsed_ms(start));
    return pass ? 0 : 1;
}

void add_common(CLI::App *app, Common &c) {
    app->add_option("-o,--output", c.output, "Write the report here instead of stdout");
    app->add_flag("--deterministic", c.deterministic, "Omit timings so reports are byte-identical");
    app->add_option("--seed", c.seed, "Random seed");
    app->add_option("--tol", c.tol, "Tolerance")->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"haarcg: compressed Haar oracles via Clebsch-Gordan transforms"};
    app.require_subcommand(1);

    Common common;
    MomentsArgs ma;
    auto *moments = app.add_subcommand("moments", "Moment tensor of a query script");
    moments->add_option("--backend", ma.backend, "u, u-dense, u-fast, S3, S4, Z<k> or a group JSON file");
    moments->add_option("--d", ma.d, "Dimension for U(d)")->check(CLI::PositiveNumber);
    moments->add_option("--t", ma.t, "Number of forward queries")->check(CLI::NonNegativeNumber);
    moments->add_option("--types", ma.types, "Query script over F, C, T, I (overrides --t)");
    moments->add_flag("--check", ma.check, "Compare against the Haar/group average");
    moments->add_option("--samples", ma.samples, "Random assignments for --check (0 = all when feasible)");
    moments->add_option("--max-entries", ma.max_entries, "Cap on listed nonzero entries");
    add_common(moments, common);

    VerifyArgs va;
    auto *verify = app.add_subcommand("verify", "Run invariant suites");
    verify->add_option("--suite", va.suites,
                       "all, gtcompress, cg, weingarten, first-order, three-way, finite, matrix-units, twirl, permutation, scaling");
    verify->add_option("--d", va.d, "Largest dimension")->check(CLI::PositiveNumber);
    verify->add_option("--t", va.t, "Largest number of queries")->check(CLI::PositiveNumber);
    verify->add_option("--boxes", va.boxes, "Largest Young diagram size")->check(CLI::NonNegativeNumber);
    verify->add_option("--group", va.group, "Restrict finite-group suites to one group");
    add_common(verify, common);

    BenchArgs ba;
    auto *bench = app.add_subcommand("bench", "Forward-query scaling table (CSV)");
    bench->add_option("--t", ba.t, "Number of queries");
    bench->add_option("--d", ba.ds, "Dimensions (default 2^4, 2^8, ..., 2^20)");
    bench->add_flag("--check", ba.check, "Exit 1 unless key bits are linear in log d and d_max runs under 1 s");
    add_common(bench, common);

    TwirlArgs ta;
    auto *twirl = app.add_subcommand("twirl", "Twirl a comb and compare with D_eta o U^-1");
    twirl->add_option("--comb", ta.comb, "identity, u, perfect or a comb JSON file");
    twirl->add_option("--d", ta.d, "Dimension for built-in combs")->check(CLI::PositiveNumber);
    twirl->add_option("--engine", ta.engine, "fast or dense")->check(CLI::IsMember({"fast", "dense"}));
    twirl->add_option("--unitaries", ta.unitaries, "JSON list of test unitaries");
    twirl->add_option("--random", ta.random, "Additional Haar-random test unitaries");
    add_common(twirl, common);

    PermuteArgs pa;
    auto *permute = app.add_subcommand("permute", "Check the permutation-oracle identities");
    permute->add_option("--d", pa.d, "Alphabet size")->check(CLI::PositiveNumber);
    permute->add_option("--g", pa.g, "Permutation in cycle notation, e.g. \"(1 2)\"");
    permute->add_option("--random", pa.random, "Additional random permutations");
    add_common(permute, common);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (*moments) return run_moments(ma, common);
        if (*verify) return run_verify(va, common);
        if (*bench) return run_bench(ba, common);
        if (*twirl) return run_twirl(ta, common);
        if (*permute) return run_permute(pa, common);
    } catch (const Error &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const json::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
