/* Copyright 2026 The symfn Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "symfn.hpp"

using json = nlohmann::json;
using namespace symfn;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string construction;
    uint32_t n = 0;
    std::string values;
    std::string fn;
    std::string system = "qubit";
    std::string out;
    std::string theta = "1/4";
    bool json_out = false;
    bool all_specs = false;
    bool fused = false;
    uint64_t seed = 0;
};

const uint32_t kTableN[] = {31, 63, 127, 255, 511, 1023, 2047, 4095};
const size_t kHammingDepth[] = {138, 190, 250, 318, 394, 478, 570, 670};
const size_t kMajorityDepth[] = {277, 381, 501, 637, 789, 957, 1141, 1341};
const size_t kSymmetricBound[] = {1038, 1682, 2438, 3306, 4286, 5378, 6582, 7898};
const size_t kQutritLayers[] = {7, 9, 10, 12, 14, 16, 18, 20};
const size_t kQutritMajorityLayers[] = {14, 18, 20, 24, 28, 32, 36, 40};

std::string canonical(const Options &o) {
    std::string c = o.construction;
    if (o.system == "qutrit" && c.rfind("qutrit-", 0) != 0) c = "qutrit-" + c;
    return c;
}

TruthTable parse_hex_table(const std::string &hex, uint32_t n) {
    if (n > 20) throw UsageError("truth-table arity too large");
    TruthTable tt(n);
    size_t bit = 0;
    for (size_t i = hex.size(); i-- > 0;) {
        char ch = hex[i];
        int v;
        if (ch >= '0' && ch <= '9') {
            v = ch - '0';
        } else if (ch >= 'a' && ch <= 'f') {
            v = ch - 'a' + 10;
        } else if (ch >= 'A' && ch <= 'F') {
            v = ch - 'A' + 10;
        } else {
            throw UsageError("bad hex digit in --values");
        }
        for (int b = 0; b < 4; ++b, ++bit) {
            if (!((v >> b) & 1)) continue;
            if (bit >= tt.bits.size()) throw UsageError("--values has bits beyond 2^n entries");
            tt.bits[bit] = 1;
        }
    }
    return tt;
}

SymmetricSpec spec_from(const Options &o) {
    if (!o.fn.empty() && !o.values.empty()) throw UsageError("give --values or --fn, not both");
    if (!o.fn.empty()) {
        try {
            return preset_spec(o.fn, o.n);
        } catch (const std::invalid_argument &e) {
            throw UsageError(e.what());
        }
    }
    if (o.values.size() != o.n + 1) throw UsageError("--values must be a bit string of length n+1");
    SymmetricSpec s{o.n, {}};
    for (char ch : o.values) {
        if (ch != '0' && ch != '1') throw UsageError("--values must contain only 0 and 1");
        s.values.push_back(static_cast<uint8_t>(ch - '0'));
    }
    return s;
}

Angle parse_angle(const std::string &s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Angle(std::stoll(s), 1);
        return Angle(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
    } catch (const std::exception &) {
        throw UsageError("bad --theta, expected num/den (multiple of pi)");
    }
}

json counts_json(const std::map<std::string, size_t> &m) {
    json j = json::object();
    for (const auto &[k, v] : m) j[k] = v;
    return j;
}

json report_json(const std::string &name, uint32_t n, const DepthReport &d) {
    return {{"construction", name},        {"n", n},
            {"depth", d.depth},            {"flat_depth", d.flat_depth},
            {"width", d.width},            {"gate_count", d.gate_count},
            {"counts", counts_json(d.counts)}, {"clean_ancillas", d.clean_ancillas},
            {"borrowed_ancillas", d.borrowed_ancillas}};
}

json report_json(const std::string &name, uint32_t n, const QutritDepthReport &d) {
    return {{"construction", name},
            {"n", n},
            {"depth", d.depth},
            {"width", d.width},
            {"gate_count", d.gate_count},
            {"counts", counts_json(d.counts)},
            {"clean_ancillas", d.clean_ancillas},
            {"borrowed_ancillas", d.borrowed_ancillas}};
}

void require_n(const Options &o, uint32_t min) {
    if (o.n < min) throw UsageError("--n must be at least " + std::to_string(min));
}

void emit(const Options &o, const std::string &text, json report) {
    if (!o.out.empty()) {
        std::ofstream f(o.out);
        if (!f) throw std::runtime_error("cannot write " + o.out);
        f << text;
        std::ofstream fj(o.out + ".json");
        fj << report.dump(2) << "\n";
    }
    if (o.json_out) {
        std::cout << report.dump(2) << "\n";
    } else {
        std::cout << report["construction"].get<std::string>() << " n=" << report["n"] << " depth "
                  << report["depth"] << " width " << report["width"] << " gates " << report["gate_count"] << "\n";
    }
}

int cmd_synth(const Options &o) {
    const std::string c = canonical(o);
    if (c == "fanout") {
        require_n(o, 1);
        auto q = synth_fanout(o.n);
        emit(o, to_text(q), report_json(c, o.n, compute_depth(q)));
    } else if (c == "cm") {
        require_n(o, 1);
        auto q = synth_cm({o.n, parse_angle(o.theta), true});
        emit(o, to_text(q), report_json(c, o.n, compute_depth(q)));
    } else if (c == "qft") {
        require_n(o, 1);
        auto q = synth_qft(o.n);
        emit(o, to_text(q), report_json(c, o.n, compute_depth(q)));
    } else if (c == "hamming") {
        require_n(o, 1);
        auto q = synth_hamming_weight(o.n);
        emit(o, to_text(q), report_json(c, o.n, compute_depth(q)));
    } else if (c == "hamming-distance") {
        require_n(o, 1);
        auto q = synth_hamming_distance(o.n);
        emit(o, to_text(q), report_json(c, o.n, compute_depth(q)));
    } else if (c == "boolean") {
        require_n(o, 1);
        auto q = synth_boolean(anf_from_truth_table(parse_hex_table(o.values, o.n)), o.fused);
        emit(o, to_text(q), report_json(c, o.n, compute_depth(q)));
    } else if (c == "symmetric") {
        require_n(o, 1);
        auto q = synth_symmetric(spec_from(o), o.fused);
        emit(o, to_text(q), report_json(c, o.n, compute_depth(q)));
    } else if (c == "majority") {
        require_n(o, 1);
        auto q = synth_majority(o.n);
        emit(o, to_text(q), report_json(c, o.n, compute_depth(q)));
    } else if (c == "qutrit-hamming") {
        require_n(o, 1);
        auto h = synth_hamming_qutrit(o.n);
        json r = report_json(c, o.n, compute_depth(h.circuit));
        r["layers"] = h.layers;
        r["designated"] = h.designated;
        emit(o, to_text(h.circuit), r);
    } else if (c == "qutrit-boolean") {
        require_n(o, 1);
        auto q = synth_boolean_qutrit(f3_from_truth_table(parse_hex_table(o.values, o.n)));
        emit(o, to_text(q), report_json(c, o.n, compute_depth(q)));
    } else if (c == "qutrit-symmetric") {
        require_n(o, 2);
        auto s = synth_symmetric_qutrit(spec_from(o));
        json r = report_json(c, o.n, compute_depth(s.circuit));
        r["designated"] = s.designated;
        r["helper"] = s.helper;
        emit(o, to_text(s.circuit), r);
    } else {
        throw UsageError("unknown construction: " + c);
    }
    return 0;
}

json verify_json(const VerifyReport &r) {
    json f = json::array();
    for (const auto &x : r.failures) f.push_back({{"input", x.input}, {"expected", x.expected}, {"got", x.got}});
    return {{"construction", r.construction},
            {"n", r.n},
            {"cases", r.cases},
            {"pass", r.pass},
            {"failure_count", r.failure_count},
            {"failures", f},
            {"depth", {{"depth", r.depth}, {"width", r.width}, {"gate_count", r.gate_count}}},
            {"ancillas", {{"clean", r.clean_ancillas}, {"borrowed", r.borrowed_ancillas}}},
            {"wall_seconds", r.wall_seconds},
            {"seed", r.seed}};
}

VerifyReport merge(const std::string &name, uint32_t n, const std::vector<VerifyReport> &parts, double secs) {
    VerifyReport agg{name, n};
    for (const auto &r : parts) {
        agg.cases += r.cases;
        agg.depth = std::max(agg.depth, r.depth);
        agg.width = std::max(agg.width, r.width);
        agg.gate_count = std::max(agg.gate_count, r.gate_count);
        agg.clean_ancillas = r.clean_ancillas;
        agg.borrowed_ancillas = r.borrowed_ancillas;
        agg.seed = r.seed;
        if (!r.pass) {
            agg.pass = false;
            agg.failure_count += r.failure_count;
            for (const auto &f : r.failures)
                if (agg.failures.size() < 20) agg.failures.push_back(f);
        }
    }
    agg.wall_seconds = secs;
    return agg;
}

// Boolean suites: the given table, every table (--all-specs, n <= 3), or
// 64 seeded random tables.
template <typename F>
VerifyReport boolean_suite(const Options &o, const std::string &name, F verify_one) {
    require_n(o, 1);
    detail::Timer tm;
    std::vector<VerifyReport> parts;
    if (!o.values.empty()) {
        parts.push_back(verify_one(parse_hex_table(o.values, o.n), o.seed));
    } else if (o.all_specs) {
        if (o.n > 3) throw UsageError("--all-specs for boolean is limited to n <= 3");
        for (uint64_t f = 0; f < (uint64_t{1} << (1u << o.n)); ++f) {
            TruthTable tt(o.n);
            for (size_t x = 0; x < tt.bits.size(); ++x) tt.bits[x] = (f >> x) & 1;
            parts.push_back(verify_one(tt, o.seed + f));
        }
    } else {
        std::mt19937_64 rng(o.seed);
        for (int i = 0; i < 64; ++i) {
            TruthTable tt(o.n);
            for (auto &b : tt.bits) b = rng() & 1;
            parts.push_back(verify_one(tt, rng()));
        }
    }
    VerifyReport r = merge(name, o.n, parts, tm.seconds());
    r.seed = o.seed;
    return r;
}

int cmd_verify(const Options &o) {
    const std::string c = canonical(o);
    VerifyReport r;
    if (c == "fanout") {
        require_n(o, 1);
        r = verify_fanout(o.n);
    } else if (c == "hamming") {
        require_n(o, 1);
        r = verify_hamming(o.n, o.seed);
    } else if (c == "hamming-distance") {
        require_n(o, 1);
        r = verify_hamming_distance(o.n, o.seed);
    } else if (c == "boolean") {
        r = boolean_suite(o, c, [](const TruthTable &t, uint64_t s) { return verify_boolean(t, s); });
    } else if (c == "symmetric") {
        require_n(o, 1);
        r = o.all_specs ? verify_symmetric_all(o.n) : verify_symmetric(spec_from(o), o.seed);
    } else if (c == "majority") {
        require_n(o, 1);
        r = verify_majority(o.n, o.seed);
    } else if (c == "qutrit-adder") {
        r = verify_qutrit_adder();
    } else if (c == "qutrit-hamming") {
        require_n(o, 1);
        r = verify_qutrit_hamming(o.n, o.seed);
    } else if (c == "qutrit-boolean") {
        r = boolean_suite(o, c, [](const TruthTable &t, uint64_t s) { return verify_qutrit_boolean(t, s); });
    } else if (c == "qutrit-symmetric") {
        require_n(o, 2);
        r = o.all_specs ? verify_qutrit_symmetric_all(o.n) : verify_qutrit_symmetric(spec_from(o), o.seed);
    } else {
        throw UsageError("unknown construction: " + c);
    }
    if (o.json_out) {
        std::cout << verify_json(r).dump(2) << "\n";
    } else {
        std::cout << r.construction << " n=" << r.n << " " << (r.pass ? "pass" : "FAIL") << ", " << r.cases
                  << " cases, depth " << r.depth << ", seed " << r.seed << "\n";
        for (const auto &f : r.failures)
            std::cout << "  input " << f.input << " expected " << f.expected << " got " << f.got << "\n";
    }
    return r.pass ? 0 : 1;
}

int cmd_tables(const Options &o) {
    json rows = json::array();
    std::vector<std::string> mismatches;
    auto row = [&](const std::string &name, const std::vector<size_t> &got, const size_t *want, bool bound) {
        json cells = json::array();
        for (size_t i = 0; i < got.size(); ++i) {
            bool ok = bound ? got[i] <= want[i] : got[i] == want[i];
            cells.push_back({{"n", kTableN[i]}, {"value", got[i]}, {"expected", want[i]}, {"ok", ok}});
            if (!ok)
                mismatches.push_back(name + " n=" + std::to_string(kTableN[i]) + ": " + std::to_string(got[i]) +
                                     (bound ? " > " : " != ") + std::to_string(want[i]));
        }
        rows.push_back({{"row", name}, {"relation", bound ? "<=" : "=="}, {"cells", cells}});
    };
    std::vector<size_t> hw, mj, sym, ql, qm;
    for (uint32_t n : kTableN) {
        hw.push_back(compute_depth(synth_hamming_weight(n)).depth);
        mj.push_back(compute_depth(synth_majority(n)).depth);
        size_t worst = 0;
        for (const char *f : {"majority", "parity", "mod:3", "exact:1"})
            worst = std::max(worst, compute_depth(synth_symmetric(preset_spec(f, n))).depth);
        sym.push_back(worst);
        size_t layers = almost_counting(n).state.layers;
        ql.push_back(layers);
        qm.push_back(2 * layers);
    }
    row("qubit hamming depth", hw, kHammingDepth, false);
    row("qubit majority depth", mj, kMajorityDepth, false);
    row("qubit symmetric depth (presets, max)", sym, kSymmetricBound, true);
    row("qutrit hamming full-adder layers", ql, kQutritLayers, false);
    row("qutrit majority full-adder layers", qm, kQutritMajorityLayers, false);
    if (o.json_out) {
        std::cout << json{{"rows", rows}, {"mismatches", mismatches}}.dump(2) << "\n";
    } else {
        std::cout << "| row |";
        for (uint32_t n : kTableN) std::cout << " " << n << " |";
        std::cout << "\n|---|";
        for (size_t i = 0; i < 8; ++i) std::cout << "---|";
        std::cout << "\n";
        for (const auto &r : rows) {
            std::cout << "| " << r["row"].get<std::string>() << " |";
            for (const auto &cell : r["cells"]) std::cout << " " << cell["value"] << (cell["ok"] ? "" : " (!)") << " |";
            std::cout << "\n";
        }
        for (const auto &m : mismatches) std::cout << "mismatch: " << m << "\n";
    }
    return mismatches.empty() ? 0 : 1;
}

void add_common(CLI::App *sub, Options &o, bool positional) {
    if (positional) sub->add_option("construction", o.construction, "construction name")->required();
    sub->add_option("--n", o.n, "input count");
    sub->add_option("--values", o.values, "symmetric values (bits, length n+1) or truth table (hex, LSB = f(0))");
    sub->add_option("--fn", o.fn, "preset: majority|parity|threshold:k|exact:k|mod:k");
    sub->add_option("--system", o.system, "qubit or qutrit")->check(CLI::IsMember({"qubit", "qutrit"}));
    sub->add_flag("--json", o.json_out, "print a JSON report");
    sub->add_option("--seed", o.seed, "seed for randomized suites");
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Synthesis and verification of symmetric Boolean function circuits"};
    app.require_subcommand(1);
    Options o;
    auto *synth = app.add_subcommand("synth", "synthesize a circuit");
    add_common(synth, o, true);
    synth->add_option("--out", o.out, "circuit text output path (report written to <path>.json)");
    synth->add_option("--theta", o.theta, "C-M angle as num/den multiple of pi");
    synth->add_flag("--fused", o.fused, "merge linear terms into the first ancilla parity");
    auto *verify = app.add_subcommand("verify", "verify a construction by simulation");
    add_common(verify, o, true);
    verify->add_flag("--all-specs", o.all_specs, "sweep every specification");
    auto *tables = app.add_subcommand("tables", "regenerate the depth and layer tables");
    tables->add_flag("--json", o.json_out, "print JSON");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    try {
        if (*synth) return cmd_synth(o);
        if (*verify) return cmd_verify(o);
        return cmd_tables(o);
    } catch (const UsageError &e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::length_error &e) {
        std::cerr << "refused: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument &e) {
        std::cerr << "invalid specification: " << e.what() << "\n";
        return 2;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
