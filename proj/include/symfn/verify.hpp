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

#pragma once

#include <bit>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "esop.hpp"
#include "hamming.hpp"
#include "primitives.hpp"
#include "qutrit.hpp"
#include "qutrit_synth.hpp"
#include "simulator.hpp"
#include "symmetric.hpp"

namespace symfn {

struct Failure {
    std::string input;
    std::string expected;
    std::string got;
};

struct VerifyReport {
    std::string construction;
    uint32_t n = 0;
    uint64_t cases = 0;
    uint64_t failure_count = 0;
    std::vector<Failure> failures;
    bool pass = true;
    size_t depth = 0;
    size_t width = 0;
    size_t gate_count = 0;
    size_t clean_ancillas = 0;
    size_t borrowed_ancillas = 0;
    double wall_seconds = 0;
    uint64_t seed = 0;

    void fail(std::string in, std::string exp, std::string got) {
        pass = false;
        ++failure_count;
        if (failures.size() < 20) failures.push_back({std::move(in), std::move(exp), std::move(got)});
    }
};

namespace detail {

inline std::string digits_string(uint64_t index, int radix, size_t width) {
    std::string s;
    for (size_t q = 0; q < width; ++q) s += static_cast<char>('0' + digit(index, radix, q));
    return s;
}

inline void fill_depth(VerifyReport &r, const QubitCircuit &c) {
    auto d = compute_depth(c);
    r.depth = d.depth;
    r.width = d.width;
    r.gate_count = d.gate_count;
    r.clean_ancillas = d.clean_ancillas;
    r.borrowed_ancillas = d.borrowed_ancillas;
}

inline void fill_depth(VerifyReport &r, const QutritCircuit &c) {
    auto d = compute_depth(c);
    r.depth = d.depth;
    r.width = d.width;
    r.gate_count = d.gate_count;
    r.clean_ancillas = d.clean_ancillas;
    r.borrowed_ancillas = d.borrowed_ancillas;
}

inline void check_budget(int radix, size_t width) {
    uint64_t dim = ipow(static_cast<uint64_t>(radix), width);
    if (dim > max_amplitudes())
        throw std::length_error("simulation budget exceeded: " + std::to_string(dim) + " amplitudes > " +
                                std::to_string(max_amplitudes()));
}

// Exhaustive when 2^n <= limit, otherwise `samples` seeded random inputs.
inline std::vector<uint64_t> input_set(uint32_t n, uint64_t seed, uint64_t limit = 4096, uint64_t samples = 64) {
    std::vector<uint64_t> xs;
    if (n < 63 && (uint64_t{1} << n) <= limit) {
        for (uint64_t x = 0; x < (uint64_t{1} << n); ++x) xs.push_back(x);
    } else {
        std::mt19937_64 rng(seed);
        const uint64_t mask = n >= 64 ? ~uint64_t{0} : (uint64_t{1} << n) - 1;
        for (uint64_t i = 0; i < samples; ++i) xs.push_back(rng() & mask);
    }
    return xs;
}

template <typename C>
void expect_basis(VerifyReport &r, const C &c, int radix, uint64_t in, uint64_t expected) {
    ++r.cases;
    auto got = extract_basis(simulate(c, in), 1e-9);
    const size_t w = c.width();
    if (!got) {
        r.fail(digits_string(in, radix, w), digits_string(expected, radix, w), "non-basis state");
    } else if (got->index != expected || std::abs(got->phase) > 1e-9) {
        r.fail(digits_string(in, radix, w), digits_string(expected, radix, w),
               digits_string(got->index, radix, w) + " phase " + std::to_string(got->phase));
    }
}

class Timer {
  public:
    Timer() : start_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

  private:
    std::chrono::steady_clock::time_point start_;
};

}  // namespace detail

inline VerifyReport verify_fanout(uint32_t n) {
    detail::Timer tm;
    VerifyReport r{"fanout", n};
    QubitCircuit c = synth_fanout(n);
    detail::fill_depth(r, c);
    detail::check_budget(2, c.width());
    for (uint64_t s : detail::input_set(n + 1, 0)) {
        uint64_t e = (s & 1) ? s ^ (((uint64_t{1} << n) - 1) << 1) : s;
        detail::expect_basis(r, c, 2, s, e);
    }
    r.wall_seconds = tm.seconds();
    return r;
}

inline uint64_t weight_register(uint64_t w, uint32_t m) {
    uint64_t reg = 0;
    for (uint32_t j = 0; j < m; ++j)
        if ((w >> (m - 1 - j)) & 1) reg |= uint64_t{1} << j;
    return reg;
}

inline VerifyReport verify_hamming(uint32_t n, uint64_t seed = 0) {
    detail::Timer tm;
    VerifyReport r{"hamming", n};
    r.seed = seed;
    QubitCircuit c = synth_hamming_weight(n);
    detail::fill_depth(r, c);
    detail::check_budget(2, c.width());
    const uint32_t m = hamming_outputs(n);
    for (uint64_t x : detail::input_set(n, seed)) {
        uint64_t in = x << m;
        detail::expect_basis(r, c, 2, in, in | weight_register(std::popcount(x), m));
    }
    r.wall_seconds = tm.seconds();
    return r;
}

inline VerifyReport verify_hamming_distance(uint32_t n, uint64_t seed = 0) {
    detail::Timer tm;
    VerifyReport r{"hamming-distance", n};
    r.seed = seed;
    QubitCircuit c = synth_hamming_distance(n);
    detail::fill_depth(r, c);
    detail::check_budget(2, c.width());
    const uint32_t m = hamming_outputs(n);
    for (uint64_t xy : detail::input_set(2 * n, seed)) {
        uint64_t x = xy & ((uint64_t{1} << n) - 1), y = xy >> n;
        uint64_t in = xy << m;
        detail::expect_basis(r, c, 2, in, in | weight_register(std::popcount(x ^ y), m));
    }
    r.wall_seconds = tm.seconds();
    return r;
}

// Every input with random borrowed values and target, plus one input with a
// random superposition on the borrowed wires.
inline VerifyReport verify_boolean(const TruthTable &tt, uint64_t seed = 0) {
    detail::Timer tm;
    VerifyReport r{"boolean", tt.n};
    r.seed = seed;
    QubitCircuit c = synth_boolean(anf_from_truth_table(tt));
    detail::fill_depth(r, c);
    detail::check_budget(2, c.width());
    const uint32_t n = tt.n;
    const size_t a = c.width() - n - 1;
    const uint32_t t = static_cast<uint32_t>(c.width() - 1);
    std::mt19937_64 rng(seed);
    for (uint64_t x = 0; x < (uint64_t{1} << n); ++x) {
        uint64_t anc = a ? rng() & ((uint64_t{1} << a) - 1) : 0;
        uint64_t tv = rng() & 1;
        uint64_t in = x | (anc << n) | (tv << t);
        detail::expect_basis(r, c, 2, in, in ^ (uint64_t{tt.bits[x] & 1u} << t));
    }
    if (a > 0) {
        ++r.cases;
        uint64_t x = rng() & ((uint64_t{1} << n) - 1);
        StateVector s(2, c.width(), 0);
        std::normal_distribution<double> nd;
        std::vector<amp_t> coef(uint64_t{1} << a);
        double norm = 0;
        for (auto &z : coef) {
            z = amp_t(nd(rng), nd(rng));
            norm += std::norm(z);
        }
        s.amp[0] = 0;
        for (uint64_t k = 0; k < coef.size(); ++k) s.amp[x | (k << n)] = coef[k] / std::sqrt(norm);
        run(s, c);
        double err = 0;
        for (uint64_t k = 0; k < coef.size(); ++k) {
            uint64_t idx = x | (k << n) | (uint64_t{tt.bits[x] & 1u} << t);
            err = std::max(err, std::abs(s.amp[idx] - coef[k] / std::sqrt(norm)));
        }
        if (err > 1e-9) r.fail("superposition on borrowed wires", "restored", "error " + std::to_string(err));
    }
    r.wall_seconds = tm.seconds();
    return r;
}

// All inputs with t in {0,1}; the full basis index must match, so inputs
// and the clean ancillas are checked as well.
inline VerifyReport verify_symmetric_circuit(const std::string &name, const QubitCircuit &c, const SymmetricSpec &spec,
                                             uint64_t seed = 0) {
    detail::Timer tm;
    VerifyReport r{name, spec.n};
    r.seed = seed;
    detail::fill_depth(r, c);
    detail::check_budget(2, c.width());
    const uint32_t t = static_cast<uint32_t>(c.width() - 1);
    for (uint64_t x : detail::input_set(spec.n, seed)) {
        for (uint64_t tv = 0; tv < 2; ++tv) {
            uint64_t in = x | (tv << t);
            detail::expect_basis(r, c, 2, in, in ^ (uint64_t{spec.values[std::popcount(x)]} << t));
        }
    }
    r.wall_seconds = tm.seconds();
    return r;
}

inline VerifyReport verify_symmetric(const SymmetricSpec &spec, uint64_t seed = 0) {
    return verify_symmetric_circuit("symmetric", synth_symmetric(spec), spec, seed);
}

inline VerifyReport verify_majority(uint32_t n, uint64_t seed = 0) {
    return verify_symmetric_circuit("majority", synth_majority(n), preset_spec("majority", n), seed);
}

// Every symmetric spec on n inputs; reports the aggregate.
inline VerifyReport verify_symmetric_all(uint32_t n) {
    detail::Timer tm;
    VerifyReport agg{"symmetric", n};
    for (uint64_t f = 0; f < (uint64_t{1} << (n + 1)); ++f) {
        SymmetricSpec s{n, std::vector<uint8_t>(n + 1)};
        for (uint32_t w = 0; w <= n; ++w) s.values[w] = (f >> w) & 1;
        VerifyReport r = verify_symmetric(s);
        agg.cases += r.cases;
        agg.depth = std::max(agg.depth, r.depth);
        agg.width = r.width;
        agg.gate_count = std::max(agg.gate_count, r.gate_count);
        agg.clean_ancillas = r.clean_ancillas;
        if (!r.pass) {
            agg.pass = false;
            agg.failure_count += r.failure_count;
            for (const auto &fl : r.failures)
                if (agg.failures.size() < 20) agg.failures.push_back({"spec " + std::to_string(f) + ": " + fl.input, fl.expected, fl.got});
        }
    }
    agg.wall_seconds = tm.seconds();
    return agg;
}

inline VerifyReport verify_qutrit_adder() {
    detail::Timer tm;
    VerifyReport r{"qutrit-adder", 3};
    QutritCircuit c = synth_qutrit_full_adder(0, 1, 2);
    detail::fill_depth(r, c);
    for (uint64_t x = 0; x < 8; ++x) {
        ++r.cases;
        uint64_t a = x & 1, b = (x >> 1) & 1, cc = (x >> 2) & 1;
        auto got = extract_basis(simulate(c, a + 3 * b + 9 * cc));
        uint64_t s = a ^ b ^ cc, mj = (a + b + cc) >= 2;
        if (!got || digit(got->index, 3, 0) != s || digit(got->index, 3, 1) != mj)
            r.fail(std::to_string(a) + std::to_string(b) + std::to_string(cc), std::to_string(s) + std::to_string(mj),
                   got ? detail::digits_string(got->index, 3, 3) : "non-basis state");
    }
    r.wall_seconds = tm.seconds();
    return r;
}

inline VerifyReport verify_qutrit_hamming(uint32_t n, uint64_t seed = 0) {
    detail::Timer tm;
    VerifyReport r{"qutrit-hamming", n};
    r.seed = seed;
    QutritHamming h = synth_hamming_qutrit(n);
    detail::fill_depth(r, h.circuit);
    detail::check_budget(3, h.circuit.width());
    for (uint64_t x : detail::input_set(n, seed)) {
        ++r.cases;
        uint64_t in = 0;
        for (uint32_t i = 0; i < n; ++i) in += ((x >> i) & 1) * ipow(3, i);
        auto got = extract_basis(simulate(h.circuit, in));
        const uint64_t w = std::popcount(x);
        std::string exp, out;
        bool ok = got.has_value();
        for (size_t l = 0; l < h.designated.size(); ++l) {
            exp += static_cast<char>('0' + ((w >> l) & 1));
            uint64_t d = got ? digit(got->index, 3, h.designated[l]) : 9;
            out += static_cast<char>('0' + d);
            ok = ok && d == ((w >> l) & 1);
        }
        if (!ok) r.fail(detail::digits_string(in, 3, h.circuit.width()), exp, out);
    }
    r.wall_seconds = tm.seconds();
    return r;
}

inline VerifyReport verify_qutrit_boolean(const TruthTable &tt, uint64_t seed = 0) {
    detail::Timer tm;
    VerifyReport r{"qutrit-boolean", tt.n};
    r.seed = seed;
    QutritCircuit c = synth_boolean_qutrit(f3_from_truth_table(tt));
    detail::fill_depth(r, c);
    detail::check_budget(3, c.width());
    const uint32_t n = tt.n;
    const size_t w = c.width();
    std::mt19937_64 rng(seed);
    for (uint64_t x = 0; x < (uint64_t{1} << n); ++x) {
        for (uint64_t tv = 0; tv < 3; ++tv) {
            uint64_t in = 0;
            for (uint32_t i = 0; i < n; ++i) in += ((x >> i) & 1) * ipow(3, i);
            for (size_t q = n; q + 1 < w; ++q) in += (rng() % 3) * ipow(3, q);
            const uint64_t tp = ipow(3, w - 1);
            in += tv * tp;
            uint64_t e = in - tv * tp + ((tv + tt.bits[x]) % 3) * tp;
            detail::expect_basis(r, c, 3, in, e);
        }
    }
    r.wall_seconds = tm.seconds();
    return r;
}

inline VerifyReport verify_qutrit_symmetric(const SymmetricSpec &spec, uint64_t seed = 0) {
    detail::Timer tm;
    VerifyReport r{"qutrit-symmetric", spec.n};
    r.seed = seed;
    QutritSymmetric qs = synth_symmetric_qutrit(spec);
    detail::fill_depth(r, qs.circuit);
    detail::check_budget(3, qs.circuit.width());
    for (uint64_t x : detail::input_set(spec.n, seed)) {
        for (uint64_t tv = 0; tv < 3; ++tv) {
            ++r.cases;
            uint64_t in = tv * ipow(3, qs.target);
            for (uint32_t i = 0; i < spec.n; ++i) in += ((x >> i) & 1) * ipow(3, i);
            auto got = extract_basis(simulate(qs.circuit, in));
            const uint64_t want = (tv + spec.values[std::popcount(x)]) % 3;
            if (!got || digit(got->index, 3, qs.target) != want)
                r.fail(detail::digits_string(in, 3, qs.circuit.width()), std::to_string(want),
                       got ? std::to_string(digit(got->index, 3, qs.target)) : "non-basis state");
        }
    }
    r.wall_seconds = tm.seconds();
    return r;
}

inline VerifyReport verify_qutrit_symmetric_all(uint32_t n) {
    detail::Timer tm;
    VerifyReport agg{"qutrit-symmetric", n};
    for (uint64_t f = 0; f < (uint64_t{1} << (n + 1)); ++f) {
        SymmetricSpec s{n, std::vector<uint8_t>(n + 1)};
        for (uint32_t w = 0; w <= n; ++w) s.values[w] = (f >> w) & 1;
        VerifyReport r = verify_qutrit_symmetric(s);
        agg.cases += r.cases;
        agg.depth = std::max(agg.depth, r.depth);
        agg.width = r.width;
        agg.gate_count = std::max(agg.gate_count, r.gate_count);
        agg.clean_ancillas = r.clean_ancillas;
        if (!r.pass) {
            agg.pass = false;
            agg.failure_count += r.failure_count;
            for (const auto &fl : r.failures)
                if (agg.failures.size() < 20) agg.failures.push_back({"spec " + std::to_string(f) + ": " + fl.input, fl.expected, fl.got});
        }
    }
    agg.wall_seconds = tm.seconds();
    return agg;
}

}  // namespace symfn
