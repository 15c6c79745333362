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

#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "circuit.hpp"
#include "qutrit_circuit.hpp"

namespace symfn {

using amp_t = std::complex<double>;

// Amplitude budget; SYMFN_MAX_AMPLITUDES overrides the default of 2^26.
inline uint64_t max_amplitudes() {
    if (const char *env = std::getenv("SYMFN_MAX_AMPLITUDES")) {
        char *end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end != env && v > 0) return v;
    }
    return uint64_t{1} << 26;
}

inline uint64_t ipow(uint64_t base, size_t e) {
    uint64_t r = 1;
    for (size_t i = 0; i < e; ++i) {
        if (r > (uint64_t{1} << 62) / base) throw std::length_error("state dimension overflow");
        r *= base;
    }
    return r;
}

struct StateVector {
    int radix = 2;
    size_t width = 0;
    std::vector<amp_t> amp;

    StateVector() = default;
    StateVector(int r, size_t w, uint64_t basis = 0) : radix(r), width(w) {
        uint64_t dim = ipow(static_cast<uint64_t>(r), w);
        if (dim > max_amplitudes()) throw std::length_error("simulation budget exceeded: " + std::to_string(dim) + " amplitudes");
        if (basis >= dim) throw std::out_of_range("initial basis index out of range");
        amp.assign(dim, amp_t(0.0, 0.0));
        amp[basis] = 1.0;
    }

    double norm() const {
        double s = 0;
        for (const auto &a : amp) s += std::norm(a);
        return std::sqrt(s);
    }
};

namespace detail {

// Inserts a zero bit at position q.
inline uint64_t insert0(uint64_t k, uint32_t q) {
    uint64_t lo = k & ((uint64_t{1} << q) - 1);
    return ((k >> q) << (q + 1)) | lo;
}

}  // namespace detail

inline void apply_gate(StateVector &s, const Gate &g) {
    auto &v = s.amp;
    const uint64_t half = v.size() >> 1;
    switch (g.kind) {
        case GateKind::H: {
            const double r = 1.0 / std::sqrt(2.0);
            const uint64_t bit = uint64_t{1} << g.q0;
            for (uint64_t k = 0; k < half; ++k) {
                uint64_t i = detail::insert0(k, g.q0);
                amp_t a = v[i], b = v[i | bit];
                v[i] = (a + b) * r;
                v[i | bit] = (a - b) * r;
            }
            break;
        }
        case GateKind::X: {
            const uint64_t bit = uint64_t{1} << g.q0;
            for (uint64_t k = 0; k < half; ++k) {
                uint64_t i = detail::insert0(k, g.q0);
                std::swap(v[i], v[i | bit]);
            }
            break;
        }
        case GateKind::T:
        case GateKind::Tdg:
        case GateKind::PhaseZ: {
            double th = g.kind == GateKind::T ? kPi / 4 : g.kind == GateKind::Tdg ? -kPi / 4 : g.theta.radians();
            const amp_t ph(std::cos(th), std::sin(th));
            const uint64_t bit = uint64_t{1} << g.q0;
            for (uint64_t k = 0; k < half; ++k) v[detail::insert0(k, g.q0) | bit] *= ph;
            break;
        }
        case GateKind::CNOT: {
            uint32_t lo = std::min(g.q0, g.q1), hi = std::max(g.q0, g.q1);
            const uint64_t cb = uint64_t{1} << g.q0, tb = uint64_t{1} << g.q1;
            const uint64_t quarter = v.size() >> 2;
            for (uint64_t k = 0; k < quarter; ++k) {
                uint64_t i = detail::insert0(detail::insert0(k, lo), hi) | cb;
                std::swap(v[i], v[i | tb]);
            }
            break;
        }
    }
}

inline void apply_gate(StateVector &s, const QutritGate &g, std::vector<amp_t> &scratch, const std::vector<uint64_t> &pw) {
    const uint64_t dim = s.amp.size();
    scratch.assign(dim, amp_t(0.0, 0.0));
    const uint64_t tp = pw[g.target];
    for (uint64_t i = 0; i < dim; ++i) {
        const amp_t a = s.amp[i];
        if (a == amp_t(0.0, 0.0)) continue;
        bool fire = true;
        for (int c = 0; c < g.ncontrols; ++c)
            if ((i / pw[g.ctrl[c].wire]) % 3 != g.ctrl[c].value) fire = false;
        uint64_t j = i;
        if (fire) {
            uint8_t d = static_cast<uint8_t>((i / tp) % 3);
            uint8_t nd = qop_apply(g.op, d);
            j = i - d * tp + nd * tp;
        }
        scratch[j] = a;
    }
    s.amp.swap(scratch);
}

inline void run(StateVector &s, const QubitCircuit &c) {
    if (s.radix != 2) throw std::invalid_argument("radix mismatch: qubit circuit on radix-3 state");
    if (c.width() != s.width) throw std::invalid_argument("width mismatch");
    for (const Gate &g : c.gates()) apply_gate(s, g);
}

inline void run(StateVector &s, const QutritCircuit &c) {
    if (s.radix != 3) throw std::invalid_argument("radix mismatch: qutrit circuit on radix-2 state");
    if (c.width() != s.width) throw std::invalid_argument("width mismatch");
    std::vector<uint64_t> pw(s.width);
    for (size_t q = 0; q < s.width; ++q) pw[q] = ipow(3, q);
    std::vector<amp_t> scratch;
    for (const auto &g : c.gates()) apply_gate(s, g, scratch, pw);
}

inline StateVector simulate(const QubitCircuit &c, uint64_t initial) {
    StateVector s(2, c.width(), initial);
    run(s, c);
    return s;
}

inline StateVector simulate(const QutritCircuit &c, uint64_t initial) {
    StateVector s(3, c.width(), initial);
    run(s, c);
    return s;
}

struct BasisResult {
    uint64_t index;
    double phase;
};

inline std::optional<BasisResult> extract_basis(const StateVector &s, double tol = 1e-9) {
    for (uint64_t i = 0; i < s.amp.size(); ++i) {
        if (std::abs(s.amp[i]) >= 1.0 - tol) return BasisResult{i, std::arg(s.amp[i])};
    }
    return std::nullopt;
}

// Digit of wire q in a basis index.
inline uint64_t digit(uint64_t index, int radix, size_t q) {
    return radix == 2 ? (index >> q) & 1 : (index / ipow(3, q)) % 3;
}

inline uint64_t place_digits(int radix, const std::vector<uint32_t> &wires, const std::vector<uint8_t> &digits) {
    uint64_t idx = 0;
    for (size_t i = 0; i < wires.size(); ++i) idx += digits[i] * ipow(static_cast<uint64_t>(radix), wires[i]);
    return idx;
}

namespace detail {

template <typename C>
std::vector<uint64_t> truth_table_impl(const C &c, int radix, const std::vector<uint32_t> &readout,
                                       const std::vector<uint32_t> &inputs, double tol) {
    std::vector<uint64_t> table(uint64_t{1} << inputs.size());
    for (uint64_t x = 0; x < table.size(); ++x) {
        std::vector<uint8_t> d(inputs.size());
        for (size_t i = 0; i < inputs.size(); ++i) d[i] = (x >> i) & 1;
        auto r = extract_basis(simulate(c, place_digits(radix, inputs, d)), tol);
        if (!r) throw std::runtime_error("non-classical output for input " + std::to_string(x));
        uint64_t out = 0, scale = 1;
        for (uint32_t q : readout) {
            out += digit(r->index, radix, q) * scale;
            scale *= static_cast<uint64_t>(radix);
        }
        table[x] = out;
    }
    return table;
}

}  // namespace detail

// Sweeps all 0/1 assignments of `inputs` (others zero); entry x holds the
// read-out digits, first read-out wire least significant.
inline std::vector<uint64_t> truth_table_of(const QubitCircuit &c, const std::vector<uint32_t> &readout,
                                            const std::vector<uint32_t> &inputs, double tol = 1e-9) {
    return detail::truth_table_impl(c, 2, readout, inputs, tol);
}

inline std::vector<uint64_t> truth_table_of(const QutritCircuit &c, const std::vector<uint32_t> &readout,
                                            const std::vector<uint32_t> &inputs, double tol = 1e-9) {
    return detail::truth_table_impl(c, 3, readout, inputs, tol);
}

}  // namespace symfn
