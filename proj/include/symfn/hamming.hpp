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

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "circuit.hpp"
#include "primitives.hpp"

namespace symfn {

struct CMSpec {
    uint32_t n = 1;
    Angle theta;
    bool phase_corrected = true;
};

// Phase e^{i theta (n - 2|x|)} on the |1> branch of `phase`.
inline void emit_cm(QubitCircuit &c, uint32_t phase, const std::vector<uint32_t> &data, Angle theta, bool corrected) {
    emit_fanout(c, phase, data);
    for (uint32_t q : data) c.zrot(q, theta);
    emit_fanout(c, phase, data);
    if (corrected)
        for (uint32_t q : data) c.zrot(q, -theta);
}

// Wire 0 is the phase wire, wires 1..n the data.
inline QubitCircuit synth_cm(const CMSpec &spec) {
    if (spec.n < 1) throw std::invalid_argument("C-M needs n >= 1");
    QubitCircuit c(spec.n + 1);
    std::vector<uint32_t> data(spec.n);
    for (uint32_t i = 0; i < spec.n; ++i) data[i] = i + 1;
    emit_cm(c, 0, data, spec.theta, spec.phase_corrected);
    return c;
}

inline uint32_t hamming_outputs(uint64_t n) { return ceil_log2(n + 1); }

// Writes popcount(inputs) onto `outputs` (outputs[0] most significant).
// Stages are separated by barriers: preparation, one C-M per output wire,
// then the inverse QFT. The per-stage phase corrections of the C-M gates
// are diagonal on the inputs and are merged into one rotation per input,
// placed in the final stage.
inline void emit_hamming_weight(QubitCircuit &c, const std::vector<uint32_t> &outputs,
                                const std::vector<uint32_t> &inputs) {
    const uint32_t m = static_cast<uint32_t>(outputs.size());
    const uint64_t n = inputs.size();
    if (n < 1 || m != hamming_outputs(n)) throw std::invalid_argument("output register size must be ceil(log2(n+1))");
    if (m + 2 > 62) throw std::invalid_argument("register too large for exact angles");
    for (uint32_t j = 1; j <= m; ++j) {
        const int64_t den = int64_t{1} << (m - j + 2);
        c.h(outputs[j - 1]);
        c.zrot(outputs[j - 1], Angle(static_cast<int64_t>(2 * (n % static_cast<uint64_t>(den))), den));
    }
    Angle correction;
    for (uint32_t j = m; j >= 1; --j) {
        const Angle theta(-2, int64_t{1} << (m - j + 2));
        c.barrier();
        emit_cm(c, outputs[j - 1], inputs, theta, false);
        correction = correction + (-theta);
    }
    c.barrier();
    emit_iqft(c, outputs);
    for (uint32_t q : inputs) c.zrot(q, correction);
}

// Layout: m output wires, then n input wires.
inline QubitCircuit synth_hamming_weight(uint32_t n) {
    if (n < 1) throw std::invalid_argument("Hamming weight needs n >= 1");
    const uint32_t m = hamming_outputs(n);
    QubitCircuit c(m + n);
    std::vector<uint32_t> out(m), in(n);
    for (uint32_t i = 0; i < m; ++i) {
        out[i] = i;
        c.set_role(i, Role::Output);
    }
    for (uint32_t i = 0; i < n; ++i) in[i] = m + i;
    emit_hamming_weight(c, out, in);
    return c;
}

// Layout: m output wires, then x (n wires), then y (n wires).
inline QubitCircuit synth_hamming_distance(uint32_t n) {
    if (n < 1) throw std::invalid_argument("Hamming distance needs n >= 1");
    const uint32_t m = hamming_outputs(n);
    QubitCircuit c(m + 2 * n);
    std::vector<uint32_t> out(m), y(n);
    for (uint32_t i = 0; i < m; ++i) {
        out[i] = i;
        c.set_role(i, Role::Output);
    }
    for (uint32_t i = 0; i < n; ++i) y[i] = m + n + i;
    for (uint32_t i = 0; i < n; ++i) c.cx(m + i, y[i]);
    c.barrier();
    emit_hamming_weight(c, out, y);
    c.barrier();
    for (uint32_t i = 0; i < n; ++i) c.cx(m + i, y[i]);
    return c;
}

}  // namespace symfn
