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
#include <string>
#include <vector>

#include "circuit.hpp"
#include "esop.hpp"
#include "hamming.hpp"
#include "primitives.hpp"

namespace symfn {

// f(x) = values[popcount(x)].
struct SymmetricSpec {
    uint32_t n = 0;
    std::vector<uint8_t> values;
};

struct SplitG {
    uint32_t m = 0;
    TruthTable g0, g1;
};

inline void validate(const SymmetricSpec &s) {
    if (s.values.size() != s.n + 1) throw std::invalid_argument("values must have n+1 entries");
    for (uint8_t v : s.values)
        if (v > 1) throw std::invalid_argument("values must be 0/1");
}

// Named families: majority, parity, threshold:k, exact:k, mod:k.
inline SymmetricSpec preset_spec(const std::string &name, uint32_t n) {
    SymmetricSpec s{n, std::vector<uint8_t>(n + 1, 0)};
    auto arg = [&](const std::string &prefix) -> long {
        std::string rest = name.substr(prefix.size());
        size_t pos = 0;
        long k = std::stol(rest, &pos);
        if (pos != rest.size() || k < 0) throw std::invalid_argument("bad preset argument: " + name);
        return k;
    };
    for (uint32_t w = 0; w <= n; ++w) {
        if (name == "majority") {
            s.values[w] = 2 * w > n;
        } else if (name == "parity") {
            s.values[w] = w & 1;
        } else if (name.rfind("threshold:", 0) == 0) {
            s.values[w] = w >= static_cast<uint32_t>(arg("threshold:"));
        } else if (name.rfind("exact:", 0) == 0) {
            s.values[w] = w == static_cast<uint32_t>(arg("exact:"));
        } else if (name.rfind("mod:", 0) == 0) {
            long k = arg("mod:");
            if (k == 0) throw std::invalid_argument("mod:0 is undefined");
            s.values[w] = w % k == 0;
        } else {
            throw std::invalid_argument("unknown function preset: " + name);
        }
    }
    return s;
}

// g(w) = values[w] for w <= n, zero above.
inline TruthTable g_from_spec(const SymmetricSpec &s) {
    validate(s);
    TruthTable g(hamming_outputs(s.n));
    for (uint32_t w = 0; w <= s.n; ++w) g.bits[w] = s.values[w];
    return g;
}

inline SplitG split_g(const TruthTable &g) {
    if (g.n < 2) throw std::invalid_argument("split needs arity >= 2");
    SplitG r{g.n, TruthTable(g.n - 1), TruthTable(g.n - 1)};
    const size_t half = size_t{1} << (g.n - 1);
    for (size_t w = 0; w < half; ++w) {
        r.g0.bits[w] = g.bits[w];
        r.g1.bits[w] = g.bits[w] ^ g.bits[half + w];
    }
    return r;
}

namespace detail {

inline QubitCircuit symmetric_frame(uint32_t n, uint32_t m, std::vector<uint32_t> &in, std::vector<uint32_t> &anc,
                                    uint32_t &t) {
    QubitCircuit c(n + m + 1);
    in.resize(n);
    anc.resize(m);
    for (uint32_t i = 0; i < n; ++i) in[i] = i;
    for (uint32_t i = 0; i < m; ++i) {
        anc[i] = n + i;
        c.set_role(n + i, Role::Clean);
    }
    t = n + m;
    c.set_role(t, Role::Target);
    return c;
}

}  // namespace detail

// Layout: n inputs, m = ceil(log2(n+1)) clean ancillas (first is the most
// significant weight bit), target.
inline QubitCircuit synth_symmetric(const SymmetricSpec &spec, bool fused = false) {
    validate(spec);
    const uint32_t n = spec.n;
    if (n < 1) throw std::invalid_argument("symmetric synthesis needs n >= 1");
    const uint32_t m = hamming_outputs(n);
    std::vector<uint32_t> in, anc;
    uint32_t t;
    QubitCircuit c = detail::symmetric_frame(n, m, in, anc, t);
    if (n == 1) {
        if (spec.values[0] ^ spec.values[1]) c.cx(in[0], t);
        if (spec.values[0]) c.x(t);
        return c;
    }
    const SplitG sg = split_g(g_from_spec(spec));
    const uint32_t a = in[n - 1];
    const std::vector<uint32_t> borrowed(in.begin(), in.end() - 1);
    if (sg.m >= 3 && borrowed.size() < higher_order_count(sg.m - 1))
        throw std::logic_error("not enough input wires to borrow");
    std::vector<uint32_t> low(m - 1);
    for (uint32_t i = 0; i + 1 < m; ++i) low[i] = anc[m - 1 - i];

    QubitCircuit cn(c.width());
    emit_hamming_weight(cn, anc, in);
    const AnfForm a0 = anf_from_truth_table(sg.g0), a1 = anf_from_truth_table(sg.g1);
    QubitCircuit u1(c.width());
    emit_boolean(u1, a1, low, a, borrowed, fused);

    compose_into(c, cn);
    emit_boolean(c, a0, low, t, borrowed, fused);
    emit_toffoli(c, anc[0], a, t);
    compose_into(c, u1);
    emit_toffoli(c, anc[0], a, t);
    compose_into(c, u1);
    compose_into(c, inverse(cn));
    return c;
}

inline bool is_mersenne(uint32_t n) { return n >= 1 && ((n + 1) & n) == 0; }

// For n = 2^k - 1 the majority is the top weight bit; otherwise the generic path.
inline QubitCircuit synth_majority(uint32_t n) {
    if (!is_mersenne(n)) return synth_symmetric(preset_spec("majority", n));
    const uint32_t m = hamming_outputs(n);
    std::vector<uint32_t> in, anc;
    uint32_t t;
    QubitCircuit c = detail::symmetric_frame(n, m, in, anc, t);
    QubitCircuit cn(c.width());
    emit_hamming_weight(cn, anc, in);
    compose_into(c, cn);
    c.cx(anc[0], t);
    compose_into(c, inverse(cn));
    return c;
}

}  // namespace symfn
