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

#include <algorithm>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "esop.hpp"
#include "qutrit.hpp"
#include "qutrit_circuit.hpp"
#include "symmetric.hpp"

namespace symfn {

// Q[i] holds the wires whose value contributes 2^i to the weight.
struct CountingState {
    uint32_t t = 0;
    std::vector<std::vector<uint32_t>> Q;
    size_t layers = 0;
};

struct AlmostCounting {
    QutritCircuit circuit;
    CountingState state;
    // Gate-list length and Q sets after each layer.
    std::vector<size_t> layer_ends;
    std::vector<std::vector<std::vector<uint32_t>>> snapshots;
};

inline AlmostCounting almost_counting(uint32_t n, size_t width = 0) {
    if (n < 1) throw std::invalid_argument("counting needs n >= 1");
    AlmostCounting r;
    r.circuit = QutritCircuit(std::max<size_t>(width, n));
    CountingState &st = r.state;
    st.t = hamming_outputs(n) - 1;
    st.Q.assign(st.t + 1, {});
    for (uint32_t i = 0; i < n; ++i) st.Q[0].push_back(i);
    auto wide = [&] {
        for (const auto &q : st.Q)
            if (q.size() >= 3) return true;
        return false;
    };
    while (wide()) {
        std::vector<std::vector<uint32_t>> M(st.t);
        bool progress = false;
        for (uint32_t i = 0; i < st.t; ++i) {
            // Triples within one round are disjoint, so a round is one layer.
            auto &q = st.Q[i];
            std::sort(q.begin(), q.end());
            std::vector<uint32_t> keep;
            size_t j = 0;
            for (; j + 3 <= q.size(); j += 3) {
                emit_qutrit_full_adder(r.circuit, q[j], q[j + 1], q[j + 2]);
                keep.push_back(q[j]);
                M[i].push_back(q[j + 1]);
                progress = true;
            }
            keep.insert(keep.end(), q.begin() + j, q.end());
            q.swap(keep);
        }
        if (!progress) throw std::logic_error("counting stalled at the top level");
        for (uint32_t i = 0; i < st.t; ++i) {
            auto &q = st.Q[i + 1];
            q.insert(q.end(), M[i].begin(), M[i].end());
            std::sort(q.begin(), q.end());
        }
        ++st.layers;
        r.layer_ends.push_back(r.circuit.size());
        r.snapshots.push_back(st.Q);
    }
    return r;
}

struct Refinement {
    QutritCircuit circuit;
    // One wire per bit level, least significant first.
    std::vector<uint32_t> designated;
};

// Ripple pass collapsing each level to one wire; the top carry is copied
// onto the clean ancilla and the chain is then uncomputed.
inline Refinement refine(const CountingState &st, uint32_t ancilla, size_t width) {
    Refinement r;
    r.circuit = QutritCircuit(std::max<size_t>(width, ancilla + 1));
    r.designated.assign(st.t + 1, UINT32_MAX);
    struct Step {
        int kind;  // 0: 2AND, 1: 3MAJ
        uint32_t w[3];
    };
    std::vector<Step> steps;
    bool have_carry = false;
    uint32_t carry = 0;
    bool done = false;
    for (uint32_t i = 0; i <= st.t; ++i) {
        std::vector<uint32_t> ws;
        if (have_carry) ws.push_back(carry);
        ws.insert(ws.end(), st.Q[i].begin(), st.Q[i].end());
        if (done) {
            if (!ws.empty()) throw std::logic_error("counting state has a gap");
            continue;
        }
        if (ws.size() > 3 || st.Q[i].size() > 2) throw std::logic_error("counting state not reduced");
        if (ws.empty()) {
            done = true;
        } else if (ws.size() == 1 && !have_carry) {
            r.designated[i] = ws[0];
        } else if (ws.size() == 1) {
            r.circuit.ctrl(carry, 1, QOp::X01, ancilla);
            r.designated[i] = ancilla;
            have_carry = false;
            done = true;
        } else if (ws.size() == 2) {
            emit_2and(r.circuit, ws[0], ws[1]);
            steps.push_back({0, {ws[0], ws[1], 0}});
            r.designated[i] = ws[1];
            have_carry = true;
            carry = ws[1];
        } else {
            emit_3maj(r.circuit, ws[0], ws[1], ws[2]);
            steps.push_back({1, {ws[0], ws[1], ws[2]}});
            r.designated[i] = ws[1];
            have_carry = true;
            carry = ws[2];
        }
    }
    if (have_carry) throw std::logic_error("carry beyond the top level");
    for (size_t s = steps.size(); s-- > 0;) {
        const Step &p = steps[s];
        if (p.kind == 0) {
            emit_2uap(r.circuit, p.w[0], p.w[1]);
        } else {
            emit_3uma(r.circuit, p.w[0], p.w[1], p.w[2]);
        }
    }
    for (uint32_t i = 0; i <= st.t; ++i)
        if (r.designated[i] == UINT32_MAX) throw std::logic_error("bit level without a wire");
    return r;
}

struct QutritHamming {
    QutritCircuit circuit;
    std::vector<uint32_t> designated;
    size_t layers = 0;
    uint32_t ancilla = 0;
};

// Layout: n inputs, then the clean ancilla. The ancilla receives the msb
// whenever refinement carries into the top level; for n = 2^k - 1 counting
// alone finishes the job and the ancilla is never touched.
inline QutritHamming synth_hamming_qutrit(uint32_t n) {
    QutritHamming h;
    h.ancilla = n;
    AlmostCounting ac = almost_counting(n, n + 1);
    Refinement rf = refine(ac.state, n, n + 1);
    h.circuit = ac.circuit;
    h.circuit.extend(rf.circuit);
    h.circuit.set_role(n, Role::Clean);
    h.designated = rf.designated;
    h.layers = ac.state.layers;
    return h;
}

// coeffs[S] in {0,1,2}; f(x) = sum_S coeffs[S] prod_{i in S} x_i mod 3.
struct F3Poly {
    uint32_t n = 0;
    std::vector<uint8_t> coeffs;
};

// Accepts values in {0,1,2}.
inline F3Poly f3_from_values(uint32_t n, const std::vector<uint8_t> &values) {
    if (values.size() != (size_t{1} << n)) throw std::invalid_argument("table length must be 2^n");
    F3Poly p{n, values};
    for (auto &v : p.coeffs) v %= 3;
    for (uint32_t i = 0; i < n; ++i) {
        const size_t bit = size_t{1} << i;
        for (size_t j = 0; j < p.coeffs.size(); ++j)
            if (j & bit) p.coeffs[j] = static_cast<uint8_t>((p.coeffs[j] + 3 - p.coeffs[j ^ bit]) % 3);
    }
    return p;
}

inline F3Poly f3_from_truth_table(const TruthTable &tt) { return f3_from_values(tt.n, tt.bits); }

inline uint8_t evaluate(const F3Poly &p, uint64_t x) {
    unsigned s = 0;
    for (size_t j = 0; j < p.coeffs.size(); ++j)
        if ((j & x) == j) s += p.coeffs[j];
    return static_cast<uint8_t>(s % 3);
}

namespace detail {

inline std::vector<uint32_t> helpers_excluding(const std::vector<uint32_t> &spares,
                                               const std::vector<std::pair<uint32_t, uint32_t>> &pairs,
                                               uint32_t shared) {
    std::vector<uint32_t> r;
    for (uint32_t w : spares) {
        bool used = w == shared;
        for (const auto &p : pairs) used = used || p.first == w || p.second == w;
        if (!used) r.push_back(w);
    }
    return r;
}

inline void shared_block(QutritCircuit &q, uint32_t shared, const std::vector<std::pair<uint32_t, uint32_t>> &pairs,
                         QOp op, uint8_t value, const std::vector<uint32_t> &spares) {
    emit_shared_control_qutrit(q, shared, pairs, op, helpers_excluding(spares, pairs, shared), value);
}

inline void emit_g_qutrit_rec(QutritCircuit &q, const std::vector<uint32_t> &x, const std::vector<uint32_t> &anc,
                              const std::vector<size_t> &slot, uint32_t k, const std::vector<uint32_t> &spares) {
    if (k == 2) {
        q.ctrl2(x[0], 1, x[1], 1, QOp::Xp1, anc[slot[3]]);
        return;
    }
    const uint32_t K = k - 1;
    const size_t top = size_t{1} << K;
    std::vector<std::pair<uint32_t, uint32_t>> prods;
    for (size_t s = 0; s < top; ++s)
        if (std::popcount(s) >= 2) prods.push_back({anc[slot[s]], anc[slot[s | top]]});
    // a_{S+x_k} -= x_k * a_S
    shared_block(q, x[K], prods, QOp::Xm1, 1, spares);
    shared_block(q, x[K], prods, QOp::Xp1, 2, spares);
    emit_g_qutrit_rec(q, x, anc, slot, K, spares);
    // a_{S+x_k} += x_k * a_S, a_{i,k} += x_k * x_i
    std::vector<std::pair<uint32_t, uint32_t>> ones;
    for (uint32_t i = 0; i < K; ++i) ones.push_back({x[i], anc[slot[(size_t{1} << i) | top]]});
    ones.insert(ones.end(), prods.begin(), prods.end());
    shared_block(q, x[K], ones, QOp::Xp1, 1, spares);
    shared_block(q, x[K], prods, QOp::Xm1, 2, spares);
}

// t += c * (sum of wires) via a pairwise summation tree that is undone afterwards.
inline void emit_sum_into(QutritCircuit &q, const std::vector<uint32_t> &ws, uint32_t t, int c) {
    std::vector<std::pair<uint32_t, uint32_t>> ops;
    std::vector<uint32_t> cur(ws);
    while (cur.size() > 1) {
        std::vector<uint32_t> next;
        for (size_t i = 0; i + 1 < cur.size(); i += 2) {
            emit_qutrit_add(q, cur[i], cur[i + 1]);
            ops.push_back({cur[i], cur[i + 1]});
            next.push_back(cur[i + 1]);
        }
        if (cur.size() % 2) next.push_back(cur.back());
        cur.swap(next);
    }
    for (int i = 0; i < c; ++i) emit_qutrit_add(q, cur[0], t);
    for (size_t i = ops.size(); i-- > 0;) emit_qutrit_sub(q, ops[i].first, ops[i].second);
}

}  // namespace detail

// Adds every monomial of degree >= 2 onto its ancilla (mod 3). Spare wires,
// if given, are used as helpers for the shared-control blocks.
inline void emit_g_qutrit(QutritCircuit &q, const std::vector<uint32_t> &x, const std::vector<uint32_t> &anc,
                          const std::vector<uint32_t> &spares = {}) {
    const uint32_t k = static_cast<uint32_t>(x.size());
    if (k < 2) throw std::invalid_argument("G_k needs k >= 2");
    if (anc.size() != higher_order_count(k)) throw std::invalid_argument("G_k needs exactly 2^k-k-1 ancillas");
    detail::emit_g_qutrit_rec(q, x, anc, detail::slot_table(k), k, spares);
}

// t += f(x) mod 3 with borrowed qutrits restored.
inline void emit_boolean_qutrit(QutritCircuit &q, const F3Poly &p, const std::vector<uint32_t> &x, uint32_t target,
                                const std::vector<uint32_t> &borrowed, const std::vector<uint32_t> &spares = {}) {
    const uint32_t n = p.n;
    if (x.size() != n || p.coeffs.size() != (size_t{1} << n)) throw std::invalid_argument("arity mismatch");
    for (uint32_t i = 0; i < n; ++i) {
        for (int r = 0; r < p.coeffs[size_t{1} << i]; ++r) emit_qutrit_add(q, x[i], target);
    }
    bool higher = false;
    for (size_t j = 0; j < p.coeffs.size(); ++j) higher = higher || (p.coeffs[j] && std::popcount(j) >= 2);
    if (higher) {
        const size_t a = higher_order_count(n);
        if (borrowed.size() < a) throw std::invalid_argument("insufficient borrowed qutrits");
        std::vector<uint32_t> anc(borrowed.begin(), borrowed.begin() + a);
        const auto slot = detail::slot_table(n);
        QutritCircuit g(q.width());
        emit_g_qutrit(g, x, anc, spares);
        const QutritCircuit gi = inverse(g);
        for (int pass = 1; pass <= 2; ++pass) {
            std::vector<uint32_t> sel;
            for (size_t j = 0; j < p.coeffs.size(); ++j)
                if (std::popcount(j) >= 2 && p.coeffs[j] >= pass) sel.push_back(anc[slot[j]]);
            if (sel.empty()) continue;
            detail::emit_sum_into(q, sel, target, 2);
            q.extend(g);
            detail::emit_sum_into(q, sel, target, 1);
            q.extend(gi);
        }
    }
    for (int r = 0; r < p.coeffs[0]; ++r) q.gate(QOp::Xp1, target);
}

// Layout: n inputs, 2^n-n-1 borrowed qutrits, target.
inline QutritCircuit synth_boolean_qutrit(const F3Poly &p) {
    const uint32_t n = p.n;
    const size_t a = n >= 2 ? higher_order_count(n) : 0;
    QutritCircuit q(n + a + 1);
    std::vector<uint32_t> x(n), anc(a);
    for (uint32_t i = 0; i < n; ++i) x[i] = i;
    for (size_t i = 0; i < a; ++i) {
        anc[i] = static_cast<uint32_t>(n + i);
        q.set_role(n + i, Role::Borrowed);
    }
    const uint32_t t = static_cast<uint32_t>(n + a);
    q.set_role(t, Role::Target);
    emit_boolean_qutrit(q, p, x, t, anc);
    return q;
}

struct QutritSymmetric {
    QutritCircuit circuit;
    std::vector<uint32_t> designated;
    uint32_t ancilla = 0;
    uint32_t target = 0;
    uint32_t helper = 0;
};

// Layout: n inputs, clean ancilla, target. The weight split is taken over
// F3: g(w) = g0(w') + msb(w) * g1(w') with g1 = g(hi) - g(lo) mod 3.
inline QutritSymmetric synth_symmetric_qutrit(const SymmetricSpec &spec, bool mirror_uncompute = false) {
    validate(spec);
    const uint32_t n = spec.n;
    if (n < 2) throw std::invalid_argument("qutrit symmetric synthesis needs n >= 2");
    QutritSymmetric r;
    QutritHamming hw = synth_hamming_qutrit(n);
    r.ancilla = n;
    r.target = n + 1;
    r.designated = hw.designated;
    QutritCircuit &q = r.circuit;
    q = QutritCircuit(n + 2);
    q.set_role(n, Role::Clean);
    q.set_role(n + 1, Role::Target);
    q.extend(hw.circuit);

    const TruthTable g = g_from_spec(spec);
    const uint32_t m = g.n;
    const size_t half = size_t{1} << (m - 1);
    std::vector<uint8_t> g0(half), g1(half);
    for (size_t w = 0; w < half; ++w) {
        g0[w] = g.bits[w];
        g1[w] = static_cast<uint8_t>((g.bits[half + w] + 3 - g.bits[w]) % 3);
    }
    const F3Poly p0 = f3_from_values(m - 1, g0), p1 = f3_from_values(m - 1, g1);

    const uint32_t msb = hw.designated[m - 1];
    std::vector<uint32_t> low(hw.designated.begin(), hw.designated.begin() + (m - 1));
    std::vector<uint32_t> free;
    for (uint32_t i = 0; i < n; ++i)
        if (std::find(hw.designated.begin(), hw.designated.end(), i) == hw.designated.end()) free.push_back(i);
    if (free.empty()) throw std::logic_error("no input wire available as helper");
    const uint32_t a = free.back();
    free.pop_back();
    r.helper = a;
    const size_t need = m - 1 >= 2 ? higher_order_count(m - 1) : 0;
    if (free.size() < need) throw std::logic_error("not enough input wires to borrow");
    std::vector<uint32_t> borrowed(free.begin(), free.begin() + need);
    std::vector<uint32_t> spares(free.begin() + need, free.end());
    const uint32_t t = r.target;

    QutritCircuit u1(q.width());
    emit_boolean_qutrit(u1, p1, low, a, borrowed, spares);
    emit_boolean_qutrit(q, p0, low, t, borrowed, spares);
    q.ctrl2(msb, 1, a, 1, QOp::Xm1, t);
    q.ctrl2(msb, 1, a, 2, QOp::Xp1, t);
    q.extend(u1);
    q.ctrl2(msb, 1, a, 1, QOp::Xp1, t);
    q.ctrl2(msb, 1, a, 2, QOp::Xm1, t);
    q.extend(inverse(u1));
    if (mirror_uncompute) q.extend(inverse(hw.circuit));
    return r;
}

}  // namespace symfn
