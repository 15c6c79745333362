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
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "circuit.hpp"
#include "primitives.hpp"

namespace symfn {

// Entry x holds f(x), with bit k-1 of x giving x_k.
struct TruthTable {
    uint32_t n = 0;
    std::vector<uint8_t> bits;

    TruthTable() = default;
    explicit TruthTable(uint32_t arity) : n(arity), bits(size_t{1} << arity, 0) {}
};

// coeffs[j] multiplies the monomial of the variables set in j.
struct AnfForm {
    uint32_t n = 0;
    std::vector<uint8_t> coeffs;
};

inline AnfForm anf_from_truth_table(const TruthTable &tt) {
    if (tt.bits.size() != (size_t{1} << tt.n)) throw std::invalid_argument("truth table length must be 2^n");
    AnfForm a{tt.n, tt.bits};
    for (auto &b : a.coeffs) b &= 1;
    for (uint32_t i = 0; i < tt.n; ++i) {
        const size_t bit = size_t{1} << i;
        for (size_t j = 0; j < a.coeffs.size(); ++j)
            if (j & bit) a.coeffs[j] ^= a.coeffs[j ^ bit];
    }
    return a;
}

inline uint8_t evaluate(const AnfForm &a, uint64_t x) {
    uint8_t r = 0;
    for (size_t j = 0; j < a.coeffs.size(); ++j)
        if (a.coeffs[j] && (j & x) == j) r ^= 1;
    return r;
}

inline size_t higher_order_count(uint32_t k) { return (size_t{1} << k) - k - 1; }

// Ancilla slot of a monomial with at least two variables: its rank among
// such monomials in increasing index order.
inline size_t monomial_slot(uint64_t j) {
    size_t below = 0;
    for (uint64_t i = 0; i < j; ++i)
        if (std::popcount(i) >= 2) ++below;
    return below;
}

namespace detail {

inline std::vector<size_t> slot_table(uint32_t k) {
    std::vector<size_t> slot(size_t{1} << k, SIZE_MAX);
    size_t r = 0;
    for (size_t j = 0; j < slot.size(); ++j)
        if (std::popcount(j) >= 2) slot[j] = r++;
    return slot;
}

inline void emit_g_rec(QubitCircuit &c, const std::vector<uint32_t> &x, const std::vector<uint32_t> &anc,
                       const std::vector<size_t> &slot, uint32_t k) {
    if (k == 2) {
        emit_shared_control_toffoli(c, x[1], {{x[0], anc[slot[3]]}});
        return;
    }
    const uint32_t K = k - 1;
    const size_t top = size_t{1} << K;
    std::vector<std::pair<uint32_t, uint32_t>> left;
    for (size_t s = 0; s < top; ++s)
        if (std::popcount(s) >= 2) left.push_back({anc[slot[s]], anc[slot[s | top]]});
    emit_shared_control_toffoli(c, x[K], left);
    emit_g_rec(c, x, anc, slot, K);
    std::vector<std::pair<uint32_t, uint32_t>> right;
    for (uint32_t i = 0; i < K; ++i) right.push_back({x[i], anc[slot[(size_t{1} << i) | top]]});
    for (size_t i = left.size(); i-- > 0;) right.push_back(left[i]);
    emit_shared_control_toffoli(c, x[K], right);
}

}  // namespace detail

// XORs every monomial of degree >= 2 onto its ancilla.
inline void emit_g(QubitCircuit &c, const std::vector<uint32_t> &x, const std::vector<uint32_t> &anc) {
    const uint32_t k = static_cast<uint32_t>(x.size());
    if (k < 2) throw std::invalid_argument("G_k needs k >= 2");
    if (anc.size() != higher_order_count(k)) throw std::invalid_argument("G_k needs exactly 2^k-k-1 ancillas");
    detail::emit_g_rec(c, x, anc, detail::slot_table(k), k);
}

// Layout: k inputs, then 2^k-k-1 borrowed ancillas.
inline QubitCircuit synth_g(uint32_t k) {
    if (k < 2) throw std::invalid_argument("G_k needs k >= 2");
    const size_t a = higher_order_count(k);
    QubitCircuit c(k + a);
    std::vector<uint32_t> x(k), anc(a);
    for (uint32_t i = 0; i < k; ++i) x[i] = i;
    for (size_t i = 0; i < a; ++i) {
        anc[i] = static_cast<uint32_t>(k + i);
        c.set_role(k + i, Role::Borrowed);
    }
    emit_g(c, x, anc);
    return c;
}

// t ^= f(x) with borrowed ancillas restored. By default the ancilla parity
// is taken both before and after G_n; `fused` merges the linear terms into
// the first ancilla fan-in.
inline void emit_boolean(QubitCircuit &c, const AnfForm &anf, const std::vector<uint32_t> &x, uint32_t target,
                         const std::vector<uint32_t> &borrowed, bool fused = false) {
    const uint32_t n = anf.n;
    if (x.size() != n || anf.coeffs.size() != (size_t{1} << n)) throw std::invalid_argument("arity mismatch");
    std::vector<uint32_t> linear;
    for (uint32_t i = 0; i < n; ++i)
        if (anf.coeffs[size_t{1} << i]) linear.push_back(x[i]);
    std::vector<size_t> higher;
    for (size_t j = 0; j < anf.coeffs.size(); ++j)
        if (anf.coeffs[j] && std::popcount(j) >= 2) higher.push_back(j);

    if (higher.empty()) {
        if (!linear.empty()) emit_parity_fanin(c, linear, target);
    } else {
        const size_t a = higher_order_count(n);
        if (borrowed.size() < a) throw std::invalid_argument("insufficient borrowed ancillas");
        std::vector<uint32_t> anc(borrowed.begin(), borrowed.begin() + a);
        const auto slot = detail::slot_table(n);
        std::vector<uint32_t> sel;
        for (size_t j : higher) sel.push_back(anc[slot[j]]);
        QubitCircuit g(c.width());
        emit_g(g, x, anc);
        if (fused) {
            std::vector<uint32_t> first(linear);
            first.insert(first.end(), sel.begin(), sel.end());
            emit_parity_fanin(c, first, target);
        } else {
            if (!linear.empty()) emit_parity_fanin(c, linear, target);
            emit_parity_fanin(c, sel, target);
        }
        compose_into(c, g);
        emit_parity_fanin(c, sel, target);
        compose_into(c, inverse(g));
    }
    if (anf.coeffs[0]) c.x(target);
}

// Layout: n inputs, 2^n-n-1 borrowed ancillas, target.
inline QubitCircuit synth_boolean(const AnfForm &anf, bool fused = false) {
    const uint32_t n = anf.n;
    const size_t a = n >= 2 ? higher_order_count(n) : 0;
    QubitCircuit c(n + a + 1);
    std::vector<uint32_t> x(n), anc(a);
    for (uint32_t i = 0; i < n; ++i) x[i] = i;
    for (size_t i = 0; i < a; ++i) {
        anc[i] = static_cast<uint32_t>(n + i);
        c.set_role(n + i, Role::Borrowed);
    }
    const uint32_t t = static_cast<uint32_t>(n + a);
    c.set_role(t, Role::Target);
    emit_boolean(c, anf, x, t, anc, fused);
    return c;
}

}  // namespace symfn
