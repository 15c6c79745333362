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
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "primitives.hpp"
#include "qutrit_circuit.hpp"

namespace symfn {

namespace detail {

inline QutritCircuit qutrit_frame(std::vector<uint32_t> ws) {
    require_distinct(ws);
    return QutritCircuit(*std::max_element(ws.begin(), ws.end()) + 1);
}

}  // namespace detail

// Full adder on {0,1} inputs: a -> a^b^c, b -> maj(a,b,c), c -> garbage
// (2 if b == c, 0 for (b,c) = (0,1), 1 for (b,c) = (1,0)).
inline void emit_qutrit_full_adder(QutritCircuit &q, uint32_t a, uint32_t b, uint32_t c) {
    q.ctrl(b, 0, QOp::Xm1, c);
    q.ctrl(b, 1, QOp::Xp1, c);
    q.ctrl2(a, 0, c, 1, QOp::Xm1, b);
    q.ctrl2(a, 1, c, 0, QOp::Xp1, b);
    q.gate(QOp::X01, a);
    q.ctrl(c, 2, QOp::X01, a);
}

inline QutritCircuit synth_qutrit_full_adder(uint32_t a, uint32_t b, uint32_t c) {
    QutritCircuit q = detail::qutrit_frame({a, b, c});
    emit_qutrit_full_adder(q, a, b, c);
    return q;
}

// a -> (2a + b) mod 3, b -> a & b.
inline void emit_2and(QutritCircuit &q, uint32_t a, uint32_t b) {
    q.gate(QOp::X12, a);
    q.ctrl(b, 1, QOp::Xp1, a);
    q.ctrl(a, 1, QOp::Xm1, b);
}

// Undoes 2AND, then b -> a ^ b.
inline void emit_2uap(QutritCircuit &q, uint32_t a, uint32_t b) {
    q.ctrl(a, 1, QOp::Xp1, b);
    q.ctrl(b, 1, QOp::Xm1, a);
    q.gate(QOp::X12, a);
    q.ctrl(a, 1, QOp::X01, b);
}

inline QutritCircuit synth_2and(uint32_t a, uint32_t b) {
    QutritCircuit q = detail::qutrit_frame({a, b});
    emit_2and(q, a, b);
    return q;
}

inline QutritCircuit synth_2uap(uint32_t a, uint32_t b) {
    QutritCircuit q = detail::qutrit_frame({a, b});
    emit_2uap(q, a, b);
    return q;
}

namespace detail {

// c ^= a & b for a, b, c in {0,1}; b is lifted to 2 only while both are set.
inline void emit_qutrit_ccx(QutritCircuit &q, uint32_t a, uint32_t b, uint32_t c) {
    q.ctrl(a, 1, QOp::Xp1, b);
    q.ctrl(b, 2, QOp::X01, c);
    q.ctrl(a, 1, QOp::Xm1, b);
}

}  // namespace detail

// (a, b, c) -> (a^c, b^c, maj(a,b,c)).
inline void emit_3maj(QutritCircuit &q, uint32_t a, uint32_t b, uint32_t c) {
    q.ctrl(c, 1, QOp::X01, a);
    q.ctrl(c, 1, QOp::X01, b);
    detail::emit_qutrit_ccx(q, a, b, c);
}

// (a^c, b^c, maj) -> (a, a^b^c, c).
inline void emit_3uma(QutritCircuit &q, uint32_t a, uint32_t b, uint32_t c) {
    detail::emit_qutrit_ccx(q, a, b, c);
    q.ctrl(c, 1, QOp::X01, a);
    q.ctrl(a, 1, QOp::X01, b);
}

inline QutritCircuit synth_3maj(uint32_t a, uint32_t b, uint32_t c) {
    QutritCircuit q = detail::qutrit_frame({a, b, c});
    emit_3maj(q, a, b, c);
    return q;
}

inline QutritCircuit synth_3uma(uint32_t a, uint32_t b, uint32_t c) {
    QutritCircuit q = detail::qutrit_frame({a, b, c});
    emit_3uma(q, a, b, c);
    return q;
}

// y += x (mod 3) and its inverse.
inline void emit_qutrit_add(QutritCircuit &q, uint32_t x, uint32_t y) {
    q.ctrl(x, 1, QOp::Xp1, y);
    q.ctrl(x, 2, QOp::Xm1, y);
}

inline void emit_qutrit_sub(QutritCircuit &q, uint32_t x, uint32_t y) {
    q.ctrl(x, 1, QOp::Xm1, y);
    q.ctrl(x, 2, QOp::Xp1, y);
}

namespace detail {

inline void qutrit_cascade_step(QutritCircuit &q, const std::vector<uint32_t> &b, uint32_t s, bool add) {
    const size_t n = b.size();
    const size_t stride = size_t{1} << s, jump = size_t{1} << (s - 1);
    for (size_t i = 1; i + jump <= n; i += stride) {
        if (add) {
            emit_qutrit_add(q, b[i - 1], b[i + jump - 1]);
        } else {
            emit_qutrit_sub(q, b[i - 1], b[i + jump - 1]);
        }
    }
}

}  // namespace detail

// If control is 1, every target moves by +1 (direction > 0) or -1.
// Differences down the cascade, one increment on the first target, then the
// mirrored cascade adding back.
inline void emit_qutrit_fanout(QutritCircuit &q, uint32_t control, const std::vector<uint32_t> &targets, int direction) {
    if (targets.empty()) throw std::invalid_argument("fan-out needs at least one target");
    const uint32_t L = ceil_log2(targets.size());
    for (uint32_t s = 1; s <= L; ++s) detail::qutrit_cascade_step(q, targets, s, false);
    q.ctrl(control, 1, direction > 0 ? QOp::Xp1 : QOp::Xm1, targets[0]);
    for (uint32_t s = L; s >= 1; --s) detail::qutrit_cascade_step(q, targets, s, true);
}

inline QutritCircuit synth_qutrit_fanout(uint32_t control, const std::vector<uint32_t> &targets, int direction) {
    std::vector<uint32_t> all(targets);
    all.push_back(control);
    QutritCircuit q = detail::qutrit_frame(all);
    emit_qutrit_fanout(q, control, targets, direction);
    return q;
}

// For each pair (c, t): t -> op(t) when shared = 1 and c = value.
// With one helper wire per pair the helpers take a copy of the shared
// control by fan-out and are restored afterwards; otherwise the gates are
// emitted one after another.
inline void emit_shared_control_qutrit(QutritCircuit &q, uint32_t shared,
                                       const std::vector<std::pair<uint32_t, uint32_t>> &pairs, QOp op,
                                       const std::vector<uint32_t> &helpers = {}, uint8_t value = 1) {
    if (op != QOp::Xp1 && op != QOp::Xm1) throw std::invalid_argument("shared-control action must be X+1 or X-1");
    if (pairs.empty()) return;
    const size_t k = pairs.size();
    if (helpers.size() < k) {
        for (const auto &p : pairs) q.ctrl2(shared, 1, p.first, value, op, p.second);
        return;
    }
    const QOp inv = qop_inverse(op);
    std::vector<uint32_t> h(helpers.begin(), helpers.begin() + k);
    for (size_t i = 0; i < k; ++i) {
        q.ctrl2(h[i], 1, pairs[i].first, value, inv, pairs[i].second);
        q.ctrl2(h[i], 2, pairs[i].first, value, op, pairs[i].second);
    }
    emit_qutrit_fanout(q, shared, h, +1);
    for (size_t i = 0; i < k; ++i) {
        q.ctrl2(h[i], 1, pairs[i].first, value, op, pairs[i].second);
        q.ctrl2(h[i], 2, pairs[i].first, value, inv, pairs[i].second);
    }
    emit_qutrit_fanout(q, shared, h, -1);
}

inline QutritCircuit synth_shared_control_qutrit(uint32_t shared, const std::vector<std::pair<uint32_t, uint32_t>> &pairs,
                                                 QOp op, const std::vector<uint32_t> &helpers = {}) {
    std::vector<uint32_t> all{shared};
    for (const auto &p : pairs) {
        all.push_back(p.first);
        all.push_back(p.second);
    }
    if (helpers.size() >= pairs.size()) all.insert(all.end(), helpers.begin(), helpers.begin() + pairs.size());
    QutritCircuit q = detail::qutrit_frame(all);
    emit_shared_control_qutrit(q, shared, pairs, op, helpers);
    return q;
}

}  // namespace symfn
