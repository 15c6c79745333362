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
#include <mutex>
#include <set>
#include <stdexcept>
#include <tuple>
#include <utility>
#include <vector>

#include "circuit.hpp"

namespace symfn {

inline uint32_t ceil_log2(uint64_t n) {
    uint32_t l = 0;
    while ((uint64_t{1} << l) < n) ++l;
    return l;
}

namespace detail {

inline uint32_t max_wire(uint32_t a, const std::vector<uint32_t> &ws) {
    uint32_t m = a;
    for (uint32_t w : ws) m = std::max(m, w);
    return m;
}

inline void require_distinct(std::vector<uint32_t> ws) {
    std::sort(ws.begin(), ws.end());
    if (std::adjacent_find(ws.begin(), ws.end()) != ws.end()) throw std::invalid_argument("duplicate wires");
}

// One doubling step of the fan-out cascade over 1-based positions.
inline void cascade_step(QubitCircuit &c, const std::vector<uint32_t> &b, uint32_t s) {
    const size_t n = b.size();
    const size_t stride = size_t{1} << s, jump = size_t{1} << (s - 1);
    for (size_t i = 1; i + jump <= n; i += stride) c.cx(b[i - 1], b[i + jump - 1]);
}

}  // namespace detail

// XORs `control` onto every target: cascade, one CNOT onto b1, mirrored cascade.
inline void emit_fanout(QubitCircuit &c, uint32_t control, const std::vector<uint32_t> &targets) {
    if (targets.empty()) throw std::invalid_argument("fan-out needs at least one target");
    const uint32_t L = ceil_log2(targets.size());
    for (uint32_t s = 1; s <= L; ++s) detail::cascade_step(c, targets, s);
    c.cx(control, targets[0]);
    for (uint32_t s = L; s >= 1; --s) detail::cascade_step(c, targets, s);
}

inline QubitCircuit synth_fanout(uint32_t control, const std::vector<uint32_t> &targets) {
    std::vector<uint32_t> all(targets);
    all.push_back(control);
    detail::require_distinct(all);
    QubitCircuit c(detail::max_wire(control, targets) + 1);
    emit_fanout(c, control, targets);
    return c;
}

inline QubitCircuit synth_fanout(uint32_t n) {
    std::vector<uint32_t> t(n);
    for (uint32_t i = 0; i < n; ++i) t[i] = i + 1;
    return synth_fanout(0, t);
}

// Parity of `controls` XORed onto `target`; the fan-out conjugated by H.
inline void emit_parity_fanin(QubitCircuit &c, const std::vector<uint32_t> &controls, uint32_t target) {
    if (controls.empty()) throw std::invalid_argument("parity fan-in needs at least one control");
    if (controls.size() <= 2) {
        for (uint32_t q : controls) c.cx(q, target);
        return;
    }
    c.h(target);
    for (uint32_t q : controls) c.h(q);
    emit_fanout(c, target, controls);
    c.h(target);
    for (uint32_t q : controls) c.h(q);
}

inline QubitCircuit synth_parity_fanin(const std::vector<uint32_t> &controls, uint32_t target) {
    std::vector<uint32_t> all(controls);
    all.push_back(target);
    detail::require_distinct(all);
    QubitCircuit c(detail::max_wire(target, controls) + 1);
    emit_parity_fanin(c, controls, target);
    return c;
}

namespace detail {

// Search for controlled-phase offsets. For distance d the bracket on the
// upper wire j starts at 5j + t_d; the post slots {t, t+1, t+2} of every d
// must be pairwise disjoint, as must the pre slots {u, u-2} with u = 5d - t.
inline bool offset_dfs(size_t d, size_t N, std::vector<uint32_t> &t, std::vector<char> &post, std::vector<char> &pre) {
    if (d > N) return true;
    for (uint32_t td = 2; td + 2 <= 5 * d; ++td) {
        uint32_t u = 5 * static_cast<uint32_t>(d) - td;
        if (post[td] || post[td + 1] || post[td + 2] || pre[u] || pre[u - 2]) continue;
        post[td] = post[td + 1] = post[td + 2] = 1;
        pre[u] = pre[u - 2] = 1;
        t.push_back(td);
        if (offset_dfs(d + 1, N, t, post, pre)) return true;
        t.pop_back();
        post[td] = post[td + 1] = post[td + 2] = 0;
        pre[u] = pre[u - 2] = 0;
    }
    return false;
}

inline std::vector<uint32_t> compute_offsets(size_t N) {
    std::vector<uint32_t> t{0};
    std::vector<char> post(5 * N + 8, 0), pre(5 * N + 8, 0);
    if (!offset_dfs(1, N, t, post, pre)) throw std::logic_error("no controlled-phase offset schedule");
    return t;
}

inline const std::vector<uint32_t> &qft_offsets(size_t distances) {
    static std::mutex mu;
    static std::vector<uint32_t> cache;
    std::lock_guard<std::mutex> lock(mu);
    if (cache.size() <= distances) cache = compute_offsets(std::max<size_t>(distances, 45));
    return cache;
}

}  // namespace detail

// No-swap QFT: wire 0 is the most significant bit on input and wire j ends
// holding the phase 0.x_{j+1}...x_m. Controlled phases are scheduled at
// fixed offsets so that the ASAP depth is 5m - 4.
inline void emit_qft(QubitCircuit &c, const std::vector<uint32_t> &w) {
    const size_t m = w.size();
    if (m == 0) throw std::invalid_argument("QFT needs at least one wire");
    if (m > 60) throw std::invalid_argument("QFT register too large for exact angles");
    const size_t T = 5 * m - 4;
    const auto &off = detail::qft_offsets(m - 1);
    std::vector<std::vector<char>> busy(m, std::vector<char>(T + 2, 0));
    std::vector<std::pair<size_t, Gate>> ev;
    for (size_t j = 0; j < m; ++j) {
        busy[j][5 * j + 1] = 1;
        ev.push_back({5 * j + 1, Gate{GateKind::H, w[j]}});
    }
    for (size_t j = 0; j < m; ++j) {
        for (size_t k = j + 1; k < m; ++k) {
            const size_t d = k - j, tau = 5 * j + off[d];
            if (tau + 2 > T) throw std::logic_error("QFT schedule overflow");
            busy[j][tau] = busy[j][tau + 1] = busy[j][tau + 2] = 1;
            busy[k][tau] = busy[k][tau + 2] = 1;
            ev.push_back({tau, Gate{GateKind::CNOT, w[k], w[j]}});
            ev.push_back({tau + 1, Gate{GateKind::PhaseZ, w[j], 0, Angle(-1, int64_t{1} << (d + 1))}});
            ev.push_back({tau + 2, Gate{GateKind::CNOT, w[k], w[j]}});
        }
    }
    for (size_t j = 0; j < m; ++j) {
        for (size_t k = j + 1; k < m; ++k) {
            const Angle half(1, int64_t{1} << (k - j + 1));
            size_t a = 5 * j + 2;
            while (a <= T && busy[j][a]) ++a;
            size_t b = 5 * k;
            while (b >= 1 && busy[k][b]) --b;
            if (a > T || b < 1) throw std::logic_error("QFT schedule has no free slot");
            busy[j][a] = busy[k][b] = 1;
            ev.push_back({a, Gate{GateKind::PhaseZ, w[j], 0, half}});
            ev.push_back({b, Gate{GateKind::PhaseZ, w[k], 0, half}});
        }
    }
    std::stable_sort(ev.begin(), ev.end(), [](const auto &x, const auto &y) { return x.first < y.first; });
    for (const auto &e : ev) c.append(e.second);
}

inline void emit_iqft(QubitCircuit &c, const std::vector<uint32_t> &w) {
    QubitCircuit tmp(c.width());
    emit_qft(tmp, w);
    compose_into(c, inverse(tmp));
}

inline QubitCircuit synth_qft(uint32_t m) {
    std::vector<uint32_t> w(m);
    for (uint32_t i = 0; i < m; ++i) w[i] = i;
    QubitCircuit c(m);
    emit_qft(c, w);
    return c;
}

inline QubitCircuit synth_iqft(uint32_t m) { return inverse(synth_qft(m)); }

// Standard 6-CNOT, depth-11 Toffoli.
inline void emit_toffoli(QubitCircuit &c, uint32_t a, uint32_t b, uint32_t t) {
    c.h(t);
    c.cx(b, t);
    c.tdg(t);
    c.cx(a, t);
    c.t(t);
    c.cx(b, t);
    c.tdg(t);
    c.cx(a, t);
    c.t(b);
    c.t(t);
    c.h(t);
    c.cx(a, b);
    c.t(a);
    c.tdg(b);
    c.cx(a, b);
}

// k Toffolis sharing control s, parallelized with fan-outs of s.
inline void emit_shared_control_toffoli(QubitCircuit &c, uint32_t s,
                                        const std::vector<std::pair<uint32_t, uint32_t>> &pairs) {
    if (pairs.empty()) throw std::invalid_argument("shared-control block needs at least one pair");
    std::vector<uint32_t> ctl, tgt;
    for (const auto &p : pairs) {
        ctl.push_back(p.first);
        tgt.push_back(p.second);
    }
    for (uint32_t t : tgt) c.h(t);
    for (size_t i = 0; i < pairs.size(); ++i) c.cx(ctl[i], tgt[i]);
    for (uint32_t t : tgt) c.tdg(t);
    emit_fanout(c, s, tgt);
    for (uint32_t t : tgt) c.t(t);
    for (size_t i = 0; i < pairs.size(); ++i) c.cx(ctl[i], tgt[i]);
    for (size_t i = 0; i < pairs.size(); ++i) {
        c.t(ctl[i]);
        c.tdg(tgt[i]);
    }
    emit_fanout(c, s, tgt);
    emit_fanout(c, s, ctl);
    const int64_t k8 = static_cast<int64_t>(pairs.size() % 8);
    if (k8 == 1) {
        c.t(s);
    } else if (k8 == 7) {
        c.tdg(s);
    } else {
        c.zrot(s, Angle(k8, 4));
    }
    for (size_t i = 0; i < pairs.size(); ++i) {
        c.tdg(ctl[i]);
        c.t(tgt[i]);
    }
    emit_fanout(c, s, ctl);
    for (uint32_t t : tgt) c.h(t);
}

inline QubitCircuit synth_shared_control_toffoli(uint32_t s, const std::vector<std::pair<uint32_t, uint32_t>> &pairs) {
    std::vector<uint32_t> all{s};
    for (const auto &p : pairs) {
        all.push_back(p.first);
        all.push_back(p.second);
    }
    detail::require_distinct(all);
    QubitCircuit c(detail::max_wire(s, all) + 1);
    emit_shared_control_toffoli(c, s, pairs);
    return c;
}

}  // namespace symfn
