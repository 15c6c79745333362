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
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "circuit.hpp"

namespace symfn {

enum class QOp : uint8_t { X01, X02, X12, Xp1, Xm1 };

inline const char *qop_name(QOp op) {
    switch (op) {
        case QOp::X01: return "x01";
        case QOp::X02: return "x02";
        case QOp::X12: return "x12";
        case QOp::Xp1: return "xp1";
        case QOp::Xm1: return "xm1";
    }
    return "?";
}

inline QOp parse_qop(const std::string &s) {
    if (s == "x01") return QOp::X01;
    if (s == "x02") return QOp::X02;
    if (s == "x12") return QOp::X12;
    if (s == "xp1") return QOp::Xp1;
    if (s == "xm1") return QOp::Xm1;
    throw std::invalid_argument("unknown qutrit gate: " + s);
}

inline QOp qop_inverse(QOp op) {
    if (op == QOp::Xp1) return QOp::Xm1;
    if (op == QOp::Xm1) return QOp::Xp1;
    return op;
}

// Level permutation of a qutrit operation.
inline uint8_t qop_apply(QOp op, uint8_t d) {
    switch (op) {
        case QOp::X01: return d == 2 ? 2 : 1 - d;
        case QOp::X02: return d == 1 ? 1 : 2 - d;
        case QOp::X12: return d == 0 ? 0 : 3 - d;
        case QOp::Xp1: return (d + 1) % 3;
        case QOp::Xm1: return (d + 2) % 3;
    }
    return d;
}

struct QControl {
    uint32_t wire;
    uint8_t value;
};

// Fires `op` on `target` when every control wire holds its control value.
struct QutritGate {
    QOp op;
    uint32_t target;
    uint8_t ncontrols = 0;
    QControl ctrl[2] = {};

    bool operator==(const QutritGate &o) const {
        if (op != o.op || target != o.target || ncontrols != o.ncontrols) return false;
        for (int i = 0; i < ncontrols; ++i)
            if (ctrl[i].wire != o.ctrl[i].wire || ctrl[i].value != o.ctrl[i].value) return false;
        return true;
    }
};

class QutritCircuit {
  public:
    QutritCircuit() = default;
    explicit QutritCircuit(size_t width, Role role = Role::Input) : roles_(width, role) {}

    size_t width() const { return roles_.size(); }
    const std::vector<Role> &roles() const { return roles_; }
    const std::vector<QutritGate> &gates() const { return gates_; }
    size_t size() const { return gates_.size(); }
    bool empty() const { return gates_.empty(); }

    void set_role(size_t q, Role r) { roles_.at(q) = r; }
    void resize(size_t width, Role role = Role::Input) {
        if (width > roles_.size()) roles_.resize(width, role);
    }

    QutritCircuit &append(const QutritGate &g) {
        check(g.target);
        if (g.ncontrols > 2) throw std::invalid_argument("at most two controls");
        for (int i = 0; i < g.ncontrols; ++i) {
            check(g.ctrl[i].wire);
            if (g.ctrl[i].wire == g.target) throw std::invalid_argument("control equals target");
            if (g.ctrl[i].value > 2) throw std::invalid_argument("control value out of range");
        }
        if (g.ncontrols == 2 && g.ctrl[0].wire == g.ctrl[1].wire) throw std::invalid_argument("repeated control");
        gates_.push_back(g);
        return *this;
    }

    QutritCircuit &gate(QOp op, uint32_t t) { return append({op, t, 0, {}}); }
    QutritCircuit &ctrl(uint32_t c, uint8_t v, QOp op, uint32_t t) {
        QutritGate g{op, t, 1, {}};
        g.ctrl[0] = {c, v};
        return append(g);
    }
    QutritCircuit &ctrl2(uint32_t c0, uint8_t v0, uint32_t c1, uint8_t v1, QOp op, uint32_t t) {
        QutritGate g{op, t, 2, {}};
        g.ctrl[0] = {c0, v0};
        g.ctrl[1] = {c1, v1};
        return append(g);
    }

    QutritCircuit &extend(const QutritCircuit &b) {
        resize(b.width());
        for (const auto &g : b.gates_) append(g);
        return *this;
    }

  private:
    void check(uint32_t q) const {
        if (q >= roles_.size()) throw std::out_of_range("wire index out of range");
    }

    std::vector<Role> roles_;
    std::vector<QutritGate> gates_;
};

struct QutritDepthReport {
    size_t depth = 0;
    size_t width = 0;
    std::map<std::string, size_t> counts;
    size_t clean_ancillas = 0;
    size_t borrowed_ancillas = 0;
    size_t gate_count = 0;
};

inline QutritDepthReport compute_depth(const QutritCircuit &c) {
    QutritDepthReport r;
    r.width = c.width();
    r.gate_count = c.size();
    std::vector<size_t> last(c.width(), 0);
    for (const auto &g : c.gates()) {
        size_t l = last[g.target];
        for (int i = 0; i < g.ncontrols; ++i) l = std::max(l, last[g.ctrl[i].wire]);
        ++l;
        last[g.target] = l;
        for (int i = 0; i < g.ncontrols; ++i) last[g.ctrl[i].wire] = l;
        r.depth = std::max(r.depth, l);
        std::string key = g.ncontrols == 0 ? qop_name(g.op) : "c" + std::to_string(g.ncontrols) + "-" + qop_name(g.op);
        ++r.counts[key];
    }
    for (Role role : c.roles()) {
        if (role == Role::Clean) ++r.clean_ancillas;
        if (role == Role::Borrowed) ++r.borrowed_ancillas;
    }
    return r;
}

inline QutritCircuit inverse(const QutritCircuit &c) {
    QutritCircuit r(c.width());
    for (size_t q = 0; q < c.width(); ++q) r.set_role(q, c.roles()[q]);
    for (size_t i = c.size(); i-- > 0;) {
        QutritGate g = c.gates()[i];
        g.op = qop_inverse(g.op);
        r.append(g);
    }
    return r;
}

inline QutritCircuit compose(const QutritCircuit &a, const QutritCircuit &b, const std::vector<uint32_t> &map) {
    if (map.size() < b.width()) throw std::invalid_argument("wire map shorter than circuit width");
    std::vector<uint32_t> sorted(map.begin(), map.begin() + b.width());
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw std::invalid_argument("wire map is not injective");
    QutritCircuit r = a;
    if (!sorted.empty()) r.resize(sorted.back() + 1);
    for (QutritGate g : b.gates()) {
        g.target = map[g.target];
        for (int i = 0; i < g.ncontrols; ++i) g.ctrl[i].wire = map[g.ctrl[i].wire];
        r.append(g);
    }
    return r;
}

inline std::string to_text(const QutritCircuit &c) {
    std::ostringstream os;
    os << "width " << c.width() << "\n";
    for (size_t q = 0; q < c.width(); ++q) os << "role q" << q << " " << role_name(c.roles()[q]) << "\n";
    for (const auto &g : c.gates()) {
        if (g.ncontrols == 0) {
            os << qop_name(g.op) << " q" << g.target << "\n";
            continue;
        }
        os << "cx";
        for (int i = 0; i < g.ncontrols; ++i) os << " v=" << int(g.ctrl[i].value) << " q" << g.ctrl[i].wire;
        os << " -> " << qop_name(g.op) << " q" << g.target << "\n";
    }
    return os.str();
}

inline QutritCircuit parse_qutrit_text(const std::string &text) {
    std::istringstream in(text);
    std::string line;
    QutritCircuit c;
    bool have_width = false;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::istringstream ls(line);
        std::string op;
        if (!(ls >> op)) continue;
        if (op == "width") {
            size_t w;
            if (!(ls >> w)) throw std::invalid_argument("bad width line");
            c = QutritCircuit(w);
            have_width = true;
            continue;
        }
        if (!have_width) throw std::invalid_argument("missing width header");
        std::string a, b;
        if (op == "role") {
            ls >> a >> b;
            c.set_role(detail::parse_wire(a), parse_role(b));
        } else if (op == "cx") {
            QutritGate g{QOp::X01, 0, 0, {}};
            std::string tok;
            while (ls >> tok && tok != "->") {
                if (tok.rfind("v=", 0) != 0 || g.ncontrols == 2) throw std::invalid_argument("bad control: " + tok);
                int v = std::stoi(tok.substr(2));
                if (!(ls >> b)) throw std::invalid_argument("missing control wire");
                g.ctrl[g.ncontrols++] = {detail::parse_wire(b), static_cast<uint8_t>(v)};
            }
            if (tok != "->" || !(ls >> a >> b)) throw std::invalid_argument("bad controlled gate line");
            g.op = parse_qop(a);
            g.target = detail::parse_wire(b);
            c.append(g);
        } else {
            ls >> a;
            c.gate(parse_qop(op), detail::parse_wire(a));
        }
    }
    return c;
}

}  // namespace symfn
