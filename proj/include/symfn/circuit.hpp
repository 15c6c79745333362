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

namespace symfn {

// Angle stored as pi * num / den, reduced with num in (-den, den].
struct Angle {
    int64_t num = 0;
    int64_t den = 1;

    Angle() = default;
    Angle(int64_t n, int64_t d) : num(n), den(d) { normalize(); }

    void normalize() {
        if (den == 0) throw std::invalid_argument("angle with zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        int64_t g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
        int64_t p = 2 * den;
        num %= p;
        if (num <= -den) num += p;
        if (num > den) num -= p;
    }

    Angle operator-() const { return Angle(-num, den); }
    Angle operator+(const Angle &o) const {
        int64_t l = std::lcm(den, o.den);
        return Angle(num * (l / den) + o.num * (l / o.den), l);
    }
    bool is_zero() const { return num == 0; }
    double radians() const;
    bool operator==(const Angle &o) const { return num == o.num && den == o.den; }
};

inline constexpr double kPi = 3.14159265358979323846;

inline double Angle::radians() const { return kPi * static_cast<double>(num) / static_cast<double>(den); }

enum class GateKind : uint8_t { H, X, T, Tdg, PhaseZ, CNOT };

inline const char *gate_name(GateKind k) {
    switch (k) {
        case GateKind::H: return "H";
        case GateKind::X: return "X";
        case GateKind::T: return "T";
        case GateKind::Tdg: return "Tdg";
        case GateKind::PhaseZ: return "PhaseZ";
        case GateKind::CNOT: return "CNOT";
    }
    return "?";
}

// For CNOT, q0 is the control and q1 the target.
struct Gate {
    GateKind kind;
    uint32_t q0;
    uint32_t q1 = 0;
    Angle theta;

    bool operator==(const Gate &o) const {
        return kind == o.kind && q0 == o.q0 && (kind != GateKind::CNOT || q1 == o.q1) &&
               (kind != GateKind::PhaseZ || theta == o.theta);
    }
};

enum class Role : uint8_t { Input, Output, Clean, Borrowed, Target };

inline const char *role_name(Role r) {
    switch (r) {
        case Role::Input: return "input";
        case Role::Output: return "output";
        case Role::Clean: return "clean";
        case Role::Borrowed: return "borrowed";
        case Role::Target: return "target";
    }
    return "?";
}

inline Role parse_role(const std::string &s) {
    if (s == "input") return Role::Input;
    if (s == "output") return Role::Output;
    if (s == "clean") return Role::Clean;
    if (s == "borrowed") return Role::Borrowed;
    if (s == "target") return Role::Target;
    throw std::invalid_argument("unknown role: " + s);
}

// Ordered gate list over typed wires. A barrier is a stage marker recorded as
// the gate-list position it precedes; it is not a gate and spans every wire.
class QubitCircuit {
  public:
    QubitCircuit() = default;
    explicit QubitCircuit(size_t width, Role role = Role::Input) : roles_(width, role) {}

    size_t width() const { return roles_.size(); }
    const std::vector<Role> &roles() const { return roles_; }
    const std::vector<Gate> &gates() const { return gates_; }
    const std::vector<size_t> &barriers() const { return barriers_; }
    size_t size() const { return gates_.size(); }
    bool empty() const { return gates_.empty(); }

    void set_role(size_t q, Role r) { roles_.at(q) = r; }
    void resize(size_t width, Role role = Role::Input) {
        if (width > roles_.size()) roles_.resize(width, role);
    }

    QubitCircuit &append(const Gate &g) {
        check(g.q0);
        if (g.kind == GateKind::CNOT) {
            check(g.q1);
            if (g.q0 == g.q1) throw std::invalid_argument("CNOT control equals target");
        }
        gates_.push_back(g);
        return *this;
    }

    QubitCircuit &h(uint32_t q) { return append({GateKind::H, q}); }
    QubitCircuit &x(uint32_t q) { return append({GateKind::X, q}); }
    QubitCircuit &t(uint32_t q) { return append({GateKind::T, q}); }
    QubitCircuit &tdg(uint32_t q) { return append({GateKind::Tdg, q}); }
    QubitCircuit &cx(uint32_t c, uint32_t tgt) { return append({GateKind::CNOT, c, tgt}); }
    QubitCircuit &zrot(uint32_t q, Angle a) {
        if (a.is_zero()) return *this;
        return append({GateKind::PhaseZ, q, 0, a});
    }

    QubitCircuit &barrier() {
        if (barriers_.empty() || barriers_.back() != gates_.size()) barriers_.push_back(gates_.size());
        return *this;
    }

  private:
    void check(uint32_t q) const {
        if (q >= roles_.size()) throw std::out_of_range("wire index out of range");
    }

    std::vector<Role> roles_;
    std::vector<Gate> gates_;
    std::vector<size_t> barriers_;

    friend QubitCircuit inverse(const QubitCircuit &c);
    friend QubitCircuit &compose_into(QubitCircuit &a, const QubitCircuit &b,
                                      const std::vector<uint32_t> &map);
};

struct DepthReport {
    size_t depth = 0;
    // ASAP depth ignoring stage barriers.
    size_t flat_depth = 0;
    size_t width = 0;
    std::map<std::string, size_t> counts;
    size_t clean_ancillas = 0;
    size_t borrowed_ancillas = 0;
    size_t gate_count = 0;
};

// ASAP layering. Gates after a barrier start above every layer placed before it.
inline std::vector<size_t> gate_layers(const QubitCircuit &c, bool honor_barriers = true) {
    std::vector<size_t> last(c.width(), 0), layer(c.size());
    const auto &bars = c.barriers();
    size_t floor = 0, top = 0, bi = 0;
    for (size_t i = 0; i < c.size(); ++i) {
        while (bi < bars.size() && bars[bi] == i) {
            if (honor_barriers) floor = top;
            ++bi;
        }
        const Gate &g = c.gates()[i];
        size_t l = std::max(floor, last[g.q0]);
        if (g.kind == GateKind::CNOT) l = std::max(l, last[g.q1]);
        ++l;
        last[g.q0] = l;
        if (g.kind == GateKind::CNOT) last[g.q1] = l;
        layer[i] = l;
        top = std::max(top, l);
    }
    return layer;
}

inline DepthReport compute_depth(const QubitCircuit &c) {
    DepthReport r;
    r.width = c.width();
    r.gate_count = c.size();
    for (size_t l : gate_layers(c, true)) r.depth = std::max(r.depth, l);
    for (size_t l : gate_layers(c, false)) r.flat_depth = std::max(r.flat_depth, l);
    for (const Gate &g : c.gates()) ++r.counts[gate_name(g.kind)];
    for (Role role : c.roles()) {
        if (role == Role::Clean) ++r.clean_ancillas;
        if (role == Role::Borrowed) ++r.borrowed_ancillas;
    }
    return r;
}

inline Gate adjoint(Gate g) {
    if (g.kind == GateKind::T) {
        g.kind = GateKind::Tdg;
    } else if (g.kind == GateKind::Tdg) {
        g.kind = GateKind::T;
    } else if (g.kind == GateKind::PhaseZ) {
        g.theta = -g.theta;
    }
    return g;
}

inline QubitCircuit inverse(const QubitCircuit &c) {
    QubitCircuit r;
    r.roles_ = c.roles_;
    size_t n = c.gates_.size();
    r.gates_.reserve(n);
    for (size_t i = n; i-- > 0;) r.gates_.push_back(adjoint(c.gates_[i]));
    for (size_t i = c.barriers_.size(); i-- > 0;) r.barriers_.push_back(n - c.barriers_[i]);
    return r;
}

// Appends b's gates to a, mapping b's wire i to map[i].
inline QubitCircuit &compose_into(QubitCircuit &a, const QubitCircuit &b, const std::vector<uint32_t> &map) {
    if (map.size() < b.width()) throw std::invalid_argument("wire map shorter than circuit width");
    std::vector<uint32_t> sorted(map.begin(), map.begin() + b.width());
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw std::invalid_argument("wire map is not injective");
    if (!sorted.empty()) a.resize(sorted.back() + 1);
    size_t off = a.gates_.size();
    for (size_t p : b.barriers_) a.barriers_.push_back(off + p);
    std::sort(a.barriers_.begin(), a.barriers_.end());
    a.barriers_.erase(std::unique(a.barriers_.begin(), a.barriers_.end()), a.barriers_.end());
    a.gates_.reserve(off + b.gates_.size());
    for (Gate g : b.gates_) {
        g.q0 = map[g.q0];
        if (g.kind == GateKind::CNOT) g.q1 = map[g.q1];
        a.gates_.push_back(g);
    }
    return a;
}

inline QubitCircuit &compose_into(QubitCircuit &a, const QubitCircuit &b) {
    std::vector<uint32_t> id(b.width());
    std::iota(id.begin(), id.end(), 0u);
    return compose_into(a, b, id);
}

inline QubitCircuit compose(const QubitCircuit &a, const QubitCircuit &b, const std::vector<uint32_t> &map) {
    QubitCircuit r = a;
    compose_into(r, b, map);
    return r;
}

inline QubitCircuit compose(const QubitCircuit &a, const QubitCircuit &b) {
    QubitCircuit r = a;
    compose_into(r, b);
    return r;
}

inline std::string to_text(const QubitCircuit &c) {
    std::ostringstream os;
    os << "width " << c.width() << "\n";
    for (size_t q = 0; q < c.width(); ++q) os << "role q" << q << " " << role_name(c.roles()[q]) << "\n";
    size_t bi = 0;
    const auto &bars = c.barriers();
    for (size_t i = 0; i <= c.size(); ++i) {
        while (bi < bars.size() && bars[bi] == i) {
            os << "barrier\n";
            ++bi;
        }
        if (i == c.size()) break;
        const Gate &g = c.gates()[i];
        switch (g.kind) {
            case GateKind::H: os << "h q" << g.q0; break;
            case GateKind::X: os << "x q" << g.q0; break;
            case GateKind::T: os << "t q" << g.q0; break;
            case GateKind::Tdg: os << "tdg q" << g.q0; break;
            case GateKind::PhaseZ: os << "zrot q" << g.q0 << " " << g.theta.num << "/" << g.theta.den; break;
            case GateKind::CNOT: os << "cx q" << g.q0 << " q" << g.q1; break;
        }
        os << "\n";
    }
    return os.str();
}

namespace detail {

inline uint32_t parse_wire(const std::string &tok) {
    if (tok.size() < 2 || tok[0] != 'q') throw std::invalid_argument("bad wire token: " + tok);
    size_t pos = 0;
    unsigned long v = std::stoul(tok.substr(1), &pos);
    if (pos != tok.size() - 1) throw std::invalid_argument("bad wire token: " + tok);
    return static_cast<uint32_t>(v);
}

}  // namespace detail

inline QubitCircuit parse_text(const std::string &text) {
    std::istringstream in(text);
    std::string line;
    QubitCircuit c;
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
            c = QubitCircuit(w);
            have_width = true;
            continue;
        }
        if (!have_width) throw std::invalid_argument("missing width header");
        std::string a, b;
        if (op == "role") {
            ls >> a >> b;
            c.set_role(detail::parse_wire(a), parse_role(b));
        } else if (op == "barrier") {
            c.barrier();
        } else if (op == "h") {
            ls >> a;
            c.h(detail::parse_wire(a));
        } else if (op == "x") {
            ls >> a;
            c.x(detail::parse_wire(a));
        } else if (op == "t") {
            ls >> a;
            c.t(detail::parse_wire(a));
        } else if (op == "tdg") {
            ls >> a;
            c.tdg(detail::parse_wire(a));
        } else if (op == "cx") {
            ls >> a >> b;
            c.cx(detail::parse_wire(a), detail::parse_wire(b));
        } else if (op == "zrot") {
            ls >> a >> b;
            auto slash = b.find('/');
            if (slash == std::string::npos) throw std::invalid_argument("bad angle: " + b);
            Angle ang(std::stoll(b.substr(0, slash)), std::stoll(b.substr(slash + 1)));
            c.append({GateKind::PhaseZ, detail::parse_wire(a), 0, ang});
        } else {
            throw std::invalid_argument("unknown gate: " + op);
        }
    }
    return c;
}

}  // namespace symfn
