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

#include <gtest/gtest.h>

#include <bit>
#include <random>

#include "symfn/qutrit_synth.hpp"
#include "symfn/simulator.hpp"

using namespace symfn;

namespace {

uint64_t enc(const std::vector<uint8_t> &d) {
    uint64_t r = 0;
    for (size_t i = d.size(); i-- > 0;) r = 3 * r + d[i];
    return r;
}

std::vector<uint8_t> dec(uint64_t v, size_t w) {
    std::vector<uint8_t> d(w);
    for (size_t i = 0; i < w; ++i, v /= 3) d[i] = static_cast<uint8_t>(v % 3);
    return d;
}

std::vector<uint8_t> run_digits(const QutritCircuit &c, const std::vector<uint8_t> &in) {
    auto r = extract_basis(simulate(c, enc(in)));
    EXPECT_TRUE(r.has_value());
    return r ? dec(r->index, c.width()) : std::vector<uint8_t>{};
}

std::vector<uint8_t> bits_of(uint64_t x, size_t n, size_t width) {
    std::vector<uint8_t> d(width, 0);
    for (size_t i = 0; i < n; ++i) d[i] = (x >> i) & 1;
    return d;
}

uint32_t clog2(uint64_t n) {
    uint32_t b = 0;
    while ((uint64_t{1} << b) < n) ++b;
    return b;
}

}  // namespace

TEST(AlmostCounting, LayerTable) {
    const uint32_t n[] = {31, 63, 127, 255, 511, 1023, 2047, 4095};
    const size_t want[] = {7, 9, 10, 12, 14, 16, 18, 20};
    for (int i = 0; i < 8; ++i) {
        auto ac = almost_counting(n[i]);
        EXPECT_EQ(ac.state.layers, want[i]) << n[i];
        EXPECT_EQ(ac.layer_ends.size(), want[i]);
        EXPECT_EQ(ac.snapshots.size(), want[i]);
    }
}

TEST(AlmostCounting, FinalStateIsReduced) {
    for (uint32_t n = 1; n <= 300; ++n) {
        auto st = almost_counting(n).state;
        ASSERT_EQ(st.Q.size(), st.t + 1);
        size_t r = 0;
        while (r < st.Q.size() && !st.Q[r].empty()) ++r;
        for (size_t i = 0; i < st.Q.size(); ++i) {
            if (i < r) {
                EXPECT_GE(st.Q[i].size(), 1u);
                EXPECT_LE(st.Q[i].size(), 2u);
            } else {
                EXPECT_TRUE(st.Q[i].empty()) << "n=" << n << " level " << i;
            }
        }
    }
}

TEST(AlmostCounting, WeightedSumAfterEveryLayer) {
    for (uint32_t n = 1; n <= 9; ++n) {
        auto ac = almost_counting(n);
        std::vector<uint64_t> pw(ac.circuit.width());
        for (size_t q = 0; q < pw.size(); ++q) pw[q] = ipow(3, q);
        for (uint64_t x = 0; x < (uint64_t{1} << n); ++x) {
            StateVector s(3, ac.circuit.width(), enc(bits_of(x, n, n)));
            std::vector<amp_t> scratch;
            size_t g = 0;
            for (size_t l = 0; l < ac.layer_ends.size(); ++l) {
                for (; g < ac.layer_ends[l]; ++g) apply_gate(s, ac.circuit.gates()[g], scratch, pw);
                auto r = extract_basis(s);
                ASSERT_TRUE(r);
                auto d = dec(r->index, ac.circuit.width());
                uint64_t sum = 0;
                for (size_t i = 0; i < ac.snapshots[l].size(); ++i)
                    for (uint32_t w : ac.snapshots[l][i]) {
                        ASSERT_LE(d[w], 1);
                        sum += uint64_t{d[w]} << i;
                    }
                EXPECT_EQ(sum, static_cast<uint64_t>(std::popcount(x))) << "n=" << n << " layer " << l;
            }
        }
    }
}

TEST(Refine, EmptyWhenAlreadyReduced) {
    CountingState st{2, {{0}, {1}, {2}}, 0};
    auto r = refine(st, 3, 4);
    EXPECT_TRUE(r.circuit.empty());
    EXPECT_EQ(r.designated, (std::vector<uint32_t>{0, 1, 2}));
}

TEST(Refine, RippleShape) {
    // Widths 2,1,2,1 with the msb level fed only by carries.
    CountingState st{4, {{0, 1}, {2}, {3, 4}, {5}, {}}, 0};
    auto r = refine(st, 6, 7);
    ASSERT_EQ(r.designated.size(), 5u);
    EXPECT_EQ(r.designated.back(), 6u);
    for (uint64_t x = 0; x < 64; ++x) {
        const uint64_t w = ((x & 1) + ((x >> 1) & 1)) + 2 * ((x >> 2) & 1) + 4 * (((x >> 3) & 1) + ((x >> 4) & 1)) +
                           8 * ((x >> 5) & 1);
        auto out = run_digits(r.circuit, bits_of(x, 6, 7));
        for (size_t l = 0; l < 5; ++l) EXPECT_EQ(out[r.designated[l]], (w >> l) & 1) << "x=" << x;
    }
}

TEST(QutritHamming, DesignatedWiresHoldWeight) {
    for (uint32_t n = 1; n <= 9; ++n) {
        auto h = synth_hamming_qutrit(n);
        ASSERT_EQ(h.designated.size(), clog2(n + 1));
        if (((n + 1) & n) == 0) {
            // Counting alone yields every bit; the ancilla stays idle.
            for (const auto &g : h.circuit.gates()) EXPECT_NE(g.target, h.ancilla);
        } else {
            EXPECT_EQ(h.designated.back(), h.ancilla);
        }
        EXPECT_EQ(h.circuit.roles()[h.ancilla], Role::Clean);
        for (uint64_t x = 0; x < (uint64_t{1} << n); ++x) {
            auto out = run_digits(h.circuit, bits_of(x, n, n + 1));
            for (size_t l = 0; l < h.designated.size(); ++l)
                EXPECT_EQ(out[h.designated[l]], (std::popcount(x) >> l) & 1) << "n=" << n << " x=" << x;
        }
    }
}

TEST(QutritHamming, MersenneNeedsNoRefinement) {
    for (uint32_t n : {1u, 3u, 7u, 15u, 31u}) {
        auto ac = almost_counting(n);
        auto rf = refine(ac.state, n, n + 1);
        EXPECT_TRUE(rf.circuit.empty()) << n;
    }
    auto h = synth_hamming_qutrit(9);
    auto out = run_digits(h.circuit, bits_of(0b110110110, 9, 10));
    for (size_t l = 0; l < 4; ++l) EXPECT_EQ(out[h.designated[l]], (6 >> l) & 1);
}

TEST(QutritHamming, AllOnesOfSix) {
    auto h = synth_hamming_qutrit(6);
    auto out = run_digits(h.circuit, bits_of(63, 6, 7));
    EXPECT_EQ(out[h.designated[0]], 0);
    EXPECT_EQ(out[h.designated[1]], 1);
    EXPECT_EQ(out[h.designated[2]], 1);
    EXPECT_EQ(out[6], 1);
}

TEST(F3Poly, IdentityExhaustive) {
    for (uint32_t n = 0; n <= 4; ++n) {
        const uint64_t pts = uint64_t{1} << n;
        for (uint64_t f = 0; f < (uint64_t{1} << pts); ++f) {
            std::vector<uint8_t> v(pts);
            for (uint64_t x = 0; x < pts; ++x) v[x] = (f >> x) & 1;
            auto p = f3_from_values(n, v);
            for (uint64_t x = 0; x < pts; ++x) ASSERT_EQ(evaluate(p, x), v[x]);
            for (uint8_t c : p.coeffs) ASSERT_LE(c, 2);
        }
    }
}

TEST(F3Poly, IdentityRandom) {
    std::mt19937_64 rng(0);
    for (uint32_t n : {5u, 6u, 9u}) {
        for (int rep = 0; rep < 20; ++rep) {
            std::vector<uint8_t> v(uint64_t{1} << n);
            for (auto &b : v) b = rng() % 3;
            auto p = f3_from_values(n, v);
            for (uint64_t x = 0; x < v.size(); ++x) ASSERT_EQ(evaluate(p, x), v[x]);
        }
    }
    EXPECT_THROW(f3_from_values(2, {0, 1, 2}), std::invalid_argument);
}

TEST(F3Poly, KnownPolynomial) {
    // OR(x0, x1) = x0 + x1 - x0 x1 = x0 + x1 + 2 x0 x1.
    auto p = f3_from_values(2, {0, 1, 1, 1});
    EXPECT_EQ(p.coeffs, (std::vector<uint8_t>{0, 1, 1, 2}));
}

TEST(QutritBoolean, ExhaustiveThreeVariables) {
    std::mt19937_64 rng(1);
    for (uint64_t f = 0; f < 256; ++f) {
        TruthTable tt(3);
        for (size_t x = 0; x < 8; ++x) tt.bits[x] = (f >> x) & 1;
        auto c = synth_boolean_qutrit(f3_from_truth_table(tt));
        const size_t w = c.width();
        for (uint64_t x = 0; x < 8; ++x)
            for (uint8_t t = 0; t < 3; ++t) {
                auto in = bits_of(x, 3, w);
                for (size_t q = 3; q + 1 < w; ++q) in[q] = rng() % 3;
                in[w - 1] = t;
                auto want = in;
                want[w - 1] = (t + tt.bits[x]) % 3;
                ASSERT_EQ(run_digits(c, in), want) << "f=" << f << " x=" << x;
            }
    }
}

TEST(QutritBoolean, TernaryValuedPolynomials) {
    std::mt19937_64 rng(2);
    for (int rep = 0; rep < 20; ++rep) {
        std::vector<uint8_t> v(8);
        for (auto &b : v) b = rng() % 3;
        auto c = synth_boolean_qutrit(f3_from_values(3, v));
        const size_t w = c.width();
        for (uint64_t x = 0; x < 8; ++x) {
            auto in = bits_of(x, 3, w);
            for (size_t q = 3; q < w; ++q) in[q] = rng() % 3;
            auto want = in;
            want[w - 1] = (in[w - 1] + v[x]) % 3;
            EXPECT_EQ(run_digits(c, in), want);
        }
    }
}

TEST(QutritSymmetric, AllSpecs) {
    for (uint32_t n = 2; n <= 5; ++n) {
        for (uint64_t f = 0; f < (uint64_t{1} << (n + 1)); ++f) {
            SymmetricSpec s{n, std::vector<uint8_t>(n + 1)};
            for (uint32_t w = 0; w <= n; ++w) s.values[w] = (f >> w) & 1;
            auto qs = synth_symmetric_qutrit(s);
            for (uint64_t x = 0; x < (uint64_t{1} << n); ++x)
                for (uint8_t t = 0; t < 3; ++t) {
                    auto in = bits_of(x, n, qs.circuit.width());
                    in[qs.target] = t;
                    auto out = run_digits(qs.circuit, in);
                    ASSERT_EQ(out[qs.target], (t + s.values[std::popcount(x)]) % 3) << "n=" << n << " f=" << f;
                }
        }
    }
}

TEST(QutritSymmetric, MirrorUncomputeRestoresEverything) {
    for (uint32_t n = 2; n <= 6; ++n) {
        auto s = preset_spec("mod:3", n);
        auto qs = synth_symmetric_qutrit(s, true);
        for (uint64_t x = 0; x < (uint64_t{1} << n); ++x)
            for (uint8_t t = 0; t < 3; ++t) {
                auto in = bits_of(x, n, qs.circuit.width());
                in[qs.target] = t;
                auto want = in;
                want[qs.target] = (t + s.values[std::popcount(x)]) % 3;
                EXPECT_EQ(run_digits(qs.circuit, in), want);
            }
    }
}

TEST(QutritSymmetric, RejectsTinyInput) {
    EXPECT_THROW(synth_symmetric_qutrit(preset_spec("parity", 1)), std::invalid_argument);
}
