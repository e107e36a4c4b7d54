// Copyright 2026 The qabench Authors
//
//    Licensed under the Apache License, Version 2.0 (the "License");
//    you may not use this file except in compliance with the License.
//    You may obtain a copy of the License at
//
//        http://www.apache.org/licenses/LICENSE-2.0
//
//    Unless required by applicable law or agreed to in writing, software
//    distributed under the License is distributed on an "AS IS" BASIS,
//    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//    See the License for the specific language governing permissions and
//    limitations under the License.

#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "qabench/topology.hpp"
#include "support.hpp"

namespace qabench {
namespace {

TEST(Chimera, CountsMatchClosedForm) {
    for (int s = 1; s <= 5; ++s) {
        const auto g = build_chimera(s);
        EXPECT_EQ(g.num_qubits(), 8 * s * s);
        EXPECT_EQ(static_cast<int>(g.couplers().size()), 16 * s * s + 8 * s * (s - 1));
        EXPECT_EQ(g.num_active_couplers(), chimera_coupler_count(s));
        EXPECT_TRUE(g.fully_active());
        EXPECT_TRUE(g.active_part_connected());
    }
}

TEST(Chimera, CouplerCountByCellEnumeration) {
    // Independent count: K44 edges per cell plus vertical and horizontal links.
    const int s = 3;
    const auto g = build_chimera(s);
    std::set<SpinPair> expected;
    for (int r = 0; r < s; ++r) {
        for (int c = 0; c < s; ++c) {
            for (int a = 0; a < 4; ++a) {
                for (int b = 4; b < 8; ++b) {
                    expected.insert(ordered_pair(g.qubit(r, c, a), g.qubit(r, c, b)));
                }
                if (r + 1 < s) {
                    expected.insert(ordered_pair(g.qubit(r, c, a), g.qubit(r + 1, c, a)));
                }
                if (c + 1 < s) {
                    expected.insert(ordered_pair(g.qubit(r, c, a + 4), g.qubit(r, c + 1, a + 4)));
                }
            }
        }
    }
    std::set<SpinPair> actual;
    for (const auto& c : g.couplers()) {
        actual.insert({c.u, c.v});
    }
    EXPECT_EQ(actual, expected);
}

TEST(Chimera, MaskingDeactivatesIncidentCouplers) {
    const auto g = build_chimera(2, {0}, {{1, 5}});
    EXPECT_FALSE(g.is_active(0));
    EXPECT_EQ(g.num_active_qubits(), 31);
    // qubit 0 had 4 intra-cell and 1 inter-cell coupler.
    EXPECT_EQ(g.num_active_couplers(), chimera_coupler_count(2) - 5 - 1);
    EXPECT_FALSE(g.coupler_active(0, 4));
    EXPECT_FALSE(g.coupler_active(1, 5));
    EXPECT_TRUE(g.has_coupler(1, 5));
    EXPECT_EQ(std::count(g.neighbors(4).begin(), g.neighbors(4).end(), 0), 0);
}

TEST(Chimera, InvalidQubitIsNamed) {
    try {
        build_chimera(2, {32});
        FAIL() << "expected InvalidArgument";
    } catch (const InvalidArgument& e) {
        EXPECT_NE(std::string(e.what()).find("32"), std::string::npos);
    }
}

TEST(CliqueEmbedding, ValidForFullCapacity) {
    for (int s = 1; s <= 4; ++s) {
        const auto g = build_chimera(s);
        const auto emb = clique_embedding(4 * s, g);
        ASSERT_EQ(emb.size(), static_cast<std::size_t>(4 * s));
        for (const auto& chain : emb.chains) {
            EXPECT_EQ(chain.size(), static_cast<std::size_t>(s + 1));
        }
        EXPECT_TRUE(validate_embedding(emb, complete_graph_edges(4 * s), g).empty());
    }
}

TEST(CliqueEmbedding, RejectsOversizeAndMaskedGraphs) {
    EXPECT_THROW(clique_embedding(9, build_chimera(2)), InvalidArgument);
    EXPECT_THROW(clique_embedding(4, build_chimera(2, {3})), InvalidArgument);
    EXPECT_THROW(clique_embedding(0, build_chimera(2)), InvalidArgument);
}

TEST(EmbeddingValidation, ReportsEachViolationKind) {
    const auto g = build_chimera(1);
    Embedding overlap{{{0, 4}, {4, 1}}, {}};
    auto report = validate_embedding(overlap, {{0, 1}}, g);
    ASSERT_FALSE(report.empty());
    EXPECT_EQ(report.front().kind, EmbeddingViolation::Kind::Overlap);
    EXPECT_EQ(report.front().qubit, 4);

    Embedding disconnected{{{0, 1}, {4}}, {}};
    report = validate_embedding(disconnected, {{0, 1}}, g);
    ASSERT_FALSE(report.empty());
    EXPECT_EQ(report.front().kind, EmbeddingViolation::Kind::Disconnected);

    Embedding uncovered{{{0}, {1}}, {}};
    report = validate_embedding(uncovered, {{0, 1}}, g);
    ASSERT_FALSE(report.empty());
    EXPECT_EQ(report.front().kind, EmbeddingViolation::Kind::UncoveredEdge);
}

TEST(MinorEmbed, ChainAlignedEnergiesShiftByConstant) {
    const auto g = build_chimera(1);
    const auto emb = clique_embedding(4, g);
    for (int trial = 0; trial < 10; ++trial) {
        auto logical = testing::random_instance(4, 1.0, 300 + trial);
        Embedding e = emb;
        e.set_uniform_strength(2.5);
        const auto physical = minor_embed_instance(logical, e, g);
        double offset = 0;
        for (const auto& chain : e.chains) {
            offset += 2.5 * intra_chain_coupler_count(chain, g);
        }
        for (std::uint64_t x = 0; x < 16; ++x) {
            const auto s = state_from_index(x, 4);
            EXPECT_NEAR(energy(physical, extend_to_chains(s, e, g.num_qubits())), energy(logical, s) - offset, 1e-12);
        }
    }
}

TEST(MinorEmbed, StrongChainsPreserveGroundStates) {
    const auto g = build_chimera(1);
    auto emb = clique_embedding(4, g);
    const auto logical = testing::random_instance(4, 1.0, 77);
    emb.set_uniform_strength(10.0);
    const auto physical = minor_embed_instance(logical, emb, g);
    const auto bl = testing::brute_force(logical);
    const auto bp = testing::brute_force(physical);
    std::set<std::uint64_t> lifted;
    for (auto x : bl.ground_indices) {
        lifted.insert(index_from_state(extend_to_chains(state_from_index(x, 4), emb, 8)));
    }
    EXPECT_EQ(std::set<std::uint64_t>(bp.ground_indices.begin(), bp.ground_indices.end()), lifted);
}

TEST(MinorEmbed, DefaultStrengthIsMaxCoupler) {
    const auto g = build_chimera(1);
    auto emb = clique_embedding(2, g);
    emb.chain_strength.clear();
    IsingInstance logical(2);
    logical.set_coupler(0, 1, 0.75);
    const auto physical = minor_embed_instance(logical, emb, g);
    const auto& chain = emb.chains[0];
    EXPECT_DOUBLE_EQ(physical.coupler(chain[0], chain[1]), -0.75);
}

TEST(MinorEmbed, FieldsSplitEquallyAcrossChain) {
    const auto g = build_chimera(2);
    auto emb = clique_embedding(3, g);
    IsingInstance logical(3);
    logical.h = {0.9, -0.3, 0.0};
    logical.set_coupler(0, 1, 1.0);
    const auto physical = minor_embed_instance(logical, emb, g);
    for (int q : emb.chains[0]) {
        EXPECT_DOUBLE_EQ(physical.h[static_cast<std::size_t>(q)], 0.3);
    }
}

TEST(EmbeddingText, OneChainPerLine) {
    Embedding emb{{{0, 4}, {1}}, {}};
    EXPECT_EQ(embedding_to_adjacency_text(emb), "0 4\n1\n");
}

}  // namespace
}  // namespace qabench
