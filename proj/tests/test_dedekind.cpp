#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "abst/dedekind.hpp"
#include "abst/snf.hpp"
#include "support/data.hpp"
#include "support/oracles.hpp"

using namespace abst;
using abst::testing::ExplicitModel;

namespace {

std::vector<Int> iv(std::vector<long> v) { return std::vector<Int>(v.begin(), v.end()); }

std::multiset<std::vector<Int>> relation_set(const Presentation& p) {
    return {p.relations().begin(), p.relations().end()};
}

ModuleSpec spec_of(RingKind kind, unsigned p, CycleKind cycle,
                   std::vector<std::pair<long, long>> blocks, std::vector<long> lambda = {}) {
    ModuleSpec s;
    s.ring = make_ring_model(kind, Int(p));
    s.cycle = cycle;
    for (auto [d1, d2] : blocks)
        s.blocks.push_back(BlockSpec{d1 < 0 ? std::nullopt : std::optional<unsigned>(d1),
                                     d2 < 0 ? std::nullopt : std::optional<unsigned>(d2)});
    s.lambda = iv(lambda);
    return s;
}

}  // namespace

TEST_CASE("sigma decomposition for small primes") {
    CHECK(sigma_decomposition(Int(2)) == iv({-1}));
    CHECK(sigma_decomposition(Int(3)) == iv({2, 1}));
    CHECK(sigma_decomposition(Int(5)) == iv({-1, 2, 3, 1}));
    for (unsigned p : {2u, 3u, 5u, 7u, 11u, 13u})
        CHECK(verify_ring_identity(make_ring_model(RingKind::zcp, Int(p))));
    CHECK(verify_ring_identity(make_ring_model(RingKind::pullback_zz, Int(3))));
}

TEST_CASE("block generating sets match the worked examples") {
    RingModel zc3 = make_ring_model(RingKind::zcp, Int(3));
    BuiltPresentation b = build_block_presentation(zc3, BlockSpec{3, 3});
    std::set<std::string> names(b.pres.generators().begin(), b.pres.generators().end());
    CHECK(names == std::set<std::string>{"a", "p1*a", "p2*a", "p1^2*a", "p2^2*a"});

    RingModel pb = make_ring_model(RingKind::pullback_zz, Int(3));
    BuiltPresentation tinyb = build_block_presentation(pb, BlockSpec{1, 1});
    CHECK(tinyb.pres.generators() == std::vector<std::string>{"a"});
    REQUIRE(tinyb.pres.relations().size() == 1);
    CHECK(tinyb.pres.relations()[0] == iv({3}));
    CHECK(compute_structure(tinyb.pres).type.tuple() == std::vector<unsigned>{0, 1});

    // pullback, both lengths 3: 3a = p1 a + p2 a and the chain relations
    BuiltPresentation big = build_block_presentation(pb, BlockSpec{3, 3});
    CHECK(big.pres.generators() ==
          std::vector<std::string>{"a", "p1*a", "p2*a", "p1^2*a", "p2^2*a"});
    CHECK(big.pres.relations()[0] == iv({3, -1, -1, 0, 0}));
    CHECK(relation_set(big.pres).count(iv({0, 3, 0, -1, 0})) == 1);   // 3 p1 a = p1^2 a
    CHECK(relation_set(big.pres).count(iv({0, 0, 0, 3, 0})) == 1);    // 3 p1^2 a = 0
}

TEST_CASE("the two-block deleted cycle reproduces its relation set") {
    ModuleSpec spec = abst::testing::load_spec("ex54_spec.json");
    BuiltPresentation built = build_cycle_presentation(spec);
    Presentation expected = abst::testing::load("ex54.json");
    CHECK(built.pres.generators() == expected.generators());
    CHECK(relation_set(built.pres) == relation_set(expected));
    CHECK(built.connectors == std::vector<std::size_t>{7});  // p2^2*a1
}

TEST_CASE("the block-cycle closing relation is normalized mod p") {
    ModuleSpec spec = abst::testing::load_spec("ex53_spec.json");
    BuiltPresentation built = build_cycle_presentation(spec);
    CHECK(built.pres.generators() ==
          std::vector<std::string>{"a", "p1*a", "p2*a", "p1^2*a", "p2^2*a", "p1^3*a",
                                   "p2^3*a"});
    // p1^3 a = 2 p2^3 a
    CHECK(relation_set(built.pres).count(iv({0, 0, 0, 0, 0, 1, -2})) == 1);
    // chain relation 3 p1^2 a = p1^3 a quoted as x4^3 - x6
    CHECK(relation_set(built.pres).count(iv({0, 0, 0, 3, 0, -1, 0})) == 1);
}

TEST_CASE("a single-block deleted cycle is just the block") {
    RingModel zc3 = make_ring_model(RingKind::zcp, Int(3));
    ModuleSpec spec = spec_of(RingKind::zcp, 3, CycleKind::deleted_cycle, {{3, 3}});
    BuiltPresentation cycle = build_cycle_presentation(spec);
    BuiltPresentation block = build_block_presentation(zc3, BlockSpec{3, 3});
    CHECK(cycle.pres.generators() == block.pres.generators());
    CHECK(relation_set(cycle.pres) == relation_set(block.pres));
    CHECK(cycle.connectors.empty());
}

TEST_CASE("built presentations are triangular in the p-action") {
    std::mt19937_64 rng(51);
    for (int round = 0; round < 20; ++round) {
        ModuleSpec spec = abst::testing::random_module_spec(rng, round % 2 ? 2 : 3);
        BuiltPresentation built = build_cycle_presentation(spec);
        std::size_t p_action_count = 0;
        for (std::size_t i = 0; i < spec.blocks.size(); ++i)
            p_action_count += *spec.blocks[i].d1 + *spec.blocks[i].d2 - 1;
        REQUIRE(built.pres.relations().size() >=
                p_action_count);  // plus gluing relations
        for (std::size_t r = 0; r < p_action_count; ++r) {
            const auto& rel = built.pres.relations()[r];
            std::size_t head = 0;
            while (rel[head] == 0) ++head;
            CHECK(rel[head] == spec.ring.p);
            // every other nonzero coefficient sits on a later generator
            for (std::size_t j = 0; j < head; ++j) CHECK(rel[j] == 0);
        }
        std::size_t gluing =
            built.pres.relations().size() - p_action_count;
        std::size_t expected_gluing = spec.blocks.size() - 1 +
                                      (spec.cycle == CycleKind::block_cycle ? 1 : 0);
        CHECK(gluing == expected_gluing);
    }
}

TEST_CASE("ring identity holds for every constructed model") {
    std::mt19937_64 rng(52);
    for (int round = 0; round < 10; ++round) {
        ModuleSpec spec = abst::testing::random_module_spec(rng, round % 2 ? 2 : 3);
        CHECK(verify_ring_identity(spec.ring));
    }
}

TEST_CASE("infinite lengths resolve per the block classification") {
    // both infinite, group ring: free of rank p
    ModuleSpec zcp_inf = spec_of(RingKind::zcp, 3, CycleKind::deleted_cycle, {{-1, -1}});
    InfiniteResolution r = resolve_infinite_lengths(zcp_inf);
    CHECK(r.bypassed);
    CHECK(r.bypass_type.torsion_free_rank == 3);
    CHECK(r.bypass_type.ulm.empty());
    CHECK(r.bypass_basis == std::vector<std::string>{"a", "p2*a", "p2^2*a"});

    // both infinite, pullback: free of rank 2
    ModuleSpec pb_inf = spec_of(RingKind::pullback_zz, 5, CycleKind::deleted_cycle, {{-1, -1}});
    InfiniteResolution r2 = resolve_infinite_lengths(pb_inf);
    CHECK(r2.bypassed);
    CHECK(r2.bypass_type.torsion_free_rank == 2);
    CHECK(r2.bypass_basis == std::vector<std::string>{"a", "p1*a"});

    // single infinite length: sentinel stabilization, p - 1 artifacts
    ModuleSpec one_inf = spec_of(RingKind::zcp, 3, CycleKind::deleted_cycle, {{2, -1}});
    InfiniteResolution r3 = resolve_infinite_lengths(one_inf);
    CHECK_FALSE(r3.bypassed);
    CHECK(r3.infinite_rank == 2);
    CHECK(r3.torsion.ulm == std::map<unsigned, unsigned>{{1, 1}});

    // torsion part does not move when the sentinel grows
    ModuleSpec bigger = one_inf;
    bigger.blocks[0].d2 = r3.sentinel + 2;
    StructureResult run = compute_structure(build_cycle_presentation(bigger).pres);
    std::vector<unsigned> exps;
    for (const auto& e : run.basis) exps.push_back(e.order_exponent);
    std::sort(exps.rbegin(), exps.rend());
    GroupType stripped;
    for (std::size_t i = r3.infinite_rank; i < exps.size(); ++i) ++stripped.ulm[exps[i]];
    CHECK(stripped == r3.torsion);

    // d1 infinite: a single artifact
    ModuleSpec d1_inf = spec_of(RingKind::zcp, 3, CycleKind::deleted_cycle, {{-1, 2}});
    InfiniteResolution r4 = resolve_infinite_lengths(d1_inf);
    CHECK(r4.infinite_rank == 1);
}

TEST_CASE("connector heights on the worked examples") {
    // the two-block deleted cycle: one interior connector of height 1
    ModuleSpec ex54 = abst::testing::load_spec("ex54_spec.json");
    BuiltPresentation built = build_cycle_presentation(ex54);
    StructureResult s = compute_structure(built.pres);
    ConnectorHeights ch = connector_heights(ex54, built, s);
    REQUIRE(!ch.connectors.empty());
    CHECK(ch.connectors[0].label == "d1");
    CHECK(ch.connectors[0].height == 1);
    CHECK(ch.connectors[0].tallied);
    CHECK(ch.ell == std::map<unsigned, unsigned>{{2, 1}});
    CHECK(ch.exponent == 3);

    // brute-force cross-check on the explicit group
    ExplicitModel m = ExplicitModel::of(built.pres.relations(), built.pres.generator_count());
    CHECK(m.brute_height(m.generator_coords(built.connectors[0]), Int(3)) == 1);

    // the closing connector of the one-block cycle has height ex - 1
    ModuleSpec ex53 = abst::testing::load_spec("ex53_spec.json");
    BuiltPresentation b53 = build_cycle_presentation(ex53);
    StructureResult s53 = compute_structure(b53.pres);
    ConnectorHeights ch53 = connector_heights(ex53, b53, s53);
    REQUIRE(ch53.connectors.size() == 2);
    CHECK(ch53.connectors[0].label == "d0");
    CHECK(ch53.connectors[0].height == 3);
    CHECK(ch53.connectors[0].tallied);
    CHECK_FALSE(ch53.connectors[1].tallied);

    // a single-block deleted cycle has no tallied connectors
    ModuleSpec lone = spec_of(RingKind::zcp, 3, CycleKind::deleted_cycle, {{3, 3}});
    BuiltPresentation lb = build_cycle_presentation(lone);
    StructureResult ls = compute_structure(lb.pres);
    ConnectorHeights lch = connector_heights(lone, lb, ls);
    CHECK(lch.ell.empty());
    for (const auto& c : lch.connectors) CHECK_FALSE(c.tallied);
}

TEST_CASE("type formula equals the direct pipeline on the examples") {
    FormulaResult ex53 = type_via_formula(abst::testing::load_spec("ex53_spec.json"));
    CHECK(ex53.formula.tuple() == std::vector<unsigned>{0, 2, 0, 0, 1});
    CHECK(ex53.formula == ex53.direct);

    FormulaResult ex54 = type_via_formula(abst::testing::load_spec("ex54_spec.json"));
    CHECK(ex54.formula.tuple() == std::vector<unsigned>{0, 1, 1, 2});
    CHECK(ex54.formula == ex54.direct);

    // m = 1 deleted cycle: no connectors, no reductions
    FormulaResult lone =
        type_via_formula(spec_of(RingKind::pullback_zz, 2, CycleKind::deleted_cycle, {{2, 3}}));
    CHECK(lone.formula == lone.direct);
    CHECK(lone.heights.ell.empty());
}

TEST_CASE("type formula equals the direct pipeline on random specs") {
    std::mt19937_64 rng(53);
    for (int round = 0; round < 40; ++round) {
        ModuleSpec spec = abst::testing::random_module_spec(rng, round % 2 ? 2 : 3);
        FormulaResult r = type_via_formula(spec);
        CHECK(r.formula == r.direct);
    }
}

TEST_CASE("direct pipeline agrees with the oracle on built modules") {
    std::mt19937_64 rng(54);
    for (int round = 0; round < 20; ++round) {
        ModuleSpec spec = abst::testing::random_module_spec(rng, round % 2 ? 2 : 3);
        BuiltPresentation built = build_cycle_presentation(spec);
        StructureResult s = compute_structure(built.pres);
        GroupType oracle =
            type_from_relations(built.pres.relations(), built.pres.generator_count())
                .restricted_to(spec.ring.p);
        CHECK(s.type == oracle);
    }
}

TEST_CASE("closing polynomial classification") {
    CHECK(closing_polynomial_is_irreducible_power(
        abst::testing::load_spec("ex53_spec.json")));  // f(z) = z - 2
    ModuleSpec good = spec_of(RingKind::pullback_zz, 3, CycleKind::block_cycle,
                              {{2, 2}, {2, 2}}, {1, 2});  // f = (z + 1)^2 over F_3
    CHECK(closing_polynomial_is_irreducible_power(good));
    ModuleSpec bad = spec_of(RingKind::pullback_zz, 3, CycleKind::block_cycle,
                             {{2, 2}, {2, 2}}, {2, 0});  // f = z^2 + 2 = (z+1)(z+2)
    CHECK_FALSE(closing_polynomial_is_irreducible_power(bad));
}

TEST_CASE("module spec validation") {
    // glued positions must have a socle to glue
    ModuleSpec bad = spec_of(RingKind::zcp, 3, CycleKind::deleted_cycle, {{3, 1}, {3, 3}});
    CHECK_THROWS_AS(bad.validate(), diagnostic_error);
    // block cycles are fully finite
    ModuleSpec inf = spec_of(RingKind::zcp, 3, CycleKind::block_cycle, {{3, -1}}, {1});
    CHECK_THROWS_AS(inf.validate(), diagnostic_error);
    // lambda length is l = m / period
    ModuleSpec lam = spec_of(RingKind::zcp, 3, CycleKind::block_cycle,
                             {{2, 2}, {2, 2}}, {1, 2, 0});
    CHECK_THROWS_AS(lam.validate(), diagnostic_error);
}

TEST_CASE("analyze_module reports the full type") {
    ModuleAnalysis fin = analyze_module(abst::testing::load_spec("ex54_spec.json"));
    CHECK(fin.type.tuple() == std::vector<unsigned>{0, 1, 1, 2});
    CHECK_FALSE(fin.resolution.has_value());

    ModuleAnalysis inf =
        analyze_module(spec_of(RingKind::zcp, 3, CycleKind::deleted_cycle, {{2, -1}}));
    CHECK(inf.type.torsion_free_rank == 2);
    CHECK(inf.type.ulm == std::map<unsigned, unsigned>{{1, 1}});
}
