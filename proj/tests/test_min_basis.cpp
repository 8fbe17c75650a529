#include <gtest/gtest.h>

#include <numeric>
#include <random>
#include <set>

#include "rcb/generators.hpp"
#include "rcb/min_basis.hpp"
#include "rcb/testkit.hpp"

using namespace rcb;

namespace {

Graph k4() { return build_graph(4, {{0, 1, 1}, {0, 2, 1}, {0, 3, 1}, {1, 2, 1}, {1, 3, 1}, {2, 3, 1}}); }

void expect_sound(const RootedGraph& rg, const MinBasisResult& r) {
  ASSERT_TRUE(r.ok()) << r.failure;
  const ValidationReport v = validate_rooted_basis(rg, r.basis);
  EXPECT_TRUE(v.valid()) << (v.entries.empty() ? "" : v.entries.front().message);
  EXPECT_EQ(r.rank, static_cast<std::size_t>(r.dimension));
  EXPECT_EQ(r.basis.size(), static_cast<std::size_t>(r.dimension));
  EXPECT_EQ(r.ears.size(), r.basis.size() + 1);
  for (std::size_t i = 0; i < r.basis.size(); ++i) {
    if (i > 0) {
      EXPECT_LE(r.basis.cycles[i - 1].weight, r.basis.cycles[i].weight);
    }
    ASSERT_TRUE(r.basis.witness_edges[i]);
    const EdgeId w = *r.basis.witness_edges[i];
    EXPECT_TRUE(r.basis.cycles[i].contains(w));
    for (std::size_t j = 0; j < i; ++j) EXPECT_FALSE(r.basis.cycles[j].contains(w));
  }
}

}  // namespace

TEST(MinWeightRootedBasis, Triangle) {
  const RootedGraph rg(build_graph(3, {{0, 1, 1}, {1, 2, 1}, {2, 0, 1}}), 1);
  const MinBasisResult r = min_weight_rooted_basis(rg);
  EXPECT_EQ(r.basis.total_weight(), 3);
  EXPECT_EQ(r.basis.size(), 1u);
}

TEST(MinWeightRootedBasis, K4) {
  const RootedGraph rg(k4(), 0);
  const MinBasisResult r = min_weight_rooted_basis(rg);
  expect_sound(rg, r);
  EXPECT_EQ(r.basis.total_weight(), 10);
  EXPECT_EQ(r.basis.cycles[0].weight, 3);
  EXPECT_EQ(r.basis.cycles[1].weight, 3);
  EXPECT_EQ(r.basis.cycles[2].weight, 4);
  EXPECT_EQ(testkit::brute_min_rooted_basis(rg).total_weight(), 10);
}

TEST(MinWeightRootedBasis, LadderClosedForm) {
  for (int k = 2; k <= 5; ++k) {
    const RootedGraph rg = gen_ladder(k);
    const MinBasisResult r = min_weight_rooted_basis(rg);
    expect_sound(rg, r);
    EXPECT_EQ(r.basis.total_weight(), (k - 1) * (k + 2));
    EXPECT_EQ(testkit::brute_min_rooted_basis(rg).total_weight(), (k - 1) * (k + 2));
    for (int j = 0; j < k - 1; ++j) EXPECT_EQ(r.basis.cycles[static_cast<std::size_t>(j)].weight, 2 * j + 4);
  }
  for (int k : {10, 50}) {
    EXPECT_EQ(min_weight_rooted_basis(gen_ladder(k)).basis.total_weight(), (k - 1) * (k + 2));
  }
}

TEST(MinWeightRootedBasis, ThrowsWithoutBasis) {
  const Graph bowtie = build_graph(5, {{0, 1, 1}, {1, 2, 1}, {2, 0, 1}, {2, 3, 1}, {3, 4, 1}, {4, 2, 1}});
  EXPECT_THROW(min_weight_rooted_basis(RootedGraph(bowtie, 0)), NoRootedBasis);
}

TEST(MinWeightRootedBasis, ReportsInputIdsThroughTheCore) {
  const Graph g = build_graph(6, {{4, 5, 1}, {0, 1, 2}, {1, 2, 2}, {2, 0, 2}, {0, 3, 1}, {3, 1, 1}, {2, 4, 1}});
  const RootedGraph rg(g, 1);
  const MinBasisResult r = min_weight_rooted_basis(rg);
  expect_sound(rg, r);
  EXPECT_EQ(r.basis.total_weight(), 4 + 6);
  for (const Cycle& c : r.basis.cycles) {
    EXPECT_FALSE(c.contains(0));
    EXPECT_FALSE(c.contains(6));
  }
}

TEST(GreedyBasisBuilder, FirstStepIsGloballyShortest) {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    RandomGraphOptions o;
    o.n = 7;
    o.m = 12;
    o.max_weight = 20;
    const RootedGraph rg = gen_random_biconnected(o, seed);
    TieBreakContext ctx = make_context(rg.graph(), TieBreakPolicy::deterministic, 0, 64);
    GreedyBasisBuilder b(rg, &ctx);
    const Cycle first = b.step();
    Weight best = -1;
    for (const Cycle& c : testkit::enumerate_rooted_cycles(rg)) {
      if (best < 0 || c.weight < best) best = c.weight;
    }
    EXPECT_EQ(first.weight, best);
  }
}

TEST(GreedyBasisBuilder, K4SecondStepIsTheOtherTriangle) {
  const RootedGraph rg(k4(), 0);
  TieBreakContext ctx = make_context(rg.graph(), TieBreakPolicy::deterministic, 0, 64);
  GreedyBasisBuilder b(rg, &ctx);
  const Cycle c1 = b.step();
  const Cycle c2 = b.step();
  EXPECT_EQ(c1.weight, 3);
  EXPECT_EQ(c2.weight, 3);
  EXPECT_NE(c1.edges, c2.edges);
  const Cycle c3 = b.step();
  EXPECT_EQ(c3.weight, 4);
  EXPECT_TRUE(b.done());
  EXPECT_TRUE(b.finish().ok());
}

TEST(GreedyBasisBuilder, RankGrowsEveryStepWithTieBreaking) {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    RandomGraphOptions o;
    o.n = 10 + static_cast<int>(seed % 15);
    o.m = o.n + 4 + static_cast<int>(seed % 10);
    const RootedGraph rg = gen_random_biconnected(o, seed);
    TieBreakContext ctx = make_context(rg.graph(), TieBreakPolicy::deterministic, 0, 64);
    GreedyBasisBuilder b(rg, &ctx, GreedyOrder::perturbation, true);
    Gf2Eliminator elim(static_cast<std::size_t>(rg.graph().edge_count()));
    std::size_t rank = 0;
    while (!b.done()) {
      const Cycle c = b.step();
      EXPECT_TRUE(elim.insert_ids(c.edges)) << "seed " << seed;
      ++rank;
    }
    EXPECT_EQ(rank, static_cast<std::size_t>(cycle_space_dimension(b.graph())));
  }
}

TEST(MinWeightRootedBasis, MatchesMatroidGreedyOnSmallGraphs) {
  std::mt19937_64 rng(41);
  for (int n = 3; n <= 6; ++n) {
    for (const Graph& g0 : testkit::biconnected_graphs(n)) {
      for (EdgeId r = 0; r < g0.edge_count(); ++r) {
        const RootedGraph rg = with_random_weights(RootedGraph(g0, r), 1'000'000, true, rng());
        const MinBasisResult got = min_weight_rooted_basis(rg);
        expect_sound(rg, got);
        EXPECT_EQ(got.basis.total_weight(), testkit::brute_min_rooted_basis(rg).total_weight());
      }
    }
  }
}

TEST(MinWeightRootedBasis, UnitWeightsGiveTheOracleBasis) {
  for (int n = 3; n <= 6; ++n) {
    for (const Graph& g : testkit::biconnected_graphs(n)) {
      for (EdgeId r = 0; r < g.edge_count(); ++r) {
        const RootedGraph rg(g, r);
        const MinBasisResult got = min_weight_rooted_basis(rg);
        expect_sound(rg, got);
        std::set<std::vector<EdgeId>> a, b;
        for (const Cycle& c : got.basis.cycles) a.insert(c.edges);
        for (const Cycle& c : testkit::brute_min_rooted_basis(rg).cycles) b.insert(c.edges);
        EXPECT_EQ(a, b);
      }
    }
  }
}

TEST(MinWeightRootedBasis, MatchesMatroidGreedyOnRandomInstances) {
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    RandomGraphOptions o;
    o.n = 5 + static_cast<int>(seed % 5);
    o.m = o.n + 2 + static_cast<int>(seed % 7);
    o.max_weight = seed % 4 == 0 ? 1 : (seed % 4 == 1 ? 3 : 1000);
    o.allow_parallel = seed % 6 == 0;
    const RootedGraph rg = gen_random_biconnected(o, seed);
    const MinBasisResult got = min_weight_rooted_basis(rg);
    expect_sound(rg, got);
    EXPECT_EQ(got.basis.total_weight(), testkit::brute_min_rooted_basis(rg).total_weight()) << "seed " << seed;
  }
}

TEST(MinWeightRootedBasis, CustomEdgeOrderStaysOptimal) {
  std::mt19937_64 rng(43);
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    RandomGraphOptions o;
    o.n = 7;
    o.m = 12;
    const RootedGraph rg = gen_random_biconnected(o, seed);
    MinBasisOptions opt;
    opt.edge_order.resize(static_cast<std::size_t>(rg.graph().edge_count()));
    std::iota(opt.edge_order.begin(), opt.edge_order.end(), 0);
    std::shuffle(opt.edge_order.begin(), opt.edge_order.end(), rng);
    const MinBasisResult got = min_weight_rooted_basis(rg, opt);
    expect_sound(rg, got);
    const CycleBasis want = testkit::brute_min_rooted_basis(rg, opt.edge_order);
    EXPECT_EQ(got.basis.total_weight(), want.total_weight());
    std::set<std::vector<EdgeId>> a, b;
    for (const Cycle& c : got.basis.cycles) a.insert(c.edges);
    for (const Cycle& c : want.cycles) b.insert(c.edges);
    EXPECT_EQ(a, b);
  }
}

TEST(MinWeightRootedBasis, RandomizedModeIsReproducible) {
  RandomGraphOptions o;
  o.n = 30;
  o.m = 60;
  const RootedGraph rg = gen_random_biconnected(o, 5);
  MinBasisOptions opt;
  opt.tiebreak = TieBreakPolicy::randomized;
  opt.seed = 99;
  const MinBasisResult a = min_weight_rooted_basis(rg, opt), b = min_weight_rooted_basis(rg, opt);
  expect_sound(rg, a);
  ASSERT_EQ(a.basis.size(), b.basis.size());
  for (std::size_t i = 0; i < a.basis.size(); ++i) EXPECT_EQ(a.basis.cycles[i].edges, b.basis.cycles[i].edges);
  EXPECT_EQ(a.basis.total_weight(), min_weight_rooted_basis(rg).basis.total_weight());
}

TEST(MinWeightRootedBasis, NewEdgeOrderStaysOptimal) {
  for (std::uint64_t seed = 1; seed <= 80; ++seed) {
    RandomGraphOptions o;
    o.n = 6 + static_cast<int>(seed % 4);
    o.m = o.n + 4;
    const RootedGraph rg = gen_random_biconnected(o, seed);
    MinBasisOptions opt;
    opt.order = GreedyOrder::new_edges_then_perturbation;
    const MinBasisResult got = min_weight_rooted_basis(rg, opt);
    expect_sound(rg, got);
    EXPECT_EQ(got.basis.total_weight(), testkit::brute_min_rooted_basis(rg).total_weight());
  }
}

TEST(MinWeightRootedBasis, NaiveGreedyCanFail) {
  // Without tie-breaking, unit weights eventually produce a dependent
  // sequence on some graph.
  int failures = 0;
  for (int i = 0; i < 200 && failures == 0; ++i) {
    RandomGraphOptions o;
    o.n = 4 + i % 27;
    o.m = o.n + 1 + (i * 7) % (o.n + 2);
    const RootedGraph rg = gen_random_biconnected(o, static_cast<std::uint64_t>(1000 + i));
    MinBasisOptions naive;
    naive.tiebreak = TieBreakPolicy::none;
    if (!min_weight_rooted_basis(rg, naive).ok()) ++failures;
    expect_sound(rg, min_weight_rooted_basis(rg));
  }
  EXPECT_GT(failures, 0);
}

TEST(MinWeightRootedBasis, AssertEarsHoldsOnRandomGraphs) {
  for (std::uint64_t seed = 1; seed <= 150; ++seed) {
    RandomGraphOptions o;
    o.n = 8 + static_cast<int>(seed % 30);
    o.m = o.n + 3 + static_cast<int>(seed % 25);
    o.max_weight = seed % 2 ? 1 : 4;
    o.allow_parallel = seed % 5 == 0;
    MinBasisOptions opt;
    opt.assert_ears = true;
    const RootedGraph rg = gen_random_biconnected(o, seed);
    EXPECT_NO_THROW(expect_sound(rg, min_weight_rooted_basis(rg, opt))) << "seed " << seed;
  }
}
