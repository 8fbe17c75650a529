#include <gtest/gtest.h>

#include <sstream>

#include "rcb/generators.hpp"
#include "rcb/io.hpp"
#include "rcb/min_basis.hpp"

using namespace rcb;

namespace {

std::string graph_text(const RootedGraph& rg, const PlaneEmbedding* pe = nullptr) {
  std::ostringstream out;
  io::write_graph(out, rg, pe);
  return out.str();
}

}  // namespace

TEST(ReadGraph, Basic) {
  const auto gf = io::read_graph_string("# triangle\n3 3 1\n0 1 1\n\n1 2 5\n2 0 7\n");
  EXPECT_EQ(gf.rooted.root(), 1);
  EXPECT_EQ(gf.rooted.graph().edge_count(), 3);
  EXPECT_EQ(gf.rooted.graph().weight(2), 7);
  EXPECT_FALSE(gf.embedding);
}

TEST(ReadGraph, Errors) {
  EXPECT_THROW(io::read_graph_string(""), InvalidInput);
  EXPECT_THROW(io::read_graph_string("3 3\n"), InvalidInput);
  EXPECT_THROW(io::read_graph_string("3 3 3\n0 1 1\n1 2 1\n2 0 1\n"), InvalidInput);
  EXPECT_THROW(io::read_graph_string("3 3 0\n0 1 1\n1 2 1\n"), InvalidInput);
  EXPECT_THROW(io::read_graph_string("3 1 0\n0 5 1\n"), InvalidInput);
  EXPECT_THROW(io::read_graph_string("3 1 0\n0 1 0\n"), InvalidInput);
  EXPECT_THROW(io::read_graph_string("3 1 0\n0 1 x\n"), InvalidInput);
  EXPECT_THROW(io::read_graph_string("3 1 0\n0 1 1\nextra\n"), InvalidInput);
  EXPECT_THROW(io::read_graph_string("3 2 0\n0 1 1\n1 2 1\nrot:\n0\n"), InvalidInput);
  try {
    io::read_graph_string("2 2 0\n0 1 1\n0 1 -4\n");
    FAIL();
  } catch (const InvalidInput& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
  }
}

TEST(ReadGraph, RotationSection) {
  const auto gf = io::read_graph_string("3 3 0\n0 1 1\n1 2 1\n2 0 1\nrot:\n0 2\n1 0\n2 1\n");
  ASSERT_TRUE(gf.embedding);
  EXPECT_EQ(gf.embedding->face_count(), 2);
  EXPECT_THROW(io::read_graph_string("3 3 0\n0 1 1\n1 2 1\n2 0 1\nrot:\n0 2\n1 0\n2 0\n"), InvalidEmbedding);
}

TEST(WriteGraph, RoundTrip) {
  RandomGraphOptions o;
  o.n = 15;
  o.m = 30;
  o.max_weight = 1000;
  o.allow_parallel = true;
  const RootedGraph rg = gen_random_biconnected(o, 3);
  const auto back = io::read_graph_string(graph_text(rg));
  EXPECT_EQ(graph_text(back.rooted), graph_text(rg));

  for (const PlaneInstance& pi : plane_catalogue()) {
    const RootedGraph prg(pi.embedding.graph, 0);
    const std::string text = graph_text(prg, &pi.embedding);
    const auto gf = io::read_graph_string(text);
    ASSERT_TRUE(gf.embedding) << pi.name;
    EXPECT_EQ(gf.embedding->faces, pi.embedding.faces) << pi.name;
    EXPECT_EQ(graph_text(gf.rooted, &*gf.embedding), text);
  }
}

TEST(WriteGraph, LoopRotation) {
  // A loop is listed twice around its vertex.
  const auto gf = io::read_graph_string("2 3 0\n0 1 1\n0 1 1\n1 1 1\nrot:\n0 1\n1 2 2 0\n");
  ASSERT_TRUE(gf.embedding);
  const auto again = io::read_graph_string(graph_text(gf.rooted, &*gf.embedding));
  EXPECT_EQ(again.embedding->faces, gf.embedding->faces);
}

TEST(BasisFile, RoundTrip) {
  const RootedGraph rg = gen_ladder(6);
  const MinBasisResult r = min_weight_rooted_basis(rg);
  std::ostringstream out;
  io::write_basis(out, r.basis, r.rank, r.dimension);
  EXPECT_NE(out.str().find("cycles=5 total_weight=40 rank=5 dim=5"), std::string::npos);
  std::istringstream in(out.str());
  const io::ResultFile back = io::read_result(in);
  ASSERT_TRUE(back.basis);
  EXPECT_FALSE(back.tree);
  ASSERT_EQ(back.basis->size(), r.basis.size());
  for (std::size_t i = 0; i < r.basis.size(); ++i) {
    EXPECT_EQ(back.basis->cycles[i].edges, r.basis.cycles[i].edges);
    EXPECT_EQ(back.basis->cycles[i].weight, r.basis.cycles[i].weight);
    EXPECT_EQ(back.basis->witness_edges[i], r.basis.witness_edges[i]);
  }
}

TEST(ResultFile, TreeAndErrors) {
  std::ostringstream out;
  io::write_tree(out, {0, 2, 5});
  EXPECT_EQ(out.str(), "tree: 0 2 5\n");
  std::istringstream in(out.str());
  EXPECT_EQ(io::read_result(in).tree, (std::vector<EdgeId>{0, 2, 5}));

  auto parse = [](const std::string& s) {
    std::istringstream is(s);
    return io::read_result(is);
  };
  EXPECT_THROW(parse(""), InvalidInput);
  EXPECT_THROW(parse("tree: 0 1\nweight=3 witness=- edges: 0 1 2\n"), InvalidInput);
  EXPECT_THROW(parse("weight=3 edges: 0 1 2\n"), InvalidInput);
  EXPECT_THROW(parse("weight=x witness=1 edges: 0 1 2\n"), InvalidInput);
  EXPECT_THROW(parse("hello\n"), InvalidInput);
  const auto b = parse("weight=3 witness=- edges: 2 0 1\n");
  EXPECT_EQ(b.basis->cycles[0].edges, (std::vector<EdgeId>{0, 1, 2}));
  EXPECT_FALSE(b.basis->witness_edges[0]);
}
