#include <gtest/gtest.h>

#include <map>
#include <set>

#include "test_graphs.hpp"
#include "vne/synthetic.hpp"

using namespace vne;
using namespace vne::test;

namespace {

// Two labelings define the same partition of the nodes.
bool same_partition(const std::vector<int>& a, const std::vector<int>& b) {
  if (a.size() != b.size()) return false;
  std::map<int, int> ab, ba;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (ab.emplace(a[i], b[i]).first->second != b[i]) return false;
    if (ba.emplace(b[i], a[i]).first->second != a[i]) return false;
  }
  return true;
}

std::size_t distinct(const std::vector<int>& xs) { return std::set<int>(xs.begin(), xs.end()).size(); }

}  // namespace

TEST(Orbits, SmallGraphs) {
  EXPECT_EQ(automorphism_orbits(path(4)), (std::vector<int>{0, 1, 1, 0}));
  EXPECT_EQ(automorphism_orbits(star(3)), (std::vector<int>{0, 1, 1, 1}));
  EXPECT_EQ(distinct(automorphism_orbits(cycle(7))), 1u);
  // Fixing an end of P4 splits everything.
  EXPECT_EQ(automorphism_orbits(path(4), NodeId{0}), (std::vector<int>{0, 1, 2, 3}));
}

TEST(Barbell, DefaultCounts) {
  const auto ds = barbell();
  EXPECT_EQ(ds.graph.num_nodes(), 27u);
  EXPECT_EQ(ds.graph.num_edges(), 98u);
  EXPECT_EQ(ds.num_classes(), 6u);
  EXPECT_EQ(ds.role_names.front(), "clique");
}

TEST(Barbell, RolesAreAutomorphismOrbits) {
  for (auto [k, p] : std::vector<std::pair<int, int>>{{3, 1}, {4, 2}, {4, 5}, {5, 1}}) {
    const auto ds = barbell(k, p);
    EXPECT_TRUE(same_partition(ds.roles, automorphism_orbits(ds.graph))) << k << "," << p;
  }
}

TEST(Barbell, RejectsTinyClique) { EXPECT_THROW(barbell(1, 2), ConfigError); }

TEST(Templates, AnchorIsASingletonOrbit) {
  for (Shape s : {Shape::house, Shape::fan, Shape::star}) {
    const auto& t = shape_template(s);
    const Graph g = Graph::from_edges(t.num_nodes, t.edges);
    const auto orbits = automorphism_orbits(g);
    EXPECT_EQ(std::count(orbits.begin(), orbits.end(), orbits[t.anchor]), 1) << t.name;
  }
}

TEST(Shapes, BasicHouseCounts) {
  const auto ds = shapes_on_cycle({});
  EXPECT_EQ(ds.graph.num_nodes(), 80u);
  EXPECT_EQ(ds.graph.num_edges(), 30u + 10u * 7u);
  EXPECT_EQ(ds.num_classes(), 5u);
  EXPECT_EQ(ds.roles.size(), 80u);
}

TEST(Shapes, LabelsMatchWholeGraphOrbitsWhenRegular) {
  // Two plain cycle nodes between attachments keep the layout symmetric.
  ShapeConfig cfg;
  cfg.cycle_len = 9;
  cfg.instances_per_shape = 3;
  for (Shape s : {Shape::house, Shape::fan, Shape::star}) {
    cfg.shapes = {s};
    const auto ds = shapes_on_cycle(cfg);
    EXPECT_TRUE(same_partition(ds.roles, automorphism_orbits(ds.graph))) << to_string(s);
  }
}

TEST(Shapes, VariedUsesEveryTemplate) {
  ShapeConfig cfg;
  cfg.shapes = {Shape::house, Shape::fan, Shape::star};
  cfg.placement = Placement::random;
  cfg.seed = 3;
  const auto ds = shapes_on_cycle(cfg);
  EXPECT_EQ(ds.graph.num_nodes(), 30u + 10u * (5 + 5 + 5));
  // Every cycle node carries a shape, so the plain-cycle class is absent.
  EXPECT_EQ(std::count(ds.role_names.begin(), ds.role_names.end(), "cycle"), 0);
  EXPECT_EQ(distinct(ds.roles), ds.num_classes());
}

TEST(Shapes, SeedDeterminism) {
  ShapeConfig cfg;
  cfg.placement = Placement::random;
  cfg.rewire_count = 5;
  cfg.seed = 17;
  const auto a = shapes_on_cycle(cfg), b = shapes_on_cycle(cfg);
  EXPECT_EQ(a.graph, b.graph);
  EXPECT_EQ(a.roles, b.roles);
  cfg.seed = 18;
  EXPECT_NE(shapes_on_cycle(cfg).graph, a.graph);
}

TEST(Shapes, RewireKeepsCountsAndLabels) {
  ShapeConfig cfg;
  const auto clean = shapes_on_cycle(cfg);
  cfg.rewire_count = 10;
  const auto noisy = shapes_on_cycle(cfg);
  EXPECT_EQ(noisy.graph.num_edges(), clean.graph.num_edges());
  EXPECT_EQ(noisy.roles, clean.roles);
  EXPECT_NE(noisy.graph, clean.graph);
  cfg.rewire_count = 1000;
  EXPECT_THROW(shapes_on_cycle(cfg), ConfigError);
}

TEST(Shapes, BatchUsesConsecutiveSeeds) {
  ShapeConfig cfg;
  cfg.placement = Placement::random;
  cfg.seed = 40;
  const auto batch = shapes_batch(cfg, 3);
  ASSERT_EQ(batch.size(), 3u);
  cfg.seed = 42;
  EXPECT_EQ(batch[2].graph, shapes_on_cycle(cfg).graph);
}

TEST(Rewire, PreservesCountsAndIsSeeded) {
  Rng rng(8);
  for (int t = 0; t < 10; ++t) {
    const Graph g = random_graph(rng, 5, 20);
    if (g.num_edges() == g.num_nodes() * (g.num_nodes() - 1) / 2) continue;
    const Graph h = rewire(g, 3, 99);
    EXPECT_EQ(h.num_nodes(), g.num_nodes());
    EXPECT_EQ(h.num_edges(), g.num_edges());
    EXPECT_EQ(h, rewire(g, 3, 99));
  }
  EXPECT_THROW(rewire(path(3), 3, 0), ConfigError);
  EXPECT_THROW(rewire(complete(4), 1, 0), GraphError);
  EXPECT_EQ(rewire(path(3), 0, 0), path(3));
}

TEST(Rewire, PathOfThreeClosesTheTriangle) {
  // The only non-edge of P3 is 0-2; one rewire removes one path edge and adds it.
  const Graph h = rewire(path(3), 1, 5);
  EXPECT_TRUE(h.has_edge(0, 2));
  EXPECT_EQ(h.num_edges(), 2u);
}

TEST(ErdosRenyi, DensityAndDeterminism) {
  const Graph g = erdos_renyi(2000, 0.005, 1);
  const double expected = 0.005 * 2000 * 1999 / 2;
  EXPECT_NEAR(static_cast<double>(g.num_edges()), expected, 5 * std::sqrt(expected));
  EXPECT_EQ(g, erdos_renyi(2000, 0.005, 1));
  EXPECT_EQ(erdos_renyi(10, 0.0, 1).num_edges(), 0u);
  EXPECT_EQ(erdos_renyi(10, 1.0, 1).num_edges(), 45u);
  EXPECT_THROW(erdos_renyi(10, 1.5, 1), ConfigError);
}

TEST(ShapeNames, Parse) {
  EXPECT_EQ(parse_shape("fan"), Shape::fan);
  EXPECT_THROW(parse_shape("hexagon"), ConfigError);
}
