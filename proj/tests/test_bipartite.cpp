#include "agf/bipartite.hpp"
#include "agf/errors.hpp"
#include "agf/rng.hpp"

#include <doctest.h>

#include <map>
#include <utility>

using namespace agf;

namespace {

WeightedGraph random_lattice_graph(int m, std::uint64_t seed) {
    Rng rng(seed);
    Patch p(m);
    for (double& v : p.values) v = 255.0 * rng.uniform();
    const FeatureMap f = compute_features(p, FeatureKind::intensity_coords);
    return build_8connected_graph(f, m, 0.2);
}

} // namespace

TEST_CASE("checkerboard colorings follow the lattice parities") {
    const auto hv = checkerboard_coloring(3, SubgraphKind::hv);
    const auto diag = checkerboard_coloring(3, SubgraphKind::diag);
    REQUIRE(hv.size() == 9);
    REQUIRE(diag.size() == 9);
    for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 3; ++c) {
            CHECK(hv[static_cast<std::size_t>(node_index(r, c, 3))] == (r + c) % 2);
            CHECK(diag[static_cast<std::size_t>(node_index(r, c, 3))] == c % 2);
        }
    }
}

TEST_CASE("split_hv_diag partitions edges with exact counts") {
    for (const int m : {2, 3, 5, 24}) {
        const WeightedGraph g = random_lattice_graph(m, 100 + static_cast<std::uint64_t>(m));
        const BipartitePair split = split_hv_diag(g, m);

        CHECK(static_cast<int>(split.hv.edges.size()) == 2 * m * (m - 1));
        CHECK(static_cast<int>(split.diag.edges.size()) == 2 * (m - 1) * (m - 1));
        CHECK(split.hv.edges.size() + split.diag.edges.size() == g.edges.size());

        // Weights pass through unchanged and no edge is duplicated.
        std::map<std::pair<int, int>, double> original;
        for (const Edge& e : g.edges) original[{e.i, e.j}] = e.w;
        std::map<std::pair<int, int>, int> seen;
        for (const WeightedGraph* sub : {&split.hv, &split.diag}) {
            CHECK(sub->nodes == g.nodes);
            for (const Edge& e : sub->edges) {
                ++seen[{e.i, e.j}];
                REQUIRE(original.count({e.i, e.j}) == 1);
                CHECK(e.w == original[{e.i, e.j}]);
            }
        }
        for (const auto& [edge, count] : seen) {
            (void)edge;
            CHECK(count == 1);
        }

        CHECK(verify_bipartite(split.hv, split.coloring_hv));
        CHECK(verify_bipartite(split.diag, split.coloring_diag));
        CHECK(split.coloring_hv == checkerboard_coloring(m, SubgraphKind::hv));
        CHECK(split.coloring_diag == checkerboard_coloring(m, SubgraphKind::diag));
    }

    // The headline counts at m = 24: 1104 HV edges, 1058 diagonal edges.
    const BipartitePair split24 = split_hv_diag(random_lattice_graph(24, 1), 24);
    CHECK(split24.hv.edges.size() == 1104);
    CHECK(split24.diag.edges.size() == 1058);
}

TEST_CASE("non-lattice edges are rejected") {
    WeightedGraph g;
    g.side = 3;
    g.nodes = 9;
    g.edges = {{0, 5, 1.0}}; // offset (1, 2): not an 8-neighbour step
    CHECK_THROWS_AS(split_hv_diag(g, 3), MalformedGraph);

    WeightedGraph far;
    far.side = 3;
    far.nodes = 9;
    far.edges = {{0, 2, 1.0}}; // offset (0, 2)
    CHECK_THROWS_AS(split_hv_diag(far, 3), MalformedGraph);
}

TEST_CASE("verify_bipartite detects odd cycles") {
    WeightedGraph triangle;
    triangle.nodes = 3;
    triangle.edges = {{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 1.0}};
    // Every 2-coloring leaves some edge monochromatic.
    for (int mask = 0; mask < 8; ++mask) {
        const std::vector<int> coloring{mask & 1, (mask >> 1) & 1, (mask >> 2) & 1};
        CHECK_FALSE(verify_bipartite(triangle, coloring));
    }

    WeightedGraph path;
    path.nodes = 3;
    path.edges = {{0, 1, 1.0}, {1, 2, 1.0}};
    CHECK(verify_bipartite(path, {0, 1, 0}));
    CHECK_FALSE(verify_bipartite(path, {0, 0, 1}));
}
