#include "agf/bipartite.hpp"

#include "agf/errors.hpp"

#include <cstdlib>
#include <string>

namespace agf {

std::vector<int> checkerboard_coloring(int m, SubgraphKind which) {
    if (m < 2) throw ConfigError("lattice side must be at least 2");
    std::vector<int> labels(static_cast<std::size_t>(m) * m);
    for (int r = 0; r < m; ++r) {
        for (int c = 0; c < m; ++c) {
            labels[static_cast<std::size_t>(node_index(r, c, m))] =
                which == SubgraphKind::hv ? (r + c) % 2 : c % 2;
        }
    }
    return labels;
}

BipartitePair split_hv_diag(const WeightedGraph& g, int m) {
    if (m < 2) throw ConfigError("lattice side must be at least 2");
    if (g.nodes != m * m)
        throw ConfigError("graph node count does not match the lattice side");

    BipartitePair pair;
    pair.hv.side = pair.diag.side = m;
    pair.hv.nodes = pair.diag.nodes = g.nodes;
    pair.coloring_hv = checkerboard_coloring(m, SubgraphKind::hv);
    pair.coloring_diag = checkerboard_coloring(m, SubgraphKind::diag);

    for (const Edge& e : g.edges) {
        const int dr = std::abs(e.i / m - e.j / m);
        const int dc = std::abs(e.i % m - e.j % m);
        if ((dr == 0 && dc == 1) || (dr == 1 && dc == 0)) {
            pair.hv.edges.push_back(e);
        } else if (dr == 1 && dc == 1) {
            pair.diag.edges.push_back(e);
        } else {
            throw MalformedGraph("edge (" + std::to_string(e.i) + ", " + std::to_string(e.j) +
                                 ") is not an 8-neighbour lattice edge");
        }
    }

    if (!verify_bipartite(pair.hv, pair.coloring_hv) ||
        !verify_bipartite(pair.diag, pair.coloring_diag))
        throw MalformedGraph("lattice split produced a non-bipartite subgraph");
    return pair;
}

bool verify_bipartite(const WeightedGraph& g, const std::vector<int>& coloring) {
    if (coloring.size() != static_cast<std::size_t>(g.nodes))
        throw ConfigError("coloring does not cover every node");
    for (const Edge& e : g.edges) {
        if (coloring[static_cast<std::size_t>(e.i)] == coloring[static_cast<std::size_t>(e.j)])
            return false;
    }
    return true;
}

} // namespace agf
