#pragma once

#include "agf/pixelgraph.hpp"

#include <vector>

namespace agf {

/// Which structural half of the 8-connected lattice a subgraph keeps.
enum class SubgraphKind {
    hv,   // horizontal + vertical edges
    diag, // the two diagonal directions
};

/// The two bipartite subgraphs of an 8-connected lattice graph, plus the
/// two-colorings certifying bipartiteness. Vertex sets coincide with the
/// original graph; edge sets partition it.
struct BipartitePair {
    WeightedGraph hv;
    WeightedGraph diag;
    std::vector<int> coloring_hv;   // label per node, 0 = partite A, 1 = partite B
    std::vector<int> coloring_diag;
};

/// Exact lattice colorings:
///   hv:   label(row, col) = (row + col) mod 2 — every horizontal or
///         vertical step flips exactly one coordinate's parity;
///   diag: label(row, col) = col mod 2 — every diagonal step flips the
///         column parity.
std::vector<int> checkerboard_coloring(int m, SubgraphKind which);

/// Split an 8-connected lattice graph into its HV and diagonal subgraphs
/// by edge offset: {(0,±1),(±1,0)} -> hv, {(±1,±1)} -> diag. Weights pass
/// through unchanged; an edge with any other offset is a MalformedGraph
/// error. |hv| = 2m(m-1) and |diag| = 2(m-1)^2.
BipartitePair split_hv_diag(const WeightedGraph& g, int m);

/// True iff every edge of `g` joins nodes of different colors.
bool verify_bipartite(const WeightedGraph& g, const std::vector<int>& coloring);

} // namespace agf
