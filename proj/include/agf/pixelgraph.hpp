#pragma once

#include "agf/image.hpp"

#include <Eigen/Core>
#include <Eigen/SparseCore>
#include <cstdint>
#include <string>
#include <vector>

namespace agf {

/// Per-pixel feature vectors for one patch: row i holds the feature of
/// lattice node i (row-major node order), so an m x m patch yields an
/// (m*m) x F matrix.
using FeatureMap = Eigen::MatrixXd;

enum class FeatureKind {
    intensity,        // N = 1: intensity scaled to [0, 1]
    intensity_coords, // N = 3: scaled intensity, row/m, col/m
    external,         // N arbitrary: loaded from a feature file
};

/// Built-in feature providers. Intensity is scaled by 1/255 into [0, 1];
/// coordinates are divided by the patch side m, landing in [0, 1), so
/// feature distances stay O(1) for every patch size. `external` carries no
/// data of its own and must be resolved by the caller (ConfigError here).
FeatureMap compute_features(const Patch& p, FeatureKind kind);

/// Smallest admissible edge weight. exp(-d/(2 eps^2)) underflows for
/// distant features; flooring keeps every degree strictly positive so the
/// normalized Laplacian is well defined.
inline constexpr double kWeightFloor = 1e-8;

/// Gaussian affinity between two feature vectors:
///   w = max(exp(-||fi - fj||^2 / (2 eps^2)), floor).
double edge_weight(const Eigen::VectorXd& fi, const Eigen::VectorXd& fj, double epsilon);

struct Edge {
    int i = 0;
    int j = 0;
    double w = 0.0;
};

/// Undirected weighted graph. Lattice graphs carry their side length;
/// generic graphs (random test graphs, triangles) use side = 0. Edges are
/// stored once with i < j.
struct WeightedGraph {
    int side = 0;  // lattice side m, or 0 for non-lattice graphs
    int nodes = 0; // node count (side * side when on a lattice)
    std::vector<Edge> edges;
};

/// 8-connected lattice graph: every pixel links to its horizontal,
/// vertical, and diagonal neighbours, weighted by edge_weight on the
/// supplied features.
WeightedGraph build_8connected_graph(const FeatureMap& features, int side, double epsilon);

enum class LaplacianKind {
    combinatorial, // L = D - W
    normalized,    // Ln = I - D^{-1/2} W D^{-1/2}
};

struct Laplacian {
    LaplacianKind kind = LaplacianKind::combinatorial;
    Eigen::SparseMatrix<double> matrix;
    Eigen::VectorXd degree; // weighted degree of every node
};

Laplacian laplacian(const WeightedGraph& g, LaplacianKind kind);

/// Upper bound on the largest eigenvalue. For the combinatorial Laplacian
/// this is the Gershgorin row bound max_i (L_ii + sum_{j != i} |L_ij|),
/// which equals 2 * max degree. For the normalized Laplacian the row bound
/// is intersected with the spectral bound lambda_max <= 2 (weighted row
/// sums can exceed 2 even though the spectrum cannot), so the result is
/// always <= 2.
double gershgorin_bound(const Laplacian& lap);

/// --- feature files -------------------------------------------------------
/// Binary layout: magic "AGFF", then rows M and cols N as little-endian
/// uint32, then M*N little-endian float32 in row-major order.

void write_feature_file(const std::string& path, const FeatureMap& features);
FeatureMap read_feature_file(const std::string& path);

/// Path of the per-patch feature file for patch `index` given a stem:
/// "<stem>_k<index>.agff".
std::string feature_file_path(const std::string& stem, int index);

} // namespace agf
