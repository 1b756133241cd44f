#include "agf/pixelgraph.hpp"

#include "agf/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <vector>

namespace agf {

FeatureMap compute_features(const Patch& p, FeatureKind kind) {
    const int m = p.m;
    const int nodes = p.nodes();
    switch (kind) {
    case FeatureKind::intensity: {
        FeatureMap f(nodes, 1);
        for (int i = 0; i < nodes; ++i) f(i, 0) = p.values[static_cast<std::size_t>(i)] / 255.0;
        return f;
    }
    case FeatureKind::intensity_coords: {
        FeatureMap f(nodes, 3);
        for (int r = 0; r < m; ++r) {
            for (int c = 0; c < m; ++c) {
                const int i = node_index(r, c, m);
                f(i, 0) = p.at(r, c) / 255.0;
                f(i, 1) = static_cast<double>(r) / m;
                f(i, 2) = static_cast<double>(c) / m;
            }
        }
        return f;
    }
    case FeatureKind::external:
        throw ConfigError("external features must be loaded from a feature file");
    }
    throw ConfigError("unknown feature provider");
}

double edge_weight(const Eigen::VectorXd& fi, const Eigen::VectorXd& fj, double epsilon) {
    if (epsilon <= 0.0) throw ConfigError("kernel bandwidth epsilon must be positive");
    if (fi.size() != fj.size()) throw InputError("feature vectors differ in dimension");
    const double dist = (fi - fj).squaredNorm();
    const double w = std::exp(-dist / (2.0 * epsilon * epsilon));
    return std::max(w, kWeightFloor);
}

WeightedGraph build_8connected_graph(const FeatureMap& features, int side, double epsilon) {
    if (side < 2) throw ConfigError("lattice side must be at least 2");
    const int nodes = side * side;
    if (features.rows() != nodes)
        throw InputError("feature map row count does not match the lattice");

    WeightedGraph g;
    g.side = side;
    g.nodes = nodes;
    g.edges.reserve(static_cast<std::size_t>(4 * nodes));

    // Forward stencil: east, south, south-east, south-west. Every
    // undirected 8-neighbour edge is generated exactly once, with i < j.
    constexpr int kOffsets[4][2] = {{0, 1}, {1, 0}, {1, 1}, {1, -1}};
    for (int r = 0; r < side; ++r) {
        for (int c = 0; c < side; ++c) {
            const int i = node_index(r, c, side);
            for (const auto& d : kOffsets) {
                const int rr = r + d[0];
                const int cc = c + d[1];
                if (rr < 0 || rr >= side || cc < 0 || cc >= side) continue;
                const int j = node_index(rr, cc, side);
                const double w = edge_weight(features.row(i), features.row(j), epsilon);
                g.edges.push_back({i, j, w});
            }
        }
    }
    return g;
}

Laplacian laplacian(const WeightedGraph& g, LaplacianKind kind) {
    Eigen::VectorXd degree = Eigen::VectorXd::Zero(g.nodes);
    for (const Edge& e : g.edges) {
        degree[e.i] += e.w;
        degree[e.j] += e.w;
    }
    for (int i = 0; i < g.nodes; ++i) {
        if (degree[i] <= 0.0)
            throw NumericError("internal invariant violation: zero-degree node in Laplacian");
    }

    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(g.edges.size() * 2 + static_cast<std::size_t>(g.nodes));
    if (kind == LaplacianKind::combinatorial) {
        for (int i = 0; i < g.nodes; ++i) trip.emplace_back(i, i, degree[i]);
        for (const Edge& e : g.edges) {
            trip.emplace_back(e.i, e.j, -e.w);
            trip.emplace_back(e.j, e.i, -e.w);
        }
    } else {
        for (int i = 0; i < g.nodes; ++i) trip.emplace_back(i, i, 1.0);
        for (const Edge& e : g.edges) {
            const double v = -e.w / std::sqrt(degree[e.i] * degree[e.j]);
            trip.emplace_back(e.i, e.j, v);
            trip.emplace_back(e.j, e.i, v);
        }
    }

    Laplacian lap;
    lap.kind = kind;
    lap.degree = std::move(degree);
    lap.matrix.resize(g.nodes, g.nodes);
    lap.matrix.setFromTriplets(trip.begin(), trip.end());
    return lap;
}

double gershgorin_bound(const Laplacian& lap) {
    const auto& L = lap.matrix;
    Eigen::VectorXd radius = Eigen::VectorXd::Zero(L.rows());
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(L.rows());
    for (int k = 0; k < L.outerSize(); ++k) {
        for (Eigen::SparseMatrix<double>::InnerIterator it(L, k); it; ++it) {
            if (it.row() == it.col())
                diag[it.row()] = it.value();
            else
                radius[it.row()] += std::abs(it.value());
        }
    }
    const double rows = (diag + radius).maxCoeff();
    // Raw row sums of a weighted normalized Laplacian can exceed 2, but its
    // spectrum never does; report the tighter of the two upper bounds.
    if (lap.kind == LaplacianKind::normalized) return std::min(rows, 2.0);
    return rows;
}

namespace {

void put_u32_le(std::ostream& os, std::uint32_t v) {
    char b[4] = {static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff),
                 static_cast<char>((v >> 16) & 0xff), static_cast<char>((v >> 24) & 0xff)};
    os.write(b, 4);
}

std::uint32_t get_u32_le(std::istream& is, const std::string& path) {
    unsigned char b[4];
    if (!is.read(reinterpret_cast<char*>(b), 4))
        throw InputError("feature file truncated: " + path);
    return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
           (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

} // namespace

void write_feature_file(const std::string& path, const FeatureMap& features) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw InputError("cannot open feature file for writing: " + path);
    os.write("AGFF", 4);
    put_u32_le(os, static_cast<std::uint32_t>(features.rows()));
    put_u32_le(os, static_cast<std::uint32_t>(features.cols()));
    for (Eigen::Index r = 0; r < features.rows(); ++r) {
        for (Eigen::Index c = 0; c < features.cols(); ++c) {
            const float f = static_cast<float>(features(r, c));
            std::uint32_t bits;
            static_assert(sizeof(bits) == sizeof(f));
            std::memcpy(&bits, &f, sizeof(bits));
            put_u32_le(os, bits);
        }
    }
    if (!os) throw InputError("failed writing feature file: " + path);
}

FeatureMap read_feature_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw InputError("cannot open feature file: " + path);
    char magic[4];
    if (!is.read(magic, 4) || std::string(magic, 4) != "AGFF")
        throw InputError("not a feature file (bad magic): " + path);
    const std::uint32_t rows = get_u32_le(is, path);
    const std::uint32_t cols = get_u32_le(is, path);
    if (rows == 0 || cols == 0)
        throw InputError("feature file declares empty dimensions: " + path);

    FeatureMap f(rows, cols);
    for (std::uint32_t r = 0; r < rows; ++r) {
        for (std::uint32_t c = 0; c < cols; ++c) {
            const std::uint32_t bits = get_u32_le(is, path);
            float v;
            std::memcpy(&v, &bits, sizeof(v));
            f(r, c) = static_cast<double>(v);
        }
    }
    char extra;
    if (is.read(&extra, 1))
        throw InputError("feature file has trailing bytes: " + path);
    return f;
}

std::string feature_file_path(const std::string& stem, int index) {
    return stem + "_k" + std::to_string(index) + ".agff";
}

} // namespace agf
