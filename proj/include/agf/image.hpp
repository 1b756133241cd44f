#pragma once

#include <Eigen/Core>
#include <vector>

namespace agf {

/// 2-D grayscale raster. Values are real intensities, nominally in
/// [0, 255]; noisy intermediates may leave that range and are not clipped.
struct Image {
    int height = 0;
    int width = 0;
    std::vector<double> values; // row-major, height*width

    Image() = default;
    Image(int h, int w, double fill = 0.0)
        : height(h), width(w), values(static_cast<std::size_t>(h) * w, fill) {}

    double& at(int r, int c) { return values[static_cast<std::size_t>(r) * width + c]; }
    double at(int r, int c) const { return values[static_cast<std::size_t>(r) * width + c]; }
    std::size_t size() const { return values.size(); }
};

/// m x m pixel patch cut from a source image. `origin` is the (row, col)
/// of its top-left pixel in the padded source grid.
struct Patch {
    int m = 0;
    int origin_row = 0;
    int origin_col = 0;
    std::vector<double> values; // row-major, m*m

    Patch() = default;
    explicit Patch(int side, int orow = 0, int ocol = 0)
        : m(side), origin_row(orow), origin_col(ocol),
          values(static_cast<std::size_t>(side) * side, 0.0) {}

    double& at(int r, int c) { return values[static_cast<std::size_t>(r) * m + c]; }
    double at(int r, int c) const { return values[static_cast<std::size_t>(r) * m + c]; }
    int nodes() const { return m * m; }
};

/// Node index i <-> lattice coordinate (row, col) under the fixed
/// row-major layout i = row * m + col.
inline int node_index(int row, int col, int m) { return row * m + col; }

/// Fold an out-of-range index back into [0, n) by symmetric reflection
/// (the boundary pixel is repeated: n, n+1, ... maps to n-1, n-2, ...).
int reflect_index(int i, int n);

/// Split `img` into non-overlapping m x m patches tiling a reflect-padded
/// copy whose dimensions are the smallest multiples of m covering the
/// image. Patches are returned in row-major grid order.
std::vector<Patch> partition_into_patches(const Image& img, int m);

/// Inverse of partition_into_patches: place every patch at its origin and
/// crop to height x width.
Image reassemble_patches(const std::vector<Patch>& patches, int height, int width);

Eigen::VectorXd patch_vector(const Patch& p);
void set_patch_values(Patch& p, const Eigen::VectorXd& x);

} // namespace agf
