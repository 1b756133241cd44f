#include "agf/image.hpp"

#include "agf/errors.hpp"

namespace agf {

int reflect_index(int i, int n) {
    if (n <= 0) throw ConfigError("reflect_index: axis length must be positive");
    const int period = 2 * n;
    int k = i % period;
    if (k < 0) k += period;
    return k < n ? k : period - 1 - k;
}

std::vector<Patch> partition_into_patches(const Image& img, int m) {
    if (m < 2) throw ConfigError("patch size must be at least 2");
    if (img.height < 1 || img.width < 1) throw InputError("cannot partition an empty image");

    const int grid_rows = (img.height + m - 1) / m;
    const int grid_cols = (img.width + m - 1) / m;

    std::vector<Patch> patches;
    patches.reserve(static_cast<std::size_t>(grid_rows) * grid_cols);
    for (int gr = 0; gr < grid_rows; ++gr) {
        for (int gc = 0; gc < grid_cols; ++gc) {
            Patch p(m, gr * m, gc * m);
            for (int r = 0; r < m; ++r) {
                const int src_r = reflect_index(p.origin_row + r, img.height);
                for (int c = 0; c < m; ++c) {
                    const int src_c = reflect_index(p.origin_col + c, img.width);
                    p.at(r, c) = img.at(src_r, src_c);
                }
            }
            patches.push_back(std::move(p));
        }
    }
    return patches;
}

Image reassemble_patches(const std::vector<Patch>& patches, int height, int width) {
    if (height < 1 || width < 1) throw InputError("target image dimensions must be positive");
    Image out(height, width);
    for (const Patch& p : patches) {
        for (int r = 0; r < p.m; ++r) {
            const int dst_r = p.origin_row + r;
            if (dst_r < 0 || dst_r >= height) continue;
            for (int c = 0; c < p.m; ++c) {
                const int dst_c = p.origin_col + c;
                if (dst_c < 0 || dst_c >= width) continue;
                out.at(dst_r, dst_c) = p.at(r, c);
            }
        }
    }
    return out;
}

Eigen::VectorXd patch_vector(const Patch& p) {
    return Eigen::Map<const Eigen::VectorXd>(p.values.data(),
                                             static_cast<Eigen::Index>(p.values.size()));
}

void set_patch_values(Patch& p, const Eigen::VectorXd& x) {
    if (x.size() != static_cast<Eigen::Index>(p.values.size()))
        throw InputError("signal length does not match the patch");
    Eigen::Map<Eigen::VectorXd>(p.values.data(), x.size()) = x;
}

} // namespace agf
