#include "agf/synth.hpp"

#include "agf/errors.hpp"
#include "agf/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace agf {

namespace {

double quantized(double v) { return static_cast<double>(std::clamp<long>(std::lround(v), 0, 255)); }

} // namespace

Image synth_shapes(int size) {
    if (size < 8) throw ConfigError("synthetic images need size >= 8");
    Image img(size, size);
    const double s = size;
    for (int r = 0; r < size; ++r) {
        for (int c = 0; c < size; ++c) {
            double v = 30.0 + 150.0 * r / s; // vertical background gradient
            if (r >= size * 5 / 32 && r < size * 7 / 16 && c >= size / 8 && c < size * 15 / 32)
                v = 200.0;
            if (r >= size * 35 / 64 && r < size * 55 / 64 && c >= size / 4 && c < size * 25 / 32)
                v = 90.0;
            const double dr = r - 0.3 * s;
            const double dc = c - 0.72 * s;
            if (dr * dr + dc * dc < (0.17 * s) * (0.17 * s)) v = 230.0;
            img.at(r, c) = quantized(v);
        }
    }
    return img;
}

Image synth_waves(int size) {
    if (size < 8) throw ConfigError("synthetic images need size >= 8");
    Image img(size, size);
    constexpr double tau = 2.0 * std::numbers::pi;
    for (int r = 0; r < size; ++r) {
        for (int c = 0; c < size; ++c) {
            const double v = 127.5 + 60.0 * std::sin(tau * r / 37.0) +
                             40.0 * std::cos(tau * c / 23.0) +
                             25.0 * std::sin(tau * (r + c) / 51.0);
            img.at(r, c) = quantized(v);
        }
    }
    return img;
}

Image synth_mondrian(int size) {
    if (size < 8) throw ConfigError("synthetic images need size >= 8");
    Rng rng(0xA6F0B10C5EEDull);

    const auto cuts = [&rng, size]() {
        std::vector<int> edges{0};
        while (edges.back() < size) edges.push_back(edges.back() + size / 12 + rng.uniform_int(size / 4));
        edges.back() = size;
        return edges;
    };
    const std::vector<int> row_cuts = cuts();
    const std::vector<int> col_cuts = cuts();

    Image img(size, size);
    for (std::size_t br = 0; br + 1 < row_cuts.size(); ++br) {
        for (std::size_t bc = 0; bc + 1 < col_cuts.size(); ++bc) {
            const double v = 16.0 + 16.0 * rng.uniform_int(14);
            for (int r = row_cuts[br]; r < row_cuts[br + 1]; ++r)
                for (int c = col_cuts[bc]; c < col_cuts[bc + 1]; ++c) img.at(r, c) = v;
        }
    }
    return img;
}

std::vector<std::pair<std::string, Image>> synthetic_test_set(int size) {
    return {{"shapes", synth_shapes(size)},
            {"waves", synth_waves(size)},
            {"mondrian", synth_mondrian(size)}};
}

} // namespace agf
