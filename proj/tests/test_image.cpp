#include "agf/errors.hpp"
#include "agf/image.hpp"
#include "agf/rng.hpp"

#include <doctest.h>

using namespace agf;

TEST_CASE("node_index follows row-major layout") {
    CHECK(node_index(0, 0, 24) == 0);
    CHECK(node_index(0, 12, 24) == 12);
    CHECK(node_index(1, 2, 24) == 26);
    CHECK(node_index(23, 23, 24) == 575);
}

TEST_CASE("reflect_index repeats the boundary pixel") {
    // In range: identity.
    for (int i = 0; i < 5; ++i) CHECK(reflect_index(i, 5) == i);
    // Past the end: n -> n-1, n+1 -> n-2, ...
    CHECK(reflect_index(5, 5) == 4);
    CHECK(reflect_index(6, 5) == 3);
    CHECK(reflect_index(9, 5) == 0);
    // Before the start: -1 -> 0, -2 -> 1.
    CHECK(reflect_index(-1, 5) == 0);
    CHECK(reflect_index(-2, 5) == 1);
    // Periodic with period 2n.
    CHECK(reflect_index(10, 5) == reflect_index(0, 5));
    CHECK(reflect_index(17, 5) == reflect_index(7, 5));
    CHECK_THROWS_AS(reflect_index(0, 0), ConfigError);
}

TEST_CASE("partition_into_patches validates arguments") {
    Image img(4, 4, 1.0);
    CHECK_THROWS_AS(partition_into_patches(img, 1), ConfigError);
    CHECK_THROWS_AS(partition_into_patches(Image(), 3), InputError);
}

TEST_CASE("partition covers a non-multiple image with reflect padding") {
    Image img(5, 5);
    for (int r = 0; r < 5; ++r)
        for (int c = 0; c < 5; ++c) img.at(r, c) = 10.0 * r + c;

    const auto patches = partition_into_patches(img, 3);
    REQUIRE(patches.size() == 4); // ceil(5/3)^2
    CHECK(patches[0].origin_row == 0);
    CHECK(patches[0].origin_col == 0);
    CHECK(patches[1].origin_row == 0);
    CHECK(patches[1].origin_col == 3);
    CHECK(patches[2].origin_row == 3);
    CHECK(patches[2].origin_col == 0);
    CHECK(patches[3].origin_row == 3);
    CHECK(patches[3].origin_col == 3);

    // Interior values copied verbatim.
    CHECK(patches[0].at(1, 2) == 12.0);
    // Out-of-range coordinates reflect: row/col 5 fold back to 4.
    CHECK(patches[1].at(0, 2) == img.at(0, 4)); // (0,5) -> (0,4)
    CHECK(patches[3].at(2, 2) == img.at(4, 4)); // (5,5) -> (4,4)
    CHECK(patches[3].at(2, 1) == img.at(4, 4)); // (5,4) -> (4,4)
}

TEST_CASE("partition/reassemble round-trips") {
    Rng rng(42);
    for (const auto [h, w, m] : {std::tuple{6, 9, 3}, {5, 7, 4}, {24, 24, 24}, {10, 3, 2}}) {
        Image img(h, w);
        for (double& v : img.values) v = 255.0 * rng.uniform();
        const auto patches = partition_into_patches(img, m);
        const Image back = reassemble_patches(patches, h, w);
        REQUIRE(back.height == h);
        REQUIRE(back.width == w);
        CHECK(back.values == img.values); // bit-exact copy-through
    }
}

TEST_CASE("patch_vector and set_patch_values round-trip") {
    Patch p(3);
    for (int i = 0; i < 9; ++i) p.values[static_cast<std::size_t>(i)] = i * 1.5;
    const Eigen::VectorXd v = patch_vector(p);
    REQUIRE(v.size() == 9);
    CHECK(v[4] == 6.0);

    Patch q(3);
    set_patch_values(q, v);
    CHECK(q.values == p.values);

    Eigen::VectorXd wrong(4);
    CHECK_THROWS_AS(set_patch_values(q, wrong), InputError);
}
