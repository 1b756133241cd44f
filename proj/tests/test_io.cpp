#include "agf/errors.hpp"
#include "agf/pgm.hpp"
#include "agf/report.hpp"
#include "agf/rng.hpp"
#include "temp_dir.hpp"

#include <doctest.h>

#include <cmath>
#include <fstream>
#include <limits>
#include <string>

using namespace agf;

namespace {

void write_bytes(const std::string& path, const std::string& bytes) {
    std::ofstream os(path, std::ios::binary);
    REQUIRE(os.good());
    os.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    REQUIRE(os.good());
}

} // namespace

TEST_CASE("pgm round-trips integer images exactly") {
    agf_test::TempDir tmp;
    Rng rng(1);
    Image img(13, 9);
    for (double& v : img.values) v = static_cast<double>(rng.uniform_int(256));

    const std::string path = tmp.file("img.pgm");
    write_pgm(path, img);
    const Image back = read_pgm(path);
    REQUIRE(back.height == 13);
    REQUIRE(back.width == 9);
    CHECK(back.values == img.values);
}

TEST_CASE("pgm writing rounds and clamps, reading does not rescale") {
    agf_test::TempDir tmp;
    Image img(1, 5);
    img.values = {-3.7, 0.49, 127.5, 254.51, 300.0};
    const std::string path = tmp.file("clamp.pgm");
    write_pgm(path, img);
    const Image back = read_pgm(path);
    CHECK(back.values == std::vector<double>{0.0, 0.0, 128.0, 255.0, 255.0});
}

TEST_CASE("pgm_bytes has the canonical P5 header") {
    Image img(2, 3, 7.0);
    const std::string bytes = pgm_bytes(img);
    const std::string header = "P5\n3 2\n255\n";
    REQUIRE(bytes.size() == header.size() + 6);
    CHECK(bytes.compare(0, header.size(), header) == 0);
    for (std::size_t i = header.size(); i < bytes.size(); ++i)
        CHECK(static_cast<unsigned char>(bytes[i]) == 7);
}

TEST_CASE("pgm header comments are skipped") {
    agf_test::TempDir tmp;
    const std::string path = tmp.file("comment.pgm");
    write_bytes(path, "P5 # magic\n# a full comment line\n3 # width\n2\n255\n\x01\x02\x03\x04\x05\x06");
    const Image img = read_pgm(path);
    REQUIRE(img.height == 2);
    REQUIRE(img.width == 3);
    CHECK(img.at(0, 0) == 1.0);
    CHECK(img.at(1, 2) == 6.0);
}

TEST_CASE("malformed pgm files raise InputError") {
    agf_test::TempDir tmp;
    const auto reject = [&tmp](const std::string& name, const std::string& bytes) {
        const std::string path = tmp.file(name);
        write_bytes(path, bytes);
        CHECK_THROWS_AS(read_pgm(path), InputError);
    };

    CHECK_THROWS_AS(read_pgm(tmp.file("missing.pgm")), InputError);
    reject("magic.pgm", "P2\n2 2\n255\n....");
    reject("maxval.pgm", std::string("P5\n2 2\n65535\n") + std::string(8, 'x'));
    reject("truncated.pgm", "P5\n2 2\n255\nabc"); // 3 of 4 pixel bytes
    reject("trailing.pgm", "P5\n2 2\n255\nabcde"); // one byte too many
    reject("nonsense.pgm", "P5\nx 2\n255\nabcd");
    reject("negative.pgm", "P5\n-2 2\n255\nabcd");
}

TEST_CASE("csv tables serialize and parse losslessly") {
    CsvTable t;
    t.header = {"file", "psnr_noisy", "psnr_out"};
    t.rows = {{"a.pgm", "14.150000", "18.000000"}, {"b.pgm", "NA", "NA"}};

    const std::string text = t.to_string();
    CHECK(text == "file,psnr_noisy,psnr_out\na.pgm,14.150000,18.000000\nb.pgm,NA,NA\n");

    const CsvTable back = parse_csv(text);
    CHECK(back == t);

    // CRLF input parses to the same table.
    std::string crlf = text;
    std::string with_cr;
    for (char ch : crlf) {
        if (ch == '\n') with_cr += "\r\n";
        else with_cr += ch;
    }
    CHECK(parse_csv(with_cr) == t);

    CHECK_THROWS_AS(parse_csv("a,b\n1\n"), InputError); // ragged row
}

TEST_CASE("format_metric is fixed-width with an inf sentinel") {
    CHECK(format_metric(std::numeric_limits<double>::infinity()) == "inf");
    CHECK(format_metric(14.1523456789) == "14.152346");
    CHECK(format_metric(0.0) == "0.000000");
    CHECK(format_metric(65025.0) == "65025.000000");
}

TEST_CASE("text files round-trip") {
    agf_test::TempDir tmp;
    const std::string path = tmp.file("notes.txt");
    const std::string text = "line one\nline two\n";
    write_text_file(path, text);
    CHECK(read_text_file(path) == text);
    CHECK_THROWS_AS(read_text_file(tmp.file("absent.txt")), InputError);
}
