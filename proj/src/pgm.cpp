#include "agf/pgm.hpp"

#include "agf/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

namespace agf {

namespace {

// Next header token, skipping whitespace and '#' comments.
std::string next_token(std::istream& is, const std::string& path) {
    std::string tok;
    int ch;
    while ((ch = is.get()) != EOF) {
        if (ch == '#') {
            while ((ch = is.get()) != EOF && ch != '\n') {}
            continue;
        }
        if (std::isspace(ch)) {
            if (!tok.empty()) return tok;
            continue;
        }
        tok.push_back(static_cast<char>(ch));
    }
    if (tok.empty()) throw InputError("truncated PGM header: " + path);
    return tok;
}

int parse_positive(const std::string& tok, const std::string& what, const std::string& path) {
    std::size_t used = 0;
    int v = 0;
    try {
        v = std::stoi(tok, &used);
    } catch (const std::exception&) {
        throw InputError("bad " + what + " in PGM header: " + path);
    }
    if (used != tok.size() || v <= 0) throw InputError("bad " + what + " in PGM header: " + path);
    return v;
}

} // namespace

Image read_pgm(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw InputError("cannot open image: " + path);

    if (next_token(is, path) != "P5") throw InputError("not a binary PGM (P5): " + path);
    const int width = parse_positive(next_token(is, path), "width", path);
    const int height = parse_positive(next_token(is, path), "height", path);
    const int maxval = parse_positive(next_token(is, path), "maxval", path);
    if (maxval != 255) throw InputError("unsupported PGM maxval (only 255): " + path);
    // next_token consumed exactly one whitespace byte after the maxval, so
    // the raster starts here.

    Image img(height, width);
    std::vector<unsigned char> raw(img.size());
    if (!is.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size())))
        throw InputError("PGM pixel data truncated: " + path);
    char extra;
    if (is.read(&extra, 1)) throw InputError("PGM file has trailing bytes: " + path);
    for (std::size_t i = 0; i < raw.size(); ++i) img.values[i] = static_cast<double>(raw[i]);
    return img;
}

std::string pgm_bytes(const Image& img) {
    if (img.height < 1 || img.width < 1) throw InputError("cannot write an empty image");
    std::ostringstream os;
    os << "P5\n" << img.width << ' ' << img.height << "\n255\n";
    std::string bytes = os.str();
    bytes.reserve(bytes.size() + img.size());
    for (double v : img.values) {
        const long q = std::lround(v);
        bytes.push_back(static_cast<char>(std::clamp(q, 0L, 255L)));
    }
    return bytes;
}

void write_pgm(const std::string& path, const Image& img) {
    const std::string bytes = pgm_bytes(img);
    std::ofstream os(path, std::ios::binary);
    if (!os) throw InputError("cannot open image for writing: " + path);
    os.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!os) throw InputError("failed writing image: " + path);
}

} // namespace agf
