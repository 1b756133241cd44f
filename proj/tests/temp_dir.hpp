#pragma once

#include <cstdlib>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

namespace agf_test {

/// RAII scratch directory under the system temp dir, removed on scope exit.
struct TempDir {
    std::filesystem::path path;

    TempDir() {
        const std::string templ =
            (std::filesystem::temp_directory_path() / "agf_test_XXXXXX").string();
        std::vector<char> buf(templ.begin(), templ.end());
        buf.push_back('\0');
        if (mkdtemp(buf.data()) == nullptr)
            throw std::runtime_error("mkdtemp failed for " + templ);
        path = buf.data();
    }

    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path, ec);
    }

    std::string file(const std::string& name) const { return (path / name).string(); }
};

} // namespace agf_test
