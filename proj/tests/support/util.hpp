#pragma once

#include <fstream>
#include <iterator>
#include <stdexcept>
#include <string>

namespace testutil {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("test fixture missing: " + path);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline std::string fixture_path(const std::string& name) {
    return std::string(BIBSONIC_FIXTURE_DIR) + "/" + name;
}

inline std::string read_fixture(const std::string& name) { return read_file(fixture_path(name)); }

} // namespace testutil
