#pragma once

#include <fstream>
#include <iterator>
#include <string>

#include "splice/json_io.hpp"

inline std::string fixture_path(const std::string& name) { return std::string(SPLICE_FIXTURES) + "/" + name; }

inline std::string read_fixture(const std::string& name) {
    std::ifstream in(fixture_path(name), std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline splice::SpliceDiagram load_fixture(const std::string& name) { return splice::parse_diagram(read_fixture(name)); }
