// Fixture loading shared by the test binaries. CES_FIXTURES_DIR is injected
// by the build.
#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "ces/model_io.hpp"

inline std::string fixture_path(const std::string &name) {
  return std::string(CES_FIXTURES_DIR) + "/" + name;
}

inline std::string read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw std::runtime_error("cannot read " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

inline ces::EventStructure load_fixture(const std::string &name) {
  return ces::parse_model(read_file(fixture_path(name))).build();
}
