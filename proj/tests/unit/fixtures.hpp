#pragma once

#include <fstream>
#include <sstream>
#include <string>

#ifndef IDBENCH_FIXTURES
#error "IDBENCH_FIXTURES must point at tests/fixtures"
#endif

inline std::string fixture(const std::string& name) { return std::string(IDBENCH_FIXTURES) + "/" + name; }

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}
