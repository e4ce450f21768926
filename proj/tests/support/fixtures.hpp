#pragma once

#include <string>

#include "clbs/graph.hpp"
#include "clbs/rational.hpp"

#ifndef CLBS_SOURCE_DIR
#define CLBS_SOURCE_DIR "."
#endif

namespace clbs::testing {

inline std::string source_path(const std::string& rel) {
  return std::string(CLBS_SOURCE_DIR) + "/" + rel;
}

inline SeparatedGraph example1() {
  return load_graph_file(source_path("data/example1.json"));
}

inline Rational q(std::int64_t n, std::int64_t d = 1) { return Rational(n, d); }

}  // namespace clbs::testing
