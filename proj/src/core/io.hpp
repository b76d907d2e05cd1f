#pragma once

#include <string>

#include "core/box.hpp"
#include "core/secrecy.hpp"

namespace nsb {

// nsbox/1 document: {"format":"nsbox/1","inputs":[2,2],"outputs":[2,2],
// "p":[[[[...]]]]} with entries "n/d", decimal strings, or integers.
// Writers always emit lowest-terms "n/d"; the round trip is bit exact.
Box read_box(const std::string& text);
std::string write_box(const Box& b);

// nsbox3/1 document: adds "eve_inputs" and a 6-deep "q" indexed
// [x][y][z][a][b][e].
TripartiteBox read_tripartite(const std::string& text);
std::string write_tripartite(const TripartiteBox& t);

}  // namespace nsb
