#pragma once

// Line-oriented text serialization.
//
//   host:      header "n r" with r >= 1, then one line "u v c" per edge,
//              c in 1..r, edges lexicographic with u < v.
//   pattern:   header "n 0", then one line "u v" per edge, lexicographic.
//   embedding: one line "p h" per pattern vertex, p ascending.
//
// Writers emit the canonical form; parse errors throw std::invalid_argument
// with a line number.  Round-trips are bit-exact.

#include <iosfwd>
#include <string>

#include "gdisc/core.hpp"

namespace gdisc {

std::string write_host(const HostColouredGraph& host);
std::string write_pattern(const PatternGraph& g);
std::string write_embedding(const Embedding& emb);

HostColouredGraph read_host(const std::string& text);
PatternGraph read_pattern(const std::string& text);
TreeGraph read_tree(const std::string& text);
Embedding read_embedding(const std::string& text);

// Whole-file helpers; throw std::runtime_error on I/O failure.
std::string slurp_file(const std::string& path);
void spew_file(const std::string& path, const std::string& content);

}  // namespace gdisc
