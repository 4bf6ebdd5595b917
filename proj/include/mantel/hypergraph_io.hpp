#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include "mantel/hypergraph.hpp"

namespace mantel {

// Text format: a header line "n k m", then m lines of k ascending
// space-separated vertex ids in canonical (lexicographic) edge order, every
// line terminated by LF. No comments, no blank lines.
//
// The reader accepts any edge order and vertex order within a line (both are
// canonicalised) but is otherwise strict: the header count must match the
// number of edge lines. Writing what was read yields the canonical bytes.

std::string to_text(const Hypergraph& h);
void write_text(std::ostream& os, const Hypergraph& h);

/// Throws InputError with the 1-based line number as item().
Hypergraph parse_text(std::string_view text);
Hypergraph read_text(std::istream& is);

Hypergraph load_hypergraph(const std::string& path);
void save_hypergraph(const std::string& path, const Hypergraph& h);

}  // namespace mantel
