#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "netgof/graph.hpp"

namespace netgof {

// Whitespace-separated "i j" pairs, one per line. Lines starting with '#' are
// comments; the canonical writer emits a leading "# n=<count>" directive that
// the reader honours when no explicit node count is supplied, so isolated
// nodes survive a round trip. Duplicate and reversed pairs collapse.
Graph read_edge_list(std::istream& in, std::optional<int> n = std::nullopt);
Graph read_edge_list_file(const std::string& path, std::optional<int> n = std::nullopt);

void write_edge_list(const Graph& g, std::ostream& out);
std::string edge_list_text(const Graph& g);

} // namespace netgof
