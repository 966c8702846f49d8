#ifndef NORMGRAPH_GRAPH_IO_HPP
#define NORMGRAPH_GRAPH_IO_HPP

#include <string>

#include "normgraph/graph.hpp"

namespace normgraph {

enum class GraphFormat { graph6, dimacs };

/// Standard graph6 encoding of the adjacency matrix (upper triangle in
/// column order, 6-bit groups offset by 63). Supports n <= 258047; larger
/// graphs raise CapacityError.
std::string encode_graph6(const AdjacencyMatrix& g);
AdjacencyMatrix decode_graph6(const std::string& text);

/// DIMACS edge format: "p edge n m" header then one "e u v" line per edge,
/// endpoints 1-based, u < v.
std::string encode_dimacs(const AdjacencyMatrix& g);
AdjacencyMatrix decode_dimacs(const std::string& text);

std::string encode_graph(const AdjacencyMatrix& g, GraphFormat format);

} // namespace normgraph

#endif
