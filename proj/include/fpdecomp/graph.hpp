#pragma once

// Simple undirected graphs: the basis-graph catalog, adjacency matrices,
// exact integer determinants, direct sums, and the two ingestion formats
// (graph6 and an edge-list text format).

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "fpdecomp/symmat.hpp"

namespace fpdecomp {

/// Simple undirected graph on vertices 0..n-1.  Edges are stored as sorted
/// (i, j) pairs with i < j; construction rejects loops and duplicates.
class Graph {
public:
    explicit Graph(int n) : n_(n) {
        if (n < 0) throw std::invalid_argument("Graph: negative vertex count");
    }
    Graph(int n, std::vector<std::pair<int, int>> edges);

    int n() const { return n_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    bool has_edge(int i, int j) const;

    friend bool operator==(const Graph&, const Graph&) = default;

private:
    int n_;
    std::vector<std::pair<int, int>> edges_;  // sorted, i < j
};

enum class CatalogId { K1, K2, K3, K4, K6, C5, B, D, X4, X5 };

/// Stable names used in CLI output: "K1".."K6", "C5", "B", "D", "X4", "X5".
const char* to_string(CatalogId id);

Graph complete_graph(int n);
Graph cycle_graph(int n);

/// Two triangles sharing a center vertex; integer determinant -4.
Graph bowtie_graph();

/// The 6-vertex, 11-edge graph with integer determinant 7: a 4-cycle
/// 0-1-2-3 with chord 1-3, vertex 4 adjacent to 0,1,3 and vertex 5
/// adjacent to 1,2,3.
Graph d_graph();

/// Catalog member for a fixed id; X4/X5 are prime-dependent and rejected.
Graph catalog_graph(CatalogId id);

SymMatrix adjacency(const Graph& g, PrimeModulus p);

/// Exact determinant over the integers (fraction-free Bareiss elimination).
/// For 0/1 matrices the Hadamard bound n^(n/2) stays far below 2^63 up to
/// n = 12; larger inputs are rejected.
std::int64_t int_determinant(const Graph& g);

constexpr int kIntDetMaxVertices = 12;

/// Disjoint union; adjacency is the block-diagonal direct sum.
Graph direct_sum(const std::vector<Graph>& parts);

/// graph6, standard variant without header, n < 63: one size byte n+63,
/// then the upper triangle read column by column (x_01, x_02, x_12, x_03,
/// ...) packed big-endian into 6-bit groups, each group + 63.  Parsing is
/// strict: exact length, bytes in [63, 126], zero padding bits.
Graph parse_graph6(const std::string& text);
std::string emit_graph6(const Graph& g);

/// Text format "n=<int>; <i>-<j>, <i>-<j>, ..." with 0-based vertices.
/// The edge list may be empty ("n=3" or "n=3;").  Loops, duplicate edges,
/// and out-of-range endpoints are rejected.
Graph parse_edge_list(const std::string& text);

namespace detail {
/// Fraction-free Bareiss determinant of a row-major n x n matrix, in place.
/// Exact for 0/1 matrices up to n = 12 in 64-bit arithmetic.
std::int64_t bareiss_inplace(int n, std::int64_t* a);
} // namespace detail

} // namespace fpdecomp
