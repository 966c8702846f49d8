#ifndef NORMGRAPH_GRAPH_HPP
#define NORMGRAPH_GRAPH_HPP

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "normgraph/gf.hpp"

namespace normgraph {

/// Symmetric bit-matrix adjacency for a simple graph. Rows are contiguous
/// 64-bit words so common-neighborhood intersection is word-parallel AND.
class AdjacencyMatrix {
public:
    AdjacencyMatrix() = default;
    explicit AdjacencyMatrix(uint32_t n)
        : n_(n), words_(((size_t)n + 63) / 64), bits_(words_ * n, 0) {}

    uint32_t order() const { return n_; }
    size_t words_per_row() const { return words_; }

    void add_edge(uint32_t u, uint32_t v) {
        bits_[(size_t)u * words_ + v / 64] |= uint64_t(1) << (v % 64);
        bits_[(size_t)v * words_ + u / 64] |= uint64_t(1) << (u % 64);
    }
    bool test(uint32_t u, uint32_t v) const {
        return (bits_[(size_t)u * words_ + v / 64] >> (v % 64)) & 1;
    }
    std::span<const uint64_t> row(uint32_t u) const {
        return {bits_.data() + (size_t)u * words_, words_};
    }
    uint64_t degree(uint32_t u) const;
    uint64_t edge_count() const; // sum of degrees / 2

    bool operator==(const AdjacencyMatrix& o) const {
        return n_ == o.n_ && bits_ == o.bits_;
    }

private:
    uint32_t n_ = 0;
    size_t words_ = 0;
    std::vector<uint64_t> bits_;
};

struct Vertex {
    FieldElement a;     // in F_{q^(t-1)}
    FieldElement alpha; // in F_q, nonzero
    uint32_t index;     // rank under (a-lex, alpha-lex) order
};

struct GraphStats {
    uint64_t n;
    uint64_t m;
    uint64_t min_degree;
    uint64_t max_degree;
    uint64_t loops_discarded;
    double density_ratio; // m / (n^(2-1/t) / 2)
};

/// The norm graph: vertices (a, alpha) in F_{q^(t-1)} x F_q*, edges where
/// N(a+a') = alpha*alpha'. Self-adjacencies N(2a) = alpha^2 are discarded
/// (simple graph) but counted for the handshake audit. Immutable after
/// build; all queries are read-only and safe to share across threads.
class NormGraph {
public:
    static constexpr uint64_t kDefaultVertexCap = 20000;

    /// Throws CapacityError with the computed vertex count when
    /// q^(t-1)*(q-1) exceeds the cap; field parameter errors propagate.
    static NormGraph build(uint32_t p, uint32_t h, uint32_t t,
                           uint64_t vertex_cap = kDefaultVertexCap);

    const FieldCtx& ctx() const { return *ctx_; }
    uint32_t order() const { return adj_.order(); }
    const std::vector<Vertex>& vertices() const { return vertices_; }
    const Vertex& vertex(uint32_t i) const { return vertices_[i]; }
    uint64_t loops_discarded() const { return loops_discarded_; }

    const AdjacencyMatrix& adjacency() const { return adj_; }
    bool adjacent(uint32_t u, uint32_t v) const { return adj_.test(u, v); }
    uint64_t degree(uint32_t v) const { return adj_.degree(v); }

    /// Vertex index of (a, alpha); throws std::invalid_argument if alpha is
    /// zero or outside F_q.
    uint32_t vertex_index(const FieldElement& a, const FieldElement& alpha) const;

    /// Intersection of the neighbor rows of all members of s, as vertex
    /// indices in increasing order. Empty s is rejected.
    std::vector<uint32_t> common_neighborhood(std::span<const uint32_t> s) const;

    GraphStats stats() const;

    /// Number of distinct a-values (= q^(t-1)); vertices are grouped by a,
    /// q-1 per group, in canonical order.
    uint64_t a_classes() const { return ctx_->big_order(); }
    uint32_t alphas_per_class() const { return uint32_t(ctx_->q() - 1); }

private:
    NormGraph() = default;
    std::shared_ptr<const FieldCtx> ctx_;
    std::vector<Vertex> vertices_;
    AdjacencyMatrix adj_;
    uint64_t loops_discarded_ = 0;
};

/// Kovari-Sos-Turan bound (s-1)^(1/t)*n^(2-1/t)/2 + (t-1)*n/2 on the edge
/// count of a K_{t,s}-free graph, s >= t. Callers comparing against integer
/// edge counts apply slack 1e-9 upward.
double kst_upper_bound(uint64_t n, uint64_t s, uint64_t t);

} // namespace normgraph

#endif
