#include "normgraph/graph.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "normgraph/errors.hpp"

namespace normgraph {

uint64_t AdjacencyMatrix::degree(uint32_t u) const {
    uint64_t d = 0;
    for (uint64_t w : row(u)) d += std::popcount(w);
    return d;
}

uint64_t AdjacencyMatrix::edge_count() const {
    uint64_t total = 0;
    for (uint64_t w : bits_) total += std::popcount(w);
    return total / 2;
}

NormGraph NormGraph::build(uint32_t p, uint32_t h, uint32_t t, uint64_t vertex_cap) {
    NormGraph g;
    g.ctx_ = std::make_shared<const FieldCtx>(p, h, t);
    const FieldCtx& F = *g.ctx_;

    const uint64_t n_a = F.big_order();
    const uint64_t n_alpha = F.q() - 1;
    const uint64_t n_g = n_a * n_alpha;
    if (n_g > vertex_cap)
        throw CapacityError("NormGraph::build: vertex count " + std::to_string(n_g) +
                            " exceeds cap " + std::to_string(vertex_cap));

    // Nonzero subfield elements in canonical order, plus a rank -> alpha
    // slot lookup for adjacency fill.
    std::vector<FieldElement> alphas;
    std::vector<uint32_t> alpha_slot(n_a, UINT32_MAX);
    for (const FieldElement& s : F.subfield_elements())
        if (!s.is_zero()) {
            alpha_slot[F.rank(s)] = uint32_t(alphas.size());
            alphas.push_back(s);
        }

    g.vertices_.reserve(n_g);
    for (uint64_t ra = 0; ra < n_a; ++ra) {
        FieldElement a = F.element(ra);
        for (uint32_t i = 0; i < n_alpha; ++i)
            g.vertices_.push_back(Vertex{a, alphas[i], uint32_t(g.vertices_.size())});
    }

    // Norm of every a-class sum, by rank.
    std::vector<uint64_t> norm_rank(n_a);
    for (uint64_t r = 0; r < n_a; ++r) norm_rank[r] = F.rank(F.norm(F.element(r)));

    std::vector<FieldElement> alpha_inv(n_alpha);
    for (uint32_t i = 0; i < n_alpha; ++i) alpha_inv[i] = F.inv(alphas[i]);

    // Between two a-classes the defining equation N(a+a') = alpha*alpha'
    // pairs each alpha with exactly one alpha' (a matching), or yields no
    // edges at all when a+a' = 0. Within a class the matching's fixed
    // points alpha^2 = N(2a) are the discarded self-loops.
    g.adj_ = AdjacencyMatrix(uint32_t(n_g));
    for (uint64_t ra = 0; ra < n_a; ++ra) {
        const FieldElement a = F.element(ra);
        for (uint64_t rb = ra; rb < n_a; ++rb) {
            const uint64_t sum_rank = F.rank(F.add(a, F.element(rb)));
            const uint64_t nu = norm_rank[sum_rank];
            if (nu == 0) continue; // a' = -a: norm vanishes, no edges
            const FieldElement nu_elem = F.element(nu);
            for (uint32_t i = 0; i < n_alpha; ++i) {
                const uint32_t j = alpha_slot[F.rank(F.mul(nu_elem, alpha_inv[i]))];
                const uint32_t u = uint32_t(ra * n_alpha + i);
                const uint32_t v = uint32_t(rb * n_alpha + j);
                if (u == v) {
                    ++g.loops_discarded_;
                    continue;
                }
                if (ra == rb && u > v) continue; // matching visits each intra-class pair twice
                g.adj_.add_edge(u, v);
            }
        }
    }
    return g;
}

uint32_t NormGraph::vertex_index(const FieldElement& a, const FieldElement& alpha) const {
    if (alpha.is_zero() || !ctx_->in_subfield(alpha))
        throw std::invalid_argument("NormGraph::vertex_index: alpha must be in F_q*");
    const uint64_t ra = ctx_->rank(a);
    const uint64_t target = ctx_->rank(alpha);
    const uint32_t per = alphas_per_class();
    for (uint32_t i = 0; i < per; ++i) {
        uint32_t idx = uint32_t(ra * per + i);
        if (ctx_->rank(vertices_[idx].alpha) == target) return idx;
    }
    throw std::logic_error("NormGraph::vertex_index: alpha not found");
}

std::vector<uint32_t> NormGraph::common_neighborhood(std::span<const uint32_t> s) const {
    if (s.empty())
        throw std::invalid_argument("common_neighborhood: empty set has no defined universe");
    const size_t words = adj_.words_per_row();
    std::vector<uint64_t> acc(adj_.row(s[0]).begin(), adj_.row(s[0]).end());
    for (size_t k = 1; k < s.size(); ++k) {
        auto r = adj_.row(s[k]);
        for (size_t w = 0; w < words; ++w) acc[w] &= r[w];
    }
    std::vector<uint32_t> out;
    for (size_t w = 0; w < words; ++w) {
        uint64_t bits = acc[w];
        while (bits) {
            out.push_back(uint32_t(w * 64 + std::countr_zero(bits)));
            bits &= bits - 1;
        }
    }
    return out;
}

GraphStats NormGraph::stats() const {
    GraphStats st{};
    st.n = order();
    st.loops_discarded = loops_discarded_;
    st.min_degree = UINT64_MAX;
    uint64_t total = 0;
    for (uint32_t v = 0; v < order(); ++v) {
        uint64_t d = degree(v);
        total += d;
        st.min_degree = std::min(st.min_degree, d);
        st.max_degree = std::max(st.max_degree, d);
    }
    st.m = total / 2;
    const double t = double(ctx_->t());
    st.density_ratio = double(st.m) / (0.5 * std::pow(double(st.n), 2.0 - 1.0 / t));
    return st;
}

double kst_upper_bound(uint64_t n, uint64_t s, uint64_t t) {
    if (t < 2 || s < t || n < 1)
        throw std::invalid_argument("kst_upper_bound: need s >= t >= 2, n >= 1");
    const double td = double(t);
    return 0.5 * std::pow(double(s - 1), 1.0 / td) * std::pow(double(n), 2.0 - 1.0 / td) +
           0.5 * (td - 1.0) * double(n);
}

} // namespace normgraph
