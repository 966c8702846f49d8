#ifndef NORMGRAPH_GEOMETRY_HPP
#define NORMGRAPH_GEOMETRY_HPP

#include <cstdint>
#include <vector>

#include "normgraph/certificate.hpp"
#include "normgraph/gf.hpp"
#include "normgraph/graph.hpp"

namespace normgraph {

/// A vector of the (n+2)-dimensional ambient space over F_{q^(t-1)}, with
/// n = 2^(t-1)-1. Coordinate index i < n+1 corresponds to the subset S of
/// {0,...,t-2} with binary encoding i = sum_{j in S} 2^j, so the complement
/// subset sits at index n-i; index n+1 is the lifting coordinate.
using ProjVector = std::vector<FieldElement>;

/// Subspace given by a reduced-row-echelon basis; projective dimension is
/// rank - 1.
struct ProjSubspace {
    std::vector<ProjVector> basis;
    uint32_t rank() const { return uint32_t(basis.size()); }
};

/// Ambient coordinate count 2^(t-1)+1.
uint32_t ambient_size(const FieldCtx& F);

/// The tensor point of a: coordinate i carries prod_{j in S(i)} a^(q^j),
/// the empty set gives 1, and the lifting coordinate n+1 is 0.
ProjVector tensor_embed(const FieldCtx& F, const FieldElement& a);

/// tensor_embed(a) with coordinate n+1 set to alpha: the lift of a graph
/// vertex off the hyperplane x_{n+1} = 0.
ProjVector lift_vertex(const FieldCtx& F, const FieldElement& a, const FieldElement& alpha);
ProjVector lift_vertex(const FieldCtx& F, const Vertex& v);

/// The point at infinity (0,...,0,1).
ProjVector p_infinity(const FieldCtx& F);

/// beta(u,w) = sum_{i=0}^{n} u_i w_{n-i} - u_{n+1} w_{n+1}, the symmetric
/// bilinear form tying adjacency to orthogonality.
FieldElement beta(const FieldCtx& F, const ProjVector& u, const ProjVector& w);

/// Scales so the first nonzero coordinate is 1. Rejects the zero vector.
ProjVector normalize_point(const FieldCtx& F, const ProjVector& v);

/// RREF span of the given vectors; throws std::invalid_argument when all
/// are zero.
ProjSubspace span(const FieldCtx& F, const std::vector<ProjVector>& points);

/// beta-orthogonal complement; dim(span) + dim(perp) = n+2 and perp is an
/// involution since beta is nondegenerate.
ProjSubspace perp(const FieldCtx& F, const ProjSubspace& sub);

/// Membership: rank(basis + pt) = rank(basis). Rejects the zero vector.
bool contains(const FieldCtx& F, const ProjSubspace& sub, const ProjVector& pt);

/// The q^(t-1)+1 points of the twisted-conjugate curve: every tensor_embed(a)
/// plus the point with all mass on the full-subset coordinate n.
std::vector<ProjVector> variety_points(const FieldCtx& F, uint64_t cap = 10'000'000);

/// Verifies every t-subset of the variety has full rank t. Refuses subset
/// counts above the budget.
GeometryCertificate check_general_position(const FieldCtx& F, uint64_t budget = 10'000'000);

/// For every (t+1)-subset spanning projective dimension t-1, counts variety
/// points inside the span and asserts exactly q+1; subsets of full rank are
/// skipped and tallied.
GeometryCertificate check_span_property(const FieldCtx& F, uint64_t budget = 10'000'000);

/// Common neighbors computed geometrically: span the lifts of X, take the
/// beta-perp, return the vertices whose lift lies inside, excluding X.
/// Set-equal to NormGraph::common_neighborhood.
std::vector<uint32_t> geometric_common_neighbors(const NormGraph& g,
                                                 std::span<const uint32_t> x);

/// adjacency(u,v) <=> beta(lift u, lift v) = 0 over vertex pairs; the
/// diagonal pairs check the discarded-loop condition instead. Exhaustive
/// when the pair count fits the budget, otherwise `samples` seeded pairs.
GeometryCertificate check_beta_identity(const NormGraph& g, uint64_t samples = 10'000,
                                        uint64_t seed = 1, uint64_t budget = 10'000'000);

/// geometric_common_neighbors == common_neighborhood on seeded random
/// subsets of sizes t and t+1.
GeometryCertificate check_neighborhood_equality(const NormGraph& g, uint64_t trials = 100,
                                                uint64_t seed = 1);

} // namespace normgraph

#endif
