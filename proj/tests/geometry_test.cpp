#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <vector>

#include "normgraph/errors.hpp"
#include "normgraph/geometry.hpp"
#include "normgraph/graph.hpp"

using namespace normgraph;

namespace {

// Test-local rank oracle: Gaussian elimination without pivoting order
// tricks, independent of the library RREF.
uint32_t oracle_rank(const FieldCtx& F, std::vector<ProjVector> rows) {
    uint32_t rank = 0;
    const size_t ncols = rows.empty() ? 0 : rows[0].size();
    for (size_t col = 0; col < ncols; ++col) {
        uint32_t pivot = UINT32_MAX;
        for (uint32_t i = rank; i < rows.size(); ++i)
            if (!rows[i][col].is_zero()) {
                pivot = i;
                break;
            }
        if (pivot == UINT32_MAX) continue;
        std::swap(rows[rank], rows[pivot]);
        for (uint32_t i = rank + 1; i < rows.size(); ++i) {
            if (rows[i][col].is_zero()) continue;
            FieldElement f = F.mul(rows[i][col], F.inv(rows[rank][col]));
            for (size_t j = col; j < ncols; ++j)
                rows[i][j] = F.sub(rows[i][j], F.mul(f, rows[rank][j]));
        }
        ++rank;
    }
    return rank;
}

ProjVector random_vector(const FieldCtx& F, uint32_t len, std::mt19937_64& rng) {
    ProjVector v(len);
    for (uint32_t i = 0; i < len; ++i) v[i] = F.element(rng() % F.big_order());
    return v;
}

} // namespace

TEST_CASE("tensor embedding at t=3 expands to (1, a, a^q, a^(1+q), 0)") {
    FieldCtx F(3, 1, 3);
    const FieldElement x = F.element(3);
    ProjVector v = tensor_embed(F, x);
    REQUIRE(v.size() == 5);
    CHECK(v[0] == F.one());
    CHECK(v[1] == x);
    CHECK(v[2] == F.frobenius_q(x, 1));
    CHECK(v[3] == F.mul(x, F.frobenius_q(x, 1)));
    CHECK(v[4].is_zero());

    ProjVector z = tensor_embed(F, F.zero());
    CHECK(z[0] == F.one());
    for (size_t i = 1; i < z.size(); ++i) CHECK(z[i].is_zero());
}

TEST_CASE("complement coordinate identity: coord_i * coord_(n-i) = N(a)") {
    for (auto [p, h, t] : std::vector<std::array<uint32_t, 3>>{
             {2, 1, 3}, {3, 1, 3}, {2, 2, 3}, {3, 1, 4}, {3, 2, 3}}) {
        FieldCtx F(p, h, t);
        REQUIRE(F.big_order() <= 81);
        const uint32_t n = ambient_size(F) - 2;
        for (uint64_t r = 0; r < F.big_order(); ++r) {
            FieldElement a = F.element(r);
            ProjVector v = tensor_embed(F, a);
            FieldElement na = F.norm(a);
            for (uint32_t i = 0; i <= n; ++i) CHECK(F.mul(v[i], v[n - i]) == na);
        }
    }
}

TEST_CASE("vertex lifts: frozen values and alpha in the last coordinate") {
    FieldCtx F(3, 1, 3);
    ProjVector v0 = lift_vertex(F, F.zero(), F.one());
    CHECK(v0 == ProjVector{F.one(), F.zero(), F.zero(), F.zero(), F.one()});

    // (x, 1): x^q = 2x, x^(1+q) = 2x^2 = 1 in F_9 = F_3[x]/(x^2+1).
    const FieldElement x = F.element(3);
    ProjVector vx = lift_vertex(F, x, F.one());
    CHECK(vx == ProjVector{F.one(), x, F.element(6), F.one(), F.one()});

    NormGraph g = NormGraph::build(3, 1, 3);
    for (const Vertex& vert : g.vertices()) {
        ProjVector lift = lift_vertex(F, vert);
        CHECK(lift.back() == vert.alpha);
        CHECK_FALSE(lift.back().is_zero());
    }
}

TEST_CASE("beta frozen values and symmetry") {
    FieldCtx F(3, 1, 3);
    ProjVector pinf = p_infinity(F);
    CHECK(beta(F, pinf, pinf) == F.neg(F.one()));

    const FieldElement x = F.element(3);
    CHECK(beta(F, lift_vertex(F, F.zero(), F.one()), lift_vertex(F, x, F.one())).is_zero());

    std::mt19937_64 rng(5);
    const uint32_t namb = ambient_size(F);
    for (int i = 0; i < 200; ++i) {
        ProjVector u = random_vector(F, namb, rng), w = random_vector(F, namb, rng);
        CHECK(beta(F, u, w) == beta(F, w, u));
    }
}

TEST_CASE("the norm identity behind adjacency holds verbatim") {
    // N(a+b) equals the full contraction sum of the two affine tensor
    // points, and subtracting the lift product gives the bilinear form.
    for (auto [p, h, t] : std::vector<std::array<uint32_t, 3>>{{2, 1, 3}, {3, 1, 3}, {3, 1, 4}}) {
        FieldCtx F(p, h, t);
        NormGraph g = NormGraph::build(p, h, t);
        for (uint64_t ra = 0; ra < F.big_order(); ++ra)
            for (uint64_t rb = 0; rb < F.big_order(); ++rb) {
                FieldElement a = F.element(ra), b = F.element(rb);
                CHECK(beta(F, tensor_embed(F, a), tensor_embed(F, b)) ==
                      F.norm(F.add(a, b)));
            }
        std::mt19937_64 rng(77);
        for (int i = 0; i < 300; ++i) {
            const Vertex& u = g.vertex(uint32_t(rng() % g.order()));
            const Vertex& v = g.vertex(uint32_t(rng() % g.order()));
            FieldElement expect = F.sub(F.norm(F.add(u.a, v.a)), F.mul(u.alpha, v.alpha));
            CHECK(beta(F, lift_vertex(F, u), lift_vertex(F, v)) == expect);
        }
    }
}

TEST_CASE("span: rank, normalization, idempotence") {
    FieldCtx F(3, 1, 3);
    const FieldElement x = F.element(3);

    ProjSubspace single = span(F, {lift_vertex(F, x, F.from_int(2))});
    CHECK(single.rank() == 1);
    CHECK(single.basis[0] == normalize_point(F, lift_vertex(F, x, F.from_int(2))));

    ProjSubspace two = span(F, {p_infinity(F), lift_vertex(F, F.zero(), F.one())});
    CHECK(two.rank() == 2);

    ProjSubspace again = span(F, two.basis);
    CHECK(again.basis == two.basis);

    CHECK_THROWS_AS(span(F, {ProjVector(5, F.zero())}), std::invalid_argument);
}

TEST_CASE("perp of the point at infinity is the hyperplane x_{n+1} = 0") {
    FieldCtx F(3, 1, 3);
    ProjSubspace h = perp(F, span(F, {p_infinity(F)}));
    const uint32_t namb = ambient_size(F);
    REQUIRE(h.rank() == namb - 1);
    for (uint32_t i = 0; i + 1 < namb; ++i) {
        for (uint32_t j = 0; j < namb; ++j)
            CHECK(h.basis[i][j] == (i == j ? F.one() : F.zero()));
    }
}

TEST_CASE("perp is dimension-complementary and involutive") {
    FieldCtx F(3, 1, 3);
    const uint32_t namb = ambient_size(F);
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 100; ++trial) {
        uint32_t k = 1 + uint32_t(rng() % (namb - 1));
        std::vector<ProjVector> pts;
        for (uint32_t i = 0; i < k; ++i) pts.push_back(random_vector(F, namb, rng));
        bool all_zero = true;
        for (auto& pt : pts) all_zero = all_zero && pt == ProjVector(namb, F.zero());
        if (all_zero) continue;
        ProjSubspace sub = span(F, pts);
        ProjSubspace orth = perp(F, sub);
        CHECK(sub.rank() + orth.rank() == namb);
        if (orth.rank() == 0) continue;
        ProjSubspace back = perp(F, orth);
        CHECK(back.basis == sub.basis);
        // Orthogonality: beta vanishes across the two bases.
        for (const ProjVector& u : sub.basis)
            for (const ProjVector& w : orth.basis) CHECK(beta(F, u, w).is_zero());
    }
}

TEST_CASE("contains: scalar invariance, hyperplane exclusion, oracle agreement") {
    FieldCtx F(3, 1, 3);
    const uint32_t namb = ambient_size(F);
    NormGraph g = NormGraph::build(3, 1, 3);

    ProjVector v = lift_vertex(F, g.vertex(7));
    ProjSubspace sv = span(F, {v});
    for (uint64_t c = 1; c < F.big_order(); ++c) {
        ProjVector scaled(namb);
        for (uint32_t i = 0; i < namb; ++i) scaled[i] = F.mul(v[i], F.element(c));
        CHECK(contains(F, sv, scaled));
    }

    ProjSubspace hyper = perp(F, span(F, {p_infinity(F)}));
    for (const Vertex& vert : g.vertices())
        CHECK_FALSE(contains(F, hyper, lift_vertex(F, vert)));

    CHECK_THROWS_AS(contains(F, sv, ProjVector(namb, F.zero())), std::invalid_argument);

    // Independent oracle: membership iff appending does not raise the rank.
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 1000; ++trial) {
        uint32_t k = 1 + uint32_t(rng() % 3);
        std::vector<ProjVector> pts;
        for (uint32_t i = 0; i < k; ++i) pts.push_back(random_vector(F, namb, rng));
        ProjVector probe = random_vector(F, namb, rng);
        bool any = false;
        for (auto& pt : pts) any = any || !(pt == ProjVector(namb, F.zero()));
        if (!any || probe == ProjVector(namb, F.zero())) continue;
        ProjSubspace sub = span(F, pts);
        std::vector<ProjVector> appended = pts;
        appended.push_back(probe);
        bool oracle = oracle_rank(F, appended) == sub.rank();
        CHECK(contains(F, sub, probe) == oracle);
    }
}

TEST_CASE("variety point counts and hyperplane membership") {
    FieldCtx f4(2, 1, 3);
    auto pts4 = variety_points(f4);
    CHECK(pts4.size() == 5);
    FieldCtx f9(3, 1, 3);
    auto pts9 = variety_points(f9);
    CHECK(pts9.size() == 10);
    for (const auto& pt : pts9) CHECK(pt.back().is_zero());

    FieldCtx big(7, 1, 4);
    CHECK_THROWS_AS(variety_points(big, 100), CapacityError);
}

TEST_CASE("general position certificates pass at small scale") {
    for (auto [p, h, t] : std::vector<std::array<uint32_t, 3>>{
             {2, 1, 3}, {3, 1, 3}, {2, 2, 3}, {5, 1, 3}, {3, 1, 4}}) {
        CAPTURE(p);
        CAPTURE(h);
        CAPTURE(t);
        GeometryCertificate cert = check_general_position(FieldCtx(p, h, t));
        CHECK(cert.verdict == Verdict::PASS);
        CHECK_FALSE(cert.witness.has_value());
    }
    // C(28,4) quadruples at t=4, q=3.
    GeometryCertificate c34 = check_general_position(FieldCtx(3, 1, 4));
    CHECK(c34.checked == 20475);

    CHECK_THROWS_AS(check_general_position(FieldCtx(7, 1, 4)), CapacityError);
}

TEST_CASE("span-counting certificates pass and exercise degenerate subsets at q=3") {
    GeometryCertificate c2 = check_span_property(FieldCtx(2, 1, 3));
    CHECK(c2.verdict == Verdict::PASS);
    CHECK(c2.checked == 5);

    GeometryCertificate c3 = check_span_property(FieldCtx(3, 1, 3));
    CHECK(c3.verdict == Verdict::PASS);
    CHECK(c3.checked == 210);
    CHECK(c3.skipped < c3.checked); // degenerate subsets exist and were counted
}

TEST_CASE("geometric common neighbors agree with the adjacency-side answer") {
    NormGraph k4 = NormGraph::build(2, 1, 3);
    std::vector<uint32_t> x{0, 1, 2};
    CHECK(geometric_common_neighbors(k4, x) == std::vector<uint32_t>{3});
    CHECK(geometric_common_neighbors(k4, x) == k4.common_neighborhood(x));

    NormGraph g = NormGraph::build(3, 1, 3);
    std::vector<uint32_t> same_a{0, 1}; // both project to a = 0
    CHECK(geometric_common_neighbors(g, same_a).empty());

    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<uint32_t> s;
        while (s.size() < 3) {
            uint32_t v = uint32_t(rng() % g.order());
            if (std::find(s.begin(), s.end(), v) == s.end()) s.push_back(v);
        }
        std::sort(s.begin(), s.end());
        CHECK(geometric_common_neighbors(g, s) == g.common_neighborhood(s));
    }
}

TEST_CASE("beta identity certificate: exhaustive and sampled modes") {
    NormGraph g = NormGraph::build(3, 1, 3);
    GeometryCertificate cert = check_beta_identity(g);
    CHECK(cert.verdict == Verdict::PASS);
    CHECK(cert.exhaustive);
    CHECK(cert.checked == 18 * 19 / 2);

    GeometryCertificate sampled = check_beta_identity(g, 500, 42, /*budget=*/10);
    CHECK(sampled.verdict == Verdict::PASS);
    CHECK_FALSE(sampled.exhaustive);
    CHECK(sampled.samples == 500);
    CHECK(sampled.seed == 42);
}

TEST_CASE("neighborhood equality certificate over seeded subsets") {
    for (auto [p, h, t] : std::vector<std::array<uint32_t, 3>>{{3, 1, 3}, {2, 2, 3}}) {
        NormGraph g = NormGraph::build(p, h, t);
        GeometryCertificate cert = check_neighborhood_equality(g, 50, 7);
        CAPTURE(p);
        CHECK(cert.verdict == Verdict::PASS);
        CHECK(cert.checked == 100); // 50 t-subsets and 50 (t+1)-subsets
    }
}
