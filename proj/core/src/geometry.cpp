#include "normgraph/geometry.hpp"

#include <algorithm>
#include <chrono>
#include <random>
#include <sstream>
#include <stdexcept>

#include "normgraph/errors.hpp"

namespace normgraph {

namespace {

uint64_t binomial_capped(uint64_t n, uint64_t k, uint64_t cap) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    unsigned __int128 r = 1;
    for (uint64_t i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
        if (r > cap) return cap + 1;
    }
    return uint64_t(r);
}

bool vec_is_zero(const ProjVector& v) {
    for (const FieldElement& c : v)
        if (!c.is_zero()) return false;
    return true;
}

// In-place reduced row echelon form; returns pivot columns. Zero rows are
// removed. Exact field arithmetic, leftmost-pivot tie-breaking.
std::vector<uint32_t> rref(const FieldCtx& F, std::vector<ProjVector>& rows) {
    const uint32_t ncols = rows.empty() ? 0 : uint32_t(rows[0].size());
    std::vector<uint32_t> pivots;
    uint32_t r = 0;
    for (uint32_t col = 0; col < ncols && r < rows.size(); ++col) {
        uint32_t sel = UINT32_MAX;
        for (uint32_t i = r; i < rows.size(); ++i)
            if (!rows[i][col].is_zero()) {
                sel = i;
                break;
            }
        if (sel == UINT32_MAX) continue;
        std::swap(rows[r], rows[sel]);
        const FieldElement inv_pivot = F.inv(rows[r][col]);
        for (uint32_t j = col; j < ncols; ++j) rows[r][j] = F.mul(rows[r][j], inv_pivot);
        for (uint32_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][col].is_zero()) continue;
            const FieldElement factor = rows[i][col];
            for (uint32_t j = col; j < ncols; ++j)
                rows[i][j] = F.sub(rows[i][j], F.mul(factor, rows[r][j]));
        }
        pivots.push_back(col);
        ++r;
    }
    rows.resize(r);
    return pivots;
}

std::string point_text(const FieldCtx& F, const ProjVector& v) {
    std::string s = "[";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) s += "; ";
        s += F.to_string(v[i]);
    }
    return s + "]";
}

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    uint64_t ms() const {
        return uint64_t(std::chrono::duration_cast<std::chrono::milliseconds>(
                            std::chrono::steady_clock::now() - t0)
                            .count());
    }
};

GeometryCertificate make_cert(const FieldCtx& F, std::string check) {
    GeometryCertificate c;
    c.check = std::move(check);
    c.p = F.p();
    c.h = F.h();
    c.t = F.t();
    c.q = F.q();
    return c;
}

} // namespace

uint32_t ambient_size(const FieldCtx& F) {
    if (F.t() > 12) throw CapacityError("geometry: ambient dimension 2^(t-1)+1 too large");
    return (uint32_t(1) << (F.t() - 1)) + 1;
}

ProjVector tensor_embed(const FieldCtx& F, const FieldElement& a) {
    const uint32_t namb = ambient_size(F);
    const uint32_t n = namb - 2; // top subset index
    std::vector<FieldElement> frob(F.t() - 1);
    for (uint32_t j = 0; j + 1 < F.t(); ++j) frob[j] = F.frobenius_q(a, j);
    ProjVector v(namb, F.zero());
    for (uint32_t i = 0; i <= n; ++i) {
        FieldElement prod = F.one();
        for (uint32_t j = 0; j + 1 < F.t(); ++j)
            if ((i >> j) & 1) prod = F.mul(prod, frob[j]);
        v[i] = prod;
    }
    return v;
}

ProjVector lift_vertex(const FieldCtx& F, const FieldElement& a, const FieldElement& alpha) {
    ProjVector v = tensor_embed(F, a);
    v[v.size() - 1] = alpha;
    return v;
}

ProjVector lift_vertex(const FieldCtx& F, const Vertex& vx) {
    return lift_vertex(F, vx.a, vx.alpha);
}

ProjVector p_infinity(const FieldCtx& F) {
    ProjVector v(ambient_size(F), F.zero());
    v[v.size() - 1] = F.one();
    return v;
}

FieldElement beta(const FieldCtx& F, const ProjVector& u, const ProjVector& w) {
    const uint32_t namb = ambient_size(F);
    if (u.size() != namb || w.size() != namb)
        throw std::invalid_argument("beta: vectors must have ambient length");
    const uint32_t n = namb - 2;
    FieldElement acc = F.zero();
    for (uint32_t i = 0; i <= n; ++i) acc = F.add(acc, F.mul(u[i], w[n - i]));
    return F.sub(acc, F.mul(u[n + 1], w[n + 1]));
}

ProjVector normalize_point(const FieldCtx& F, const ProjVector& v) {
    for (const FieldElement& c : v) {
        if (c.is_zero()) continue;
        const FieldElement inv_c = F.inv(c);
        ProjVector out(v.size());
        for (size_t i = 0; i < v.size(); ++i) out[i] = F.mul(v[i], inv_c);
        return out;
    }
    throw std::invalid_argument("normalize_point: zero vector");
}

ProjSubspace span(const FieldCtx& F, const std::vector<ProjVector>& points) {
    bool any = false;
    for (const ProjVector& pt : points) any = any || !vec_is_zero(pt);
    if (!any) throw std::invalid_argument("span: no nonzero vector given");
    std::vector<ProjVector> rows = points;
    rref(F, rows);
    return ProjSubspace{std::move(rows)};
}

ProjSubspace perp(const FieldCtx& F, const ProjSubspace& sub) {
    const uint32_t namb = ambient_size(F);
    const uint32_t n = namb - 2;
    if (sub.basis.empty()) throw std::invalid_argument("perp: empty subspace");
    // beta(u, w) = 0 is the linear condition <u~, w> = 0 with u~ the
    // coordinate-flipped row.
    std::vector<ProjVector> rows;
    rows.reserve(sub.basis.size());
    for (const ProjVector& u : sub.basis) {
        ProjVector r(namb);
        for (uint32_t i = 0; i <= n; ++i) r[i] = u[n - i];
        r[n + 1] = F.neg(u[n + 1]);
        rows.push_back(std::move(r));
    }
    std::vector<uint32_t> pivots = rref(F, rows);
    std::vector<bool> is_pivot(namb, false);
    for (uint32_t p : pivots) is_pivot[p] = true;

    std::vector<ProjVector> null_basis;
    for (uint32_t f = 0; f < namb; ++f) {
        if (is_pivot[f]) continue;
        ProjVector x(namb, F.zero());
        x[f] = F.one();
        for (uint32_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = F.neg(rows[i][f]);
        null_basis.push_back(std::move(x));
    }
    if (null_basis.empty()) return ProjSubspace{};
    rref(F, null_basis);
    return ProjSubspace{std::move(null_basis)};
}

bool contains(const FieldCtx& F, const ProjSubspace& sub, const ProjVector& pt) {
    if (vec_is_zero(pt)) throw std::invalid_argument("contains: zero vector is not a point");
    // Reduce pt against the RREF basis; membership iff it cancels.
    ProjVector v = pt;
    for (const ProjVector& row : sub.basis) {
        uint32_t pc = 0;
        while (pc < row.size() && row[pc].is_zero()) ++pc;
        if (pc == row.size()) continue;
        if (v[pc].is_zero()) continue;
        const FieldElement factor = v[pc];
        for (uint32_t j = pc; j < v.size(); ++j) v[j] = F.sub(v[j], F.mul(factor, row[j]));
    }
    return vec_is_zero(v);
}

std::vector<ProjVector> variety_points(const FieldCtx& F, uint64_t cap) {
    if (F.big_order() + 1 > cap)
        throw CapacityError("variety_points: " + std::to_string(F.big_order() + 1) +
                            " points exceed cap " + std::to_string(cap));
    std::vector<ProjVector> pts;
    pts.reserve(F.big_order() + 1);
    for (uint64_t r = 0; r < F.big_order(); ++r) pts.push_back(tensor_embed(F, F.element(r)));
    // The (0,1) direction of the projective line: all mass on the full
    // subset coordinate n.
    ProjVector inf(ambient_size(F), F.zero());
    inf[ambient_size(F) - 2] = F.one();
    pts.push_back(std::move(inf));
    return pts;
}

GeometryCertificate check_general_position(const FieldCtx& F, uint64_t budget) {
    Timer timer;
    GeometryCertificate cert = make_cert(F, "general_position");
    const uint32_t k = F.t();
    std::vector<ProjVector> pts = variety_points(F);
    const uint64_t total = binomial_capped(pts.size(), k, budget);
    if (total > budget)
        throw CapacityError("check_general_position: more than " + std::to_string(budget) +
                            " subsets (need " + std::to_string(total) + ")");

    std::vector<uint32_t> comb(k);
    for (uint32_t i = 0; i < k; ++i) comb[i] = i;
    cert.verdict = Verdict::PASS;
    for (;;) {
        ++cert.checked;
        std::vector<ProjVector> rows;
        rows.reserve(k);
        for (uint32_t i : comb) rows.push_back(pts[i]);
        if (rref(F, rows).size() != k) {
            cert.verdict = Verdict::FAIL;
            std::ostringstream w;
            w << "subset {";
            for (uint32_t i : comb) w << ' ' << i;
            w << " } has rank " << rows.size() << ":";
            for (uint32_t i : comb) w << ' ' << point_text(F, pts[i]);
            cert.witness = w.str();
            break;
        }
        int32_t level = int32_t(k) - 1;
        while (level >= 0 && comb[level] == pts.size() - k + level) --level;
        if (level < 0) break;
        ++comb[level];
        for (uint32_t i = uint32_t(level) + 1; i < k; ++i) comb[i] = comb[i - 1] + 1;
    }
    cert.wall_time_ms = timer.ms();
    return cert;
}

GeometryCertificate check_span_property(const FieldCtx& F, uint64_t budget) {
    Timer timer;
    GeometryCertificate cert = make_cert(F, "span_property");
    const uint32_t k = F.t() + 1;
    std::vector<ProjVector> pts = variety_points(F);
    const uint64_t total = binomial_capped(pts.size(), k, budget);
    if (total > budget)
        throw CapacityError("check_span_property: more than " + std::to_string(budget) +
                            " subsets (need " + std::to_string(total) + ")");

    std::vector<uint32_t> comb(k);
    for (uint32_t i = 0; i < k; ++i) comb[i] = i;
    cert.verdict = Verdict::PASS;
    for (;;) {
        ++cert.checked;
        std::vector<ProjVector> rows;
        rows.reserve(k);
        for (uint32_t i : comb) rows.push_back(pts[i]);
        rref(F, rows);
        if (rows.size() == F.t()) {
            // Projective dimension t-1: count the variety points it holds.
            ProjSubspace sub{rows};
            uint64_t inside = 0;
            for (const ProjVector& pt : pts)
                if (contains(F, sub, pt)) ++inside;
            if (inside != F.q() + 1) {
                cert.verdict = Verdict::FAIL;
                std::ostringstream w;
                w << "subset {";
                for (uint32_t i : comb) w << ' ' << i;
                w << " } spans dim t-1 but holds " << inside << " points, expected "
                  << (F.q() + 1) << ":";
                for (uint32_t i : comb) w << ' ' << point_text(F, pts[i]);
                cert.witness = w.str();
                break;
            }
        } else {
            ++cert.skipped; // full-rank subsets are outside the hypothesis
        }
        int32_t level = int32_t(k) - 1;
        while (level >= 0 && comb[level] == pts.size() - k + level) --level;
        if (level < 0) break;
        ++comb[level];
        for (uint32_t i = uint32_t(level) + 1; i < k; ++i) comb[i] = comb[i - 1] + 1;
    }
    cert.wall_time_ms = timer.ms();
    return cert;
}

std::vector<uint32_t> geometric_common_neighbors(const NormGraph& g,
                                                 std::span<const uint32_t> x) {
    if (x.empty()) throw std::invalid_argument("geometric_common_neighbors: empty set");
    const FieldCtx& F = g.ctx();
    std::vector<ProjVector> lifts;
    lifts.reserve(x.size());
    for (uint32_t i : x) lifts.push_back(lift_vertex(F, g.vertex(i)));
    ProjSubspace pi = span(F, lifts);
    ProjSubspace orth = perp(F, pi);

    std::vector<uint32_t> out;
    if (orth.basis.empty()) return out;
    for (uint32_t v = 0; v < g.order(); ++v) {
        if (std::find(x.begin(), x.end(), v) != x.end()) continue;
        if (contains(F, orth, lift_vertex(F, g.vertex(v)))) out.push_back(v);
    }
    return out;
}

GeometryCertificate check_beta_identity(const NormGraph& g, uint64_t samples, uint64_t seed,
                                        uint64_t budget) {
    Timer timer;
    const FieldCtx& F = g.ctx();
    GeometryCertificate cert = make_cert(F, "beta_identity");
    const uint64_t n = g.order();
    const uint64_t pairs = n * (n + 1) / 2;
    cert.exhaustive = pairs <= budget;
    cert.seed = seed;
    cert.verdict = Verdict::PASS;

    std::vector<ProjVector> lifts;
    lifts.reserve(n);
    for (uint32_t v = 0; v < n; ++v) lifts.push_back(lift_vertex(F, g.vertex(v)));

    auto check_pair = [&](uint32_t u, uint32_t v) -> bool {
        const bool orthogonal = beta(F, lifts[u], lifts[v]).is_zero();
        bool expect;
        if (u == v) {
            // Diagonal: beta(lift,lift) = N(2a) - alpha^2, zero exactly for
            // the discarded self-loops.
            const Vertex& vx = g.vertex(u);
            expect = F.norm(F.add(vx.a, vx.a)) == F.mul(vx.alpha, vx.alpha);
        } else {
            expect = g.adjacent(u, v);
        }
        if (orthogonal != expect) {
            std::ostringstream w;
            w << "pair (" << u << ", " << v << "): beta zero = " << orthogonal
              << ", adjacency = " << expect;
            cert.witness = w.str();
            cert.verdict = Verdict::FAIL;
            return false;
        }
        return true;
    };

    if (cert.exhaustive) {
        for (uint32_t u = 0; u < n && cert.verdict == Verdict::PASS; ++u)
            for (uint32_t v = u; v < n; ++v) {
                ++cert.checked;
                if (!check_pair(u, v)) break;
            }
    } else {
        cert.samples = samples;
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<uint32_t> pick(0, uint32_t(n - 1));
        for (uint64_t i = 0; i < samples; ++i) {
            ++cert.checked;
            if (!check_pair(pick(rng), pick(rng))) break;
        }
    }
    cert.wall_time_ms = timer.ms();
    return cert;
}

GeometryCertificate check_neighborhood_equality(const NormGraph& g, uint64_t trials,
                                                uint64_t seed) {
    Timer timer;
    const FieldCtx& F = g.ctx();
    GeometryCertificate cert = make_cert(F, "neighborhood_equality");
    cert.exhaustive = false;
    cert.samples = trials;
    cert.seed = seed;
    cert.verdict = Verdict::PASS;

    std::mt19937_64 rng(seed);
    for (uint32_t size : {F.t(), F.t() + 1}) {
        if (size > g.order()) continue;
        for (uint64_t trial = 0; trial < trials && cert.verdict == Verdict::PASS; ++trial) {
            // Distinct random vertex indices.
            std::vector<uint32_t> x;
            while (x.size() < size) {
                uint32_t v = uint32_t(rng() % g.order());
                if (std::find(x.begin(), x.end(), v) == x.end()) x.push_back(v);
            }
            std::sort(x.begin(), x.end());
            ++cert.checked;
            std::vector<uint32_t> geo = geometric_common_neighbors(g, x);
            std::vector<uint32_t> graph_side = g.common_neighborhood(x);
            if (geo != graph_side) {
                std::ostringstream w;
                w << "subset {";
                for (uint32_t v : x) w << ' ' << v;
                w << " }: geometric " << geo.size() << " vs graph " << graph_side.size();
                cert.witness = w.str();
                cert.verdict = Verdict::FAIL;
            }
        }
    }
    cert.wall_time_ms = timer.ms();
    return cert;
}

} // namespace normgraph
