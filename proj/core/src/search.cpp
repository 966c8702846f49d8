#include "normgraph/search.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <stdexcept>
#include <thread>

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

uint64_t factorial_checked(uint64_t k) {
    if (k > 20) throw CapacityError("factorial overflows 64 bits for k > 20");
    uint64_t r = 1;
    for (uint64_t i = 2; i <= k; ++i) r *= i;
    return r;
}

std::vector<uint32_t> bits_to_indices(const std::vector<uint64_t>& words, uint32_t n) {
    std::vector<uint32_t> out;
    for (size_t w = 0; w < words.size(); ++w) {
        uint64_t bits = words[w];
        while (bits) {
            uint32_t idx = uint32_t(w * 64 + std::countr_zero(bits));
            if (idx < n) out.push_back(idx);
            bits &= bits - 1;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Vertex-space DFS: ordered extension by increasing index, running
// intersection bitset, prune on intersection cardinality.
// ---------------------------------------------------------------------------

struct VertexSearcher {
    const AdjacencyMatrix& g;
    uint32_t n, c;
    bool exact;
    uint64_t s = 0;
    uint64_t budget;

    size_t words;
    std::vector<std::vector<uint64_t>> ibuf;
    std::vector<uint32_t> picked;
    uint64_t nodes = 0;
    bool out_of_budget = false;
    bool found = false;
    int64_t best = -1;
    std::optional<Witness> witness;

    VertexSearcher(const AdjacencyMatrix& graph, const SearchSpec& spec)
        : g(graph), n(graph.order()), c(spec.c), exact(spec.exact),
          s(spec.threshold.value_or(0)), budget(spec.budget), words(graph.words_per_row()) {
        ibuf.assign(c, std::vector<uint64_t>(words));
        picked.reserve(c);
    }

    void record_leaf(uint64_t cnt) {
        if (exact) {
            if (int64_t(cnt) > best) {
                best = int64_t(cnt);
                Witness w;
                w.left = picked;
                w.common = bits_to_indices(ibuf[c - 1], n);
                witness = std::move(w);
            }
        } else {
            if (int64_t(cnt) > best) best = int64_t(cnt); // lower bound on the max
            if (cnt >= s) {
                found = true;
                Witness w;
                w.left = picked;
                w.common = bits_to_indices(ibuf[c - 1], n);
                witness = std::move(w);
            }
        }
    }

    void extend(uint32_t depth) {
        const uint32_t start = depth == 0 ? 0 : picked.back() + 1;
        for (uint32_t v = start; v + (c - depth) <= n; ++v) {
            if (found || out_of_budget) return;
            if (++nodes > budget) {
                out_of_budget = true;
                return;
            }
            auto rv = g.row(v);
            uint64_t cnt = 0;
            if (depth == 0) {
                std::copy(rv.begin(), rv.end(), ibuf[0].begin());
                for (uint64_t w : ibuf[0]) cnt += std::popcount(w);
            } else {
                for (size_t w = 0; w < words; ++w) {
                    ibuf[depth][w] = ibuf[depth - 1][w] & rv[w];
                    cnt += std::popcount(ibuf[depth][w]);
                }
            }
            picked.push_back(v);
            if (depth + 1 == c) {
                record_leaf(cnt);
            } else {
                bool descend = exact ? int64_t(cnt) >= best + 1 : cnt >= s;
                if (descend) extend(depth + 1);
            }
            picked.pop_back();
        }
    }

    SearchResult run() {
        extend(0);
        SearchResult r;
        r.nodes_explored = nodes;
        if (out_of_budget) {
            r.indeterminate = true;
            r.value = best < 0 ? 0 : uint64_t(best);
            return r;
        }
        r.value = best < 0 ? 0 : uint64_t(best);
        if (exact || found) r.witness = witness;
        return r;
    }
};

// ---------------------------------------------------------------------------
// Class-refinement DFS over a-coordinates.
//
// A c-subset X = {(a_i, alpha_i)} with repeated a-values has no common
// neighbor, so violating subsets have distinct a's. A vertex (b, beta) is a
// common neighbor of X iff the value vector (N(a_i+b))_i is proportional to
// (alpha_i)_i with nonzero ratio; b's with proportional value vectors form
// classes, each realizable as the full common neighborhood of q-1 scalings
// of the alpha-vector. The search therefore walks c-subsets of a-values,
// refining classes by the discrete-log label of N(a_new+b)/N(a_1+b), and
// prunes a class as soon as it drops below the threshold.
// ---------------------------------------------------------------------------

struct ClassTables {
    uint32_t na = 0;  // q^(t-1)
    uint32_t qm1 = 0; // q-1

    enum class AddMode { Table, Xor, Split };
    AddMode mode = AddMode::Xor;
    std::vector<uint16_t> add_tab;           // full table, na <= 4096
    std::vector<uint16_t> lo_tab, hi_tab;    // split tables otherwise (odd p)
    uint32_t lo_size = 0;

    std::vector<int16_t> nlog;      // dlog of N(x) in F_q*, -1 iff x = 0
    std::vector<uint64_t> gexp;     // rank of gen^e in the big field
    std::vector<uint16_t> slot_of_dlog; // alpha slot (canonical order) of gen^e

    uint16_t sum(uint16_t x, uint16_t y) const {
        switch (mode) {
            case AddMode::Xor: return x ^ y;
            case AddMode::Table: return add_tab[size_t(x) * na + y];
            default: {
                uint32_t xl = x % lo_size, xh = x / lo_size;
                uint32_t yl = y % lo_size, yh = y / lo_size;
                return uint16_t(hi_tab[xh * (na / lo_size) + yh] * lo_size +
                                lo_tab[xl * lo_size + yl]);
            }
        }
    }
};

ClassTables build_class_tables(const NormGraph& g) {
    const FieldCtx& F = g.ctx();
    ClassTables T;
    T.na = uint32_t(F.big_order());
    T.qm1 = uint32_t(F.q() - 1);

    if (F.p() == 2) {
        T.mode = ClassTables::AddMode::Xor;
    } else if (T.na <= 4096) {
        T.mode = ClassTables::AddMode::Table;
        T.add_tab.resize(size_t(T.na) * T.na);
        for (uint32_t x = 0; x < T.na; ++x) {
            FieldElement ex = F.element(x);
            for (uint32_t y = 0; y <= x; ++y) {
                uint16_t sum = uint16_t(F.rank(F.add(ex, F.element(y))));
                T.add_tab[size_t(x) * T.na + y] = sum;
                T.add_tab[size_t(y) * T.na + x] = sum;
            }
        }
    } else {
        // Coefficientwise addition splits at a power of p: na = lo * hi.
        T.mode = ClassTables::AddMode::Split;
        uint32_t p = F.p(), d = F.degree(), dl = (d + 1) / 2;
        T.lo_size = 1;
        for (uint32_t i = 0; i < dl; ++i) T.lo_size *= p;
        uint32_t hi_size = T.na / T.lo_size;
        T.lo_tab.resize(size_t(T.lo_size) * T.lo_size);
        for (uint32_t x = 0; x < T.lo_size; ++x)
            for (uint32_t y = 0; y < T.lo_size; ++y) {
                // digitwise mod-p addition of base-p numbers below p^dl
                uint32_t r = 0, mul = 1, xx = x, yy = y;
                for (uint32_t i = 0; i < dl; ++i) {
                    r += ((xx % p) + (yy % p)) % p * mul;
                    xx /= p;
                    yy /= p;
                    mul *= p;
                }
                T.lo_tab[size_t(x) * T.lo_size + y] = uint16_t(r);
            }
        T.hi_tab.resize(size_t(hi_size) * hi_size);
        for (uint32_t x = 0; x < hi_size; ++x)
            for (uint32_t y = 0; y < hi_size; ++y) {
                uint32_t r = 0, mul = 1, xx = x, yy = y;
                for (uint32_t i = 0; i < d - dl; ++i) {
                    r += ((xx % p) + (yy % p)) % p * mul;
                    xx /= p;
                    yy /= p;
                    mul *= p;
                }
                T.hi_tab[size_t(x) * hi_size + y] = uint16_t(r);
            }
    }

    // Discrete log of F_q* relative to a generator, then the norm log table.
    std::vector<FieldElement> alphas;
    for (const FieldElement& e : F.subfield_elements())
        if (!e.is_zero()) alphas.push_back(e);
    FieldElement gen = alphas[0];
    for (const FieldElement& cand : alphas) {
        uint32_t ord = 1;
        FieldElement x = cand;
        while (!(x == F.one())) {
            x = F.mul(x, cand);
            ++ord;
        }
        if (ord == T.qm1) {
            gen = cand;
            break;
        }
    }
    std::vector<int32_t> dlog_of_rank(T.na, -1);
    T.gexp.resize(T.qm1);
    {
        FieldElement x = F.one();
        for (uint32_t e = 0; e < T.qm1; ++e) {
            uint64_t r = F.rank(x);
            T.gexp[e] = r;
            dlog_of_rank[r] = int32_t(e);
            x = F.mul(x, gen);
        }
    }
    T.slot_of_dlog.resize(T.qm1);
    {
        std::vector<uint16_t> slot_of_rank(T.na, UINT16_MAX);
        for (uint16_t i = 0; i < alphas.size(); ++i)
            slot_of_rank[F.rank(alphas[i])] = i;
        for (uint32_t e = 0; e < T.qm1; ++e) T.slot_of_dlog[e] = slot_of_rank[T.gexp[e]];
    }
    T.nlog.resize(T.na);
    for (uint32_t r = 0; r < T.na; ++r) {
        FieldElement nv = F.norm(F.element(r));
        T.nlog[r] = nv.is_zero() ? int16_t(-1) : int16_t(dlog_of_rank[F.rank(nv)]);
    }
    return T;
}

// Orbit representatives of the a-space under a -> lambda * a^(p^j) with
// N(lambda) = 1; both maps extend to graph automorphisms fixing or
// Frobenius-twisting the alpha coordinate, so restricting the first chosen
// a-value to representatives preserves existence of violating subsets.
std::vector<uint32_t> orbit_representatives(const NormGraph& g, const ClassTables& T) {
    const FieldCtx& F = g.ctx();
    const uint32_t na = T.na;
    const uint64_t tau = (F.big_order() - 1) / (F.q() - 1);

    // Torus generator: element of norm 1 with full order tau.
    FieldElement tgen = F.one();
    for (uint32_t r = 1; r < na; ++r) {
        if (T.nlog[r] != 0) continue;
        FieldElement cand = F.element(r);
        uint64_t ord = 1;
        FieldElement x = cand;
        while (!(x == F.one())) {
            x = F.mul(x, cand);
            ++ord;
        }
        if (ord == tau) {
            tgen = cand;
            break;
        }
    }

    std::vector<bool> seen(na, false);
    std::vector<uint32_t> reps;
    std::vector<uint32_t> stack;
    for (uint32_t r = 0; r < na; ++r) {
        if (seen[r]) continue;
        reps.push_back(r);
        stack.assign(1, r);
        seen[r] = true;
        while (!stack.empty()) {
            uint32_t x = stack.back();
            stack.pop_back();
            FieldElement ex = F.element(x);
            uint32_t y1 = uint32_t(F.rank(F.mul(ex, tgen)));
            uint32_t y2 = uint32_t(F.rank(F.pow(ex, F.p())));
            for (uint32_t y : {y1, y2})
                if (!seen[y]) {
                    seen[y] = true;
                    stack.push_back(y);
                }
        }
    }
    return reps;
}

struct TaskResult {
    uint64_t nodes = 0;
    bool found = false;
    bool indeterminate = false;
    bool skipped = false;
    uint64_t found_value = 0;
    uint64_t best = 0; // max corrected leaf count seen (lower bound on max)
    Witness witness;
};

struct ClassSearcher {
    const NormGraph& g;
    const FieldCtx& F;
    uint32_t c;
    uint64_t s;
    uint64_t budget;
    uint32_t threads;
    ClassTables T;

    std::vector<uint32_t> reps;
    // Per representative: log of N(a_1 + b) for every b, and the live b's.
    std::vector<std::vector<int16_t>> base_log;
    std::vector<std::vector<uint16_t>> depth1_bs;
    // Per representative: label_tab[a*na + b] = dlog(N(a+b)/N(a_1+b)) in
    // 0..q-2, or 255 when either norm vanishes. One byte load replaces the
    // three-lookup label computation in the refinement loops.
    std::vector<std::vector<uint8_t>> label_tab;
    bool have_label_tab = false;

    struct Task {
        uint32_t rep_idx;
        uint32_t a2;
    };
    std::vector<Task> tasks;

    ClassSearcher(const NormGraph& graph, uint32_t c_, uint64_t s_, uint64_t budget_,
                  uint32_t threads_)
        : g(graph), F(graph.ctx()), c(c_), s(s_), budget(budget_),
          threads(std::max(1u, threads_)), T(build_class_tables(graph)) {
        reps = orbit_representatives(g, T);
        base_log.resize(reps.size());
        depth1_bs.resize(reps.size());
        for (size_t ri = 0; ri < reps.size(); ++ri) {
            base_log[ri].resize(T.na);
            for (uint32_t b = 0; b < T.na; ++b)
                base_log[ri][b] = T.nlog[T.sum(uint16_t(reps[ri]), uint16_t(b))];
            for (uint32_t b = 0; b < T.na; ++b)
                if (base_log[ri][b] >= 0) depth1_bs[ri].push_back(uint16_t(b));
        }
        have_label_tab = size_t(T.na) * T.na * reps.size() <= (size_t{256} << 20);
        if (have_label_tab) {
            label_tab.resize(reps.size());
            for (size_t ri = 0; ri < reps.size(); ++ri) {
                label_tab[ri].assign(size_t(T.na) * T.na, 255);
                for (uint32_t a = 0; a < T.na; ++a) {
                    uint8_t* row = label_tab[ri].data() + size_t(a) * T.na;
                    for (uint32_t b = 0; b < T.na; ++b) {
                        const int16_t l = T.nlog[T.sum(uint16_t(a), uint16_t(b))];
                        const int16_t bl = base_log[ri][b];
                        if (l < 0 || bl < 0) continue;
                        int32_t diff = int32_t(l) - int32_t(bl);
                        row[b] = uint8_t(diff < 0 ? diff + int32_t(T.qm1) : diff);
                    }
                }
            }
        }
        for (uint32_t ri = 0; ri < reps.size(); ++ri) {
            if (depth1_bs[ri].size() < s) continue; // depth-1 prune
            for (uint32_t a2 = 0; a2 < T.na; ++a2)
                if (a2 != reps[ri]) tasks.push_back(Task{ri, a2});
        }
    }

    // Scratch buffers owned by one worker thread.
    struct Buffers {
        std::vector<std::vector<uint16_t>> bs;   // per depth, grouped by class
        std::vector<std::vector<std::pair<uint32_t, uint32_t>>> classes;
        std::vector<uint8_t> lab;                // per-b label scratch
        std::vector<uint32_t> cnt, pos;          // counting sort scratch
        std::vector<uint16_t> leaf_pick;         // one leaf bucket
        std::vector<uint32_t> asub;
        size_t rep_idx_cache = 0;
    };

    Buffers make_buffers() const {
        Buffers B;
        B.bs.assign(c + 1, std::vector<uint16_t>(T.na));
        B.classes.assign(c + 1, {});
        B.lab.resize(T.na);
        B.cnt.assign(T.qm1, 0);
        B.pos.assign(T.qm1, 0);
        B.leaf_pick.reserve(T.na);
        B.asub.assign(c, 0);
        return B;
    }

    // Corrected common-neighbor count of the class `bs` at the complete
    // a-set: a member (b, beta) coincides with an X vertex when b equals
    // some a_i and the induced beta equals alpha_i, which happens only for
    // specific scalings of the alpha-vector. Returns the max over scalings
    // and the achieving scaling exponent.
    std::pair<uint64_t, uint32_t> corrected_count(const Buffers& B,
                                                  std::span<const uint16_t> bs) const {
        std::vector<uint32_t> overlap; // indices i with a_i appearing as a b
        for (uint32_t i = 0; i < c; ++i)
            for (uint16_t b : bs)
                if (b == B.asub[i]) {
                    overlap.push_back(i);
                    break;
                }
        if (overlap.empty()) return {bs.size(), 0};

        const uint16_t b0 = bs[0];
        std::vector<int32_t> nu(c);
        for (uint32_t i = 0; i < c; ++i) nu[i] = T.nlog[T.sum(uint16_t(B.asub[i]), b0)];
        const int32_t base1 = nu[0]; // relative to a_1 = asub[0]
        uint64_t best_cnt = 0;
        uint32_t best_e = 0;
        for (uint32_t e = 0; e < T.qm1; ++e) {
            uint64_t coincide = 0;
            for (uint32_t i : overlap) {
                // beta(a_i) = gen^{(nlog N(a_1+a_i) - (nu_1 - e))}, alpha_i = gen^{nu_i - e}
                int32_t blog = T.nlog[T.sum(uint16_t(B.asub[0]), uint16_t(B.asub[i]))];
                if (blog < 0) continue; // a_i dead relative to a_1: not in any class
                int32_t beta_e = ((blog - base1 + e) % int32_t(T.qm1) + T.qm1) % int32_t(T.qm1);
                int32_t alpha_e = ((nu[i] - int32_t(e)) % int32_t(T.qm1) + T.qm1) % int32_t(T.qm1);
                if (beta_e == alpha_e) ++coincide;
            }
            uint64_t cc = bs.size() - coincide;
            if (cc > best_cnt) {
                best_cnt = cc;
                best_e = e;
            }
        }
        return {best_cnt, best_e};
    }

    Witness build_witness(const Buffers& B, std::span<const uint16_t> bs, uint32_t e) const {
        Witness w;
        const uint16_t b0 = bs[0];
        std::vector<int32_t> alpha_e(c);
        for (uint32_t i = 0; i < c; ++i) {
            int32_t nui = T.nlog[T.sum(uint16_t(B.asub[i]), b0)];
            alpha_e[i] = ((nui - int32_t(e)) % int32_t(T.qm1) + T.qm1) % int32_t(T.qm1);
            w.left.push_back(uint32_t(B.asub[i]) * T.qm1 + T.slot_of_dlog[alpha_e[i]]);
        }
        // beta(b) = N(a_1+b)/alpha_1.
        for (uint16_t b : bs) {
            int32_t blog = T.nlog[T.sum(uint16_t(B.asub[0]), uint16_t(b))];
            int32_t beta_e = ((blog - alpha_e[0]) % int32_t(T.qm1) + T.qm1) % int32_t(T.qm1);
            // Skip members that coincide with an X vertex.
            bool coincides = false;
            for (uint32_t i = 0; i < c; ++i)
                if (b == B.asub[i] && beta_e == alpha_e[i]) {
                    coincides = true;
                    break;
                }
            if (!coincides) w.common.push_back(uint32_t(b) * T.qm1 + T.slot_of_dlog[beta_e]);
        }
        std::sort(w.left.begin(), w.left.end());
        std::sort(w.common.begin(), w.common.end());
        return w;
    }

    uint8_t label_of(const Buffers& B, const uint8_t* lrow, uint32_t a_new, uint16_t b) const {
        if (lrow) return lrow[b];
        const int16_t l = T.nlog[T.sum(uint16_t(a_new), b)];
        if (l < 0) return 255;
        const int16_t bl = base_log_for(B)[b];
        int32_t diff = int32_t(l) - int32_t(bl);
        return uint8_t(diff < 0 ? diff + int32_t(T.qm1) : diff);
    }

    const uint8_t* label_row(const Buffers& B, uint32_t a_new) const {
        if (!have_label_tab) return nullptr;
        return label_tab[B.rep_idx_cache].data() + size_t(a_new) * T.na;
    }

    // Refine parent classes at depth k by a_new into depth k+1; returns true
    // if any class of size >= s survives.
    bool refine(Buffers& B, uint32_t k, uint32_t a_new) const {
        const auto& pbs = B.bs[k];
        const auto& pcl = B.classes[k];
        auto& cbs = B.bs[k + 1];
        auto& ccl = B.classes[k + 1];
        ccl.clear();
        const uint8_t* lrow = label_row(B, a_new);
        uint32_t out = 0;
        for (const auto& [lo, hi] : pcl) {
            // A class already at the threshold survives only if it stays
            // whole: bail at the first label mismatch.
            if (hi - lo == s) {
                const uint8_t first = label_of(B, lrow, a_new, pbs[lo]);
                if (first == 255) continue;
                bool whole = true;
                for (uint32_t idx = lo + 1; idx < hi && whole; ++idx)
                    whole = label_of(B, lrow, a_new, pbs[idx]) == first;
                if (whole) {
                    std::copy(pbs.begin() + lo, pbs.begin() + hi, cbs.begin() + out);
                    ccl.emplace_back(out, out + (hi - lo));
                    out += hi - lo;
                }
                continue;
            }
            for (uint32_t l = 0; l < T.qm1; ++l) B.cnt[l] = 0;
            for (uint32_t idx = lo; idx < hi; ++idx) {
                const uint8_t lbl = label_of(B, lrow, a_new, pbs[idx]);
                B.lab[idx - lo] = lbl;
                if (lbl != 255) ++B.cnt[lbl];
            }
            for (uint32_t l = 0; l < T.qm1; ++l) {
                if (B.cnt[l] >= s) {
                    B.pos[l] = out;
                    ccl.emplace_back(out, out + B.cnt[l]);
                    out += B.cnt[l];
                } else {
                    B.pos[l] = UINT32_MAX;
                }
            }
            for (uint32_t idx = lo; idx < hi; ++idx) {
                const uint8_t lbl = B.lab[idx - lo];
                if (lbl != 255 && B.pos[lbl] != UINT32_MAX) cbs[B.pos[lbl]++] = pbs[idx];
            }
        }
        return !ccl.empty();
    }

    const int16_t* base_log_for(const Buffers& B) const {
        return base_log[B.rep_idx_cache].data();
    }

    // Leaf step: extend the depth c-1 state by a_new and evaluate final
    // classes. Returns true when a violation was found (recorded in tr).
    bool leaf_eval(Buffers& B, uint32_t a_new, TaskResult& tr) const {
        const auto& pbs = B.bs[c - 1];
        const auto& pcl = B.classes[c - 1];
        const uint8_t* lrow = label_row(B, a_new);
        B.asub[c - 1] = a_new;
        bool entered = false;
        for (const auto& [lo, hi] : pcl) {
            if (hi - lo == s) {
                const uint8_t first = label_of(B, lrow, a_new, pbs[lo]);
                if (first == 255) continue;
                bool whole = true;
                for (uint32_t idx = lo + 1; idx < hi && whole; ++idx)
                    whole = label_of(B, lrow, a_new, pbs[idx]) == first;
                if (!whole) continue;
                B.leaf_pick.assign(pbs.begin() + lo, pbs.begin() + hi);
            } else {
                for (uint32_t l = 0; l < T.qm1; ++l) B.cnt[l] = 0;
                for (uint32_t idx = lo; idx < hi; ++idx) {
                    const uint8_t lbl = label_of(B, lrow, a_new, pbs[idx]);
                    B.lab[idx - lo] = lbl;
                    if (lbl != 255) ++B.cnt[lbl];
                }
                for (uint32_t l = 0; l < T.qm1; ++l) {
                    const uint64_t m = B.cnt[l];
                    if (m == 0 || (m < s && m <= tr.best)) continue;
                    B.leaf_pick.clear();
                    for (uint32_t idx = lo; idx < hi; ++idx)
                        if (B.lab[idx - lo] == l) B.leaf_pick.push_back(pbs[idx]);
                    auto [cc, e] = corrected_count(B, B.leaf_pick);
                    if (cc > tr.best) tr.best = cc;
                    if (m >= s) entered = true;
                    if (cc >= s) {
                        tr.found = true;
                        tr.found_value = cc;
                        tr.witness = build_witness(B, B.leaf_pick, e);
                        return true;
                    }
                }
                continue;
            }
            // Whole class of size s kept together: candidate violation.
            auto [cc, e] = corrected_count(B, B.leaf_pick);
            if (cc > tr.best) tr.best = cc;
            entered = true;
            if (cc >= s) {
                tr.found = true;
                tr.found_value = cc;
                tr.witness = build_witness(B, B.leaf_pick, e);
                return true;
            }
        }
        if (entered) ++tr.nodes;
        return false;
    }

    // DFS below a fixed (a_1 = rep, a_2) task. asub[0..k-1] chosen, state at
    // depth k valid, extensions ascend and skip a_1.
    void descend(Buffers& B, uint32_t k, TaskResult& tr) const {
        const uint32_t a1 = reps[B.rep_idx_cache];
        for (uint32_t a = B.asub[k - 1] + 1; a < T.na; ++a) {
            if (a == a1) continue;
            if (tr.found || tr.indeterminate) return;
            if (k + 1 == c) {
                if (leaf_eval(B, a, tr)) return;
                if (tr.nodes > budget) {
                    tr.indeterminate = true;
                    return;
                }
            } else {
                if (refine(B, k, a)) {
                    B.asub[k] = a;
                    if (++tr.nodes > budget) {
                        tr.indeterminate = true;
                        return;
                    }
                    descend(B, k + 1, tr);
                }
            }
        }
    }

    TaskResult run_task(const Task& task, Buffers& B) const {
        TaskResult tr;
        B.rep_idx_cache = task.rep_idx;
        const uint32_t a1 = reps[task.rep_idx];
        B.asub[0] = a1;

        // Depth-1 state: all live b's in one class.
        const auto& d1 = depth1_bs[task.rep_idx];
        std::copy(d1.begin(), d1.end(), B.bs[1].begin());
        B.classes[1].assign(1, {0u, uint32_t(d1.size())});

        if (c == 2) {
            if (leaf_eval(B, task.a2, tr)) return tr;
        } else if (refine(B, 1, task.a2)) {
            B.asub[1] = task.a2;
            ++tr.nodes;
            descend(B, 2, tr);
        }
        return tr;
    }

    SearchResult run() {
        std::vector<TaskResult> results(tasks.size());
        std::atomic<size_t> cursor{0};
        std::atomic<size_t> first_found{SIZE_MAX};

        auto worker = [&]() {
            Buffers B = make_buffers();
            for (;;) {
                size_t i = cursor.fetch_add(1);
                if (i >= tasks.size()) return;
                if (i > first_found.load(std::memory_order_relaxed)) {
                    results[i].skipped = true;
                    continue;
                }
                results[i] = run_task(tasks[i], B);
                if (results[i].found) {
                    size_t prev = first_found.load();
                    while (i < prev && !first_found.compare_exchange_weak(prev, i)) {}
                }
            }
        };
        if (threads <= 1 && tasks.size() > 0) {
            worker();
        } else {
            std::vector<std::thread> pool;
            for (uint32_t i = 0; i < threads; ++i) pool.emplace_back(worker);
            for (auto& th : pool) th.join();
        }

        // Deterministic merge in canonical task order: counts and the
        // verdict come from the prefix up to the first violation or budget
        // crossing, independent of scheduling.
        SearchResult r;
        r.nodes_explored = reps.size();
        for (size_t i = 0; i < tasks.size(); ++i) {
            const TaskResult& tr = results[i];
            if (tr.skipped)
                throw std::logic_error("class search: skipped task before first violation");
            r.nodes_explored += tr.nodes;
            r.value = std::max(r.value, tr.best);
            if (tr.found) {
                r.value = tr.found_value;
                r.witness = tr.witness;
                return r;
            }
            if (tr.indeterminate || r.nodes_explored > budget) {
                r.indeterminate = true;
                return r;
            }
        }
        return r;
    }
};

} // namespace

void SearchSpec::validate() const {
    if (c < 1) throw std::invalid_argument("SearchSpec: c must be >= 1");
    if (exact == threshold.has_value())
        throw std::invalid_argument("SearchSpec: exactly one of exact/threshold");
    if (threshold && *threshold < 1)
        throw std::invalid_argument("SearchSpec: threshold must be >= 1");
}

SearchResult naive_oracle(const AdjacencyMatrix& g, uint32_t c) {
    const uint32_t n = g.order();
    if (c < 1 || c > n) throw std::invalid_argument("naive_oracle: need 1 <= c <= n");
    if (binomial_capped(n, c, 10'000'000) > 10'000'000)
        throw CapacityError("naive_oracle: C(n,c) exceeds 10^7");

    const size_t words = g.words_per_row();
    std::vector<std::vector<uint64_t>> buf(c, std::vector<uint64_t>(words));
    std::vector<uint32_t> comb(c);
    for (uint32_t i = 0; i < c; ++i) comb[i] = i;

    auto recompute = [&](uint32_t level) {
        for (uint32_t k = level; k < c; ++k) {
            auto rv = g.row(comb[k]);
            if (k == 0) {
                std::copy(rv.begin(), rv.end(), buf[0].begin());
            } else {
                for (size_t w = 0; w < words; ++w) buf[k][w] = buf[k - 1][w] & rv[w];
            }
        }
    };

    SearchResult r;
    int64_t best = -1;
    recompute(0);
    for (;;) {
        ++r.nodes_explored;
        uint64_t cnt = 0;
        for (uint64_t w : buf[c - 1]) cnt += std::popcount(w);
        if (int64_t(cnt) > best) {
            best = int64_t(cnt);
            Witness w;
            w.left.assign(comb.begin(), comb.end());
            w.common = bits_to_indices(buf[c - 1], n);
            r.witness = std::move(w);
        }
        // Advance the combination odometer.
        int32_t level = int32_t(c) - 1;
        while (level >= 0 && comb[level] == n - c + level) --level;
        if (level < 0) break;
        ++comb[level];
        for (uint32_t k = level + 1; k < c; ++k) comb[k] = comb[k - 1] + 1;
        recompute(uint32_t(level));
    }
    r.value = uint64_t(best);
    return r;
}

SearchResult max_common_nbhd(const AdjacencyMatrix& g, const SearchSpec& spec) {
    spec.validate();
    if (spec.c > g.order())
        throw std::invalid_argument("max_common_nbhd: c exceeds graph order");
    VertexSearcher vs(g, spec);
    return vs.run();
}

SearchResult max_common_nbhd(const NormGraph& g, const SearchSpec& spec) {
    spec.validate();
    if (spec.c > g.order())
        throw std::invalid_argument("max_common_nbhd: c exceeds graph order");
    if (spec.exact || spec.c == 1) return max_common_nbhd(g.adjacency(), spec);

    // No c distinct a-values: every c-subset repeats an a and has empty
    // common neighborhood.
    if (spec.c > g.a_classes()) {
        SearchResult r;
        return r;
    }
    ClassSearcher cs(g, spec.c, *spec.threshold, spec.budget, spec.threads);
    return cs.run();
}

Certificate check_claim(const NormGraph& g, ClaimKind kind, const CheckOptions& opts) {
    const FieldCtx& F = g.ctx();
    Certificate cert;
    cert.p = F.p();
    cert.h = F.h();
    cert.t = F.t();
    cert.q = F.q();
    cert.exploratory = opts.exploratory;

    const uint64_t fact = factorial_checked(F.t() - 1);
    switch (kind) {
        case ClaimKind::ars_t:
            cert.claim = "ars_t";
            cert.c = F.t();
            cert.threshold = fact + 1;
            break;
        case ClaimKind::main_t_plus_1:
            cert.claim = "main_t_plus_1";
            cert.c = F.t() + 1;
            if (F.t() == 2)
                throw std::invalid_argument("main_t_plus_1 is degenerate at t = 2 (bound -1)");
            if (F.t() == 3 && !opts.exploratory)
                throw std::invalid_argument(
                    "main_t_plus_1 at t = 3 fails literally; rerun with the exploratory flag");
            cert.threshold = fact - 1;
            // The protected claim assumes q >= (t-1)!+1; smaller q is
            // exploratory territory.
            if (F.q() < fact + 1) cert.exploratory = true;
            break;
        case ClaimKind::custom:
            cert.claim = "custom";
            if (opts.custom_c < 1 || opts.custom_threshold < 1)
                throw std::invalid_argument("custom claim needs c >= 1 and threshold >= 1");
            cert.c = opts.custom_c;
            cert.threshold = opts.custom_threshold;
            cert.exploratory = true;
            break;
    }
    cert.bound = cert.threshold - 1;

    SearchSpec spec;
    spec.c = cert.c;
    spec.threshold = cert.threshold;
    spec.budget = opts.budget;
    spec.threads = opts.threads;

    auto t0 = std::chrono::steady_clock::now();
    SearchResult res = max_common_nbhd(g, spec);
    auto t1 = std::chrono::steady_clock::now();
    cert.wall_time_ms =
        uint64_t(std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count());

    cert.nodes_explored = res.nodes_explored;
    cert.observed = res.value;
    if (res.indeterminate) {
        cert.verdict = Verdict::INDETERMINATE;
    } else if (res.witness) {
        cert.verdict = Verdict::FAIL;
        // Independent re-check against adjacency before emission.
        for (uint32_t l : res.witness->left)
            for (uint32_t w : res.witness->common)
                if (!g.adjacent(l, w))
                    throw std::logic_error("check_claim: witness failed adjacency re-check");
        if (res.witness->left.size() != cert.c || res.witness->common.size() < cert.threshold)
            throw std::logic_error("check_claim: witness has wrong shape");
        cert.witness = res.witness;
    } else {
        cert.verdict = Verdict::PASS;
    }
    return cert;
}

} // namespace normgraph
