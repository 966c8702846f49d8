#ifndef NORMGRAPH_CERTIFICATE_HPP
#define NORMGRAPH_CERTIFICATE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "normgraph/graph.hpp"

namespace normgraph {

enum class Verdict { PASS, FAIL, INDETERMINATE };

const char* to_string(Verdict v);
Verdict verdict_from_string(const std::string& s);

struct Witness {
    std::vector<uint32_t> left;   // the c-subset, vertex indices ascending
    std::vector<uint32_t> common; // its common neighbors, ascending
};

/// Machine-checkable record of one K_{c,s} claim verification.
/// verdict = PASS iff observed <= bound; witness present on FAIL and in
/// exact mode, and is re-checked against adjacency before emission.
struct Certificate {
    std::string claim; // "ars_t" | "main_t_plus_1" | "custom"
    uint32_t p = 0, h = 0, t = 0;
    uint64_t q = 0;
    uint32_t c = 0;
    uint64_t bound = 0;
    uint64_t threshold = 0;
    Verdict verdict = Verdict::INDETERMINATE;
    uint64_t observed = 0;
    std::optional<Witness> witness;
    uint64_t nodes_explored = 0;
    uint64_t wall_time_ms = 0;
    bool exploratory = false;
};

std::string to_json(const Certificate& cert);
Certificate certificate_from_json(const std::string& text);

/// Result of one geometry verification (general position, span counting,
/// bilinear-form identity, neighborhood bridging).
struct GeometryCertificate {
    std::string check;
    uint32_t p = 0, h = 0, t = 0;
    uint64_t q = 0;
    Verdict verdict = Verdict::INDETERMINATE;
    uint64_t checked = 0; // subsets / pairs / trials examined
    uint64_t skipped = 0; // span counting: nondegenerate subsets tallied
    std::optional<std::string> witness;
    bool exhaustive = true;
    uint64_t samples = 0;
    uint64_t seed = 0;
    uint64_t wall_time_ms = 0;
};

std::string to_json(const GeometryCertificate& cert);
GeometryCertificate geometry_certificate_from_json(const std::string& text);

/// Stats record with keys exactly n, m, min_degree, max_degree,
/// loops_discarded, density_ratio.
std::string to_json(const GraphStats& stats);

} // namespace normgraph

#endif
