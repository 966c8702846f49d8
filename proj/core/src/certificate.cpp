#include "normgraph/certificate.hpp"

#include <json.hpp>
#include <stdexcept>

namespace normgraph {

using nlohmann::json;

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::PASS: return "PASS";
        case Verdict::FAIL: return "FAIL";
        default: return "INDETERMINATE";
    }
}

Verdict verdict_from_string(const std::string& s) {
    if (s == "PASS") return Verdict::PASS;
    if (s == "FAIL") return Verdict::FAIL;
    if (s == "INDETERMINATE") return Verdict::INDETERMINATE;
    throw std::invalid_argument("unknown verdict: " + s);
}

std::string to_json(const Certificate& c) {
    json j;
    j["claim"] = c.claim;
    j["p"] = c.p;
    j["h"] = c.h;
    j["t"] = c.t;
    j["q"] = c.q;
    j["c"] = c.c;
    j["bound"] = c.bound;
    j["threshold"] = c.threshold;
    j["verdict"] = to_string(c.verdict);
    j["observed"] = c.observed;
    if (c.witness) {
        j["witness"] = json{{"left", c.witness->left}, {"common", c.witness->common}};
    }
    j["nodes_explored"] = c.nodes_explored;
    j["wall_time_ms"] = c.wall_time_ms;
    j["exploratory"] = c.exploratory;
    return j.dump(2);
}

Certificate certificate_from_json(const std::string& text) {
    json j = json::parse(text);
    Certificate c;
    c.claim = j.at("claim").get<std::string>();
    c.p = j.at("p").get<uint32_t>();
    c.h = j.at("h").get<uint32_t>();
    c.t = j.at("t").get<uint32_t>();
    c.q = j.at("q").get<uint64_t>();
    c.c = j.at("c").get<uint32_t>();
    c.bound = j.at("bound").get<uint64_t>();
    c.threshold = j.at("threshold").get<uint64_t>();
    c.verdict = verdict_from_string(j.at("verdict").get<std::string>());
    c.observed = j.at("observed").get<uint64_t>();
    if (j.contains("witness")) {
        Witness w;
        w.left = j["witness"].at("left").get<std::vector<uint32_t>>();
        w.common = j["witness"].at("common").get<std::vector<uint32_t>>();
        c.witness = std::move(w);
    }
    c.nodes_explored = j.at("nodes_explored").get<uint64_t>();
    c.wall_time_ms = j.at("wall_time_ms").get<uint64_t>();
    c.exploratory = j.at("exploratory").get<bool>();
    return c;
}

std::string to_json(const GeometryCertificate& c) {
    json j;
    j["check"] = c.check;
    j["p"] = c.p;
    j["h"] = c.h;
    j["t"] = c.t;
    j["q"] = c.q;
    j["verdict"] = to_string(c.verdict);
    j["checked"] = c.checked;
    j["skipped"] = c.skipped;
    if (c.witness) j["witness"] = *c.witness;
    j["exhaustive"] = c.exhaustive;
    j["samples"] = c.samples;
    j["seed"] = c.seed;
    j["wall_time_ms"] = c.wall_time_ms;
    return j.dump(2);
}

GeometryCertificate geometry_certificate_from_json(const std::string& text) {
    json j = json::parse(text);
    GeometryCertificate c;
    c.check = j.at("check").get<std::string>();
    c.p = j.at("p").get<uint32_t>();
    c.h = j.at("h").get<uint32_t>();
    c.t = j.at("t").get<uint32_t>();
    c.q = j.at("q").get<uint64_t>();
    c.verdict = verdict_from_string(j.at("verdict").get<std::string>());
    c.checked = j.at("checked").get<uint64_t>();
    c.skipped = j.at("skipped").get<uint64_t>();
    if (j.contains("witness")) c.witness = j["witness"].get<std::string>();
    c.exhaustive = j.at("exhaustive").get<bool>();
    c.samples = j.at("samples").get<uint64_t>();
    c.seed = j.at("seed").get<uint64_t>();
    c.wall_time_ms = j.at("wall_time_ms").get<uint64_t>();
    return c;
}

std::string to_json(const GraphStats& s) {
    json j;
    j["n"] = s.n;
    j["m"] = s.m;
    j["min_degree"] = s.min_degree;
    j["max_degree"] = s.max_degree;
    j["loops_discarded"] = s.loops_discarded;
    j["density_ratio"] = s.density_ratio;
    return j.dump(2);
}

} // namespace normgraph
