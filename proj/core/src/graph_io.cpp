#include "normgraph/graph_io.hpp"

#include <sstream>
#include <stdexcept>

#include "normgraph/errors.hpp"

namespace normgraph {

namespace {

void append_size(std::string& out, uint32_t n) {
    if (n <= 62) {
        out.push_back(char(63 + n));
    } else if (n <= 258047) {
        out.push_back(char(126));
        out.push_back(char(63 + ((n >> 12) & 63)));
        out.push_back(char(63 + ((n >> 6) & 63)));
        out.push_back(char(63 + (n & 63)));
    } else {
        throw CapacityError("graph6: order " + std::to_string(n) + " exceeds format limit 258047");
    }
}

uint32_t parse_size(const std::string& text, size_t& pos) {
    if (pos >= text.size()) throw std::invalid_argument("graph6: empty input");
    unsigned c = (unsigned char)text[pos];
    if (c == 126) {
        if (pos + 3 >= text.size()) throw std::invalid_argument("graph6: truncated size");
        if ((unsigned char)text[pos + 1] == 126)
            throw std::invalid_argument("graph6: order beyond 258047 unsupported");
        uint32_t n = 0;
        for (int i = 1; i <= 3; ++i) {
            unsigned b = (unsigned char)text[pos + i];
            if (b < 63 || b > 126) throw std::invalid_argument("graph6: bad size byte");
            n = (n << 6) | (b - 63);
        }
        pos += 4;
        return n;
    }
    if (c < 63 || c > 125) throw std::invalid_argument("graph6: bad size byte");
    pos += 1;
    return c - 63;
}

} // namespace

std::string encode_graph6(const AdjacencyMatrix& g) {
    const uint32_t n = g.order();
    std::string out;
    append_size(out, n);
    unsigned buf = 0;
    int nbits = 0;
    for (uint32_t j = 1; j < n; ++j)
        for (uint32_t i = 0; i < j; ++i) {
            buf = (buf << 1) | (g.test(i, j) ? 1u : 0u);
            if (++nbits == 6) {
                out.push_back(char(63 + buf));
                buf = 0;
                nbits = 0;
            }
        }
    if (nbits > 0) out.push_back(char(63 + (buf << (6 - nbits))));
    return out;
}

AdjacencyMatrix decode_graph6(const std::string& text) {
    size_t pos = 0;
    // Optional header used by some producers.
    const std::string header = ">>graph6<<";
    if (text.rfind(header, 0) == 0) pos = header.size();
    const uint32_t n = parse_size(text, pos);
    AdjacencyMatrix g(n);
    uint64_t need = n < 2 ? 0 : (uint64_t)n * (n - 1) / 2;
    unsigned buf = 0;
    int avail = 0;
    for (uint32_t j = 1; j < n; ++j)
        for (uint32_t i = 0; i < j; ++i) {
            if (avail == 0) {
                if (pos >= text.size()) throw std::invalid_argument("graph6: truncated bits");
                unsigned c = (unsigned char)text[pos++];
                if (c < 63 || c > 126) throw std::invalid_argument("graph6: bad data byte");
                buf = c - 63;
                avail = 6;
            }
            if ((buf >> (avail - 1)) & 1) g.add_edge(i, j);
            --avail;
            --need;
        }
    (void)need;
    return g;
}

std::string encode_dimacs(const AdjacencyMatrix& g) {
    std::ostringstream out;
    out << "p edge " << g.order() << ' ' << g.edge_count() << '\n';
    for (uint32_t u = 0; u < g.order(); ++u)
        for (uint32_t v = u + 1; v < g.order(); ++v)
            if (g.test(u, v)) out << "e " << (u + 1) << ' ' << (v + 1) << '\n';
    return out.str();
}

AdjacencyMatrix decode_dimacs(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    AdjacencyMatrix g;
    bool have_header = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == 'c') continue;
        std::istringstream ls(line);
        std::string tag;
        ls >> tag;
        if (tag == "p") {
            std::string kind;
            uint32_t n = 0;
            uint64_t m = 0;
            ls >> kind >> n >> m;
            if (kind != "edge") throw std::invalid_argument("dimacs: expected 'p edge'");
            g = AdjacencyMatrix(n);
            have_header = true;
        } else if (tag == "e") {
            if (!have_header) throw std::invalid_argument("dimacs: edge before header");
            uint32_t u = 0, v = 0;
            ls >> u >> v;
            if (u < 1 || v < 1 || u > g.order() || v > g.order() || u == v)
                throw std::invalid_argument("dimacs: bad edge endpoints");
            g.add_edge(u - 1, v - 1);
        }
    }
    if (!have_header) throw std::invalid_argument("dimacs: missing header");
    return g;
}

std::string encode_graph(const AdjacencyMatrix& g, GraphFormat format) {
    return format == GraphFormat::graph6 ? encode_graph6(g) : encode_dimacs(g);
}

} // namespace normgraph
