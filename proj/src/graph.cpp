#include "fpdecomp/graph.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <stdexcept>
#include <string_view>

#include "fpdecomp/errors.hpp"

namespace fpdecomp {

Graph::Graph(int n, std::vector<std::pair<int, int>> edges) : n_(n) {
    if (n < 0) throw std::invalid_argument("Graph: negative vertex count");
    for (auto& [i, j] : edges) {
        if (i > j) std::swap(i, j);
        if (i == j) {
            throw std::invalid_argument("Graph: loop at vertex " + std::to_string(i));
        }
        if (i < 0 || j >= n) {
            throw std::invalid_argument("Graph: edge (" + std::to_string(i) + ", " +
                                        std::to_string(j) + ") outside 0.." +
                                        std::to_string(n - 1));
        }
    }
    std::sort(edges.begin(), edges.end());
    const auto dup = std::adjacent_find(edges.begin(), edges.end());
    if (dup != edges.end()) {
        throw std::invalid_argument("Graph: duplicate edge (" + std::to_string(dup->first) +
                                    ", " + std::to_string(dup->second) + ")");
    }
    edges_ = std::move(edges);
}

bool Graph::has_edge(int i, int j) const {
    if (i > j) std::swap(i, j);
    return std::binary_search(edges_.begin(), edges_.end(), std::make_pair(i, j));
}

const char* to_string(CatalogId id) {
    switch (id) {
        case CatalogId::K1: return "K1";
        case CatalogId::K2: return "K2";
        case CatalogId::K3: return "K3";
        case CatalogId::K4: return "K4";
        case CatalogId::K6: return "K6";
        case CatalogId::C5: return "C5";
        case CatalogId::B: return "B";
        case CatalogId::D: return "D";
        case CatalogId::X4: return "X4";
        case CatalogId::X5: return "X5";
    }
    return "?";
}

Graph complete_graph(int n) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
    return Graph(n, std::move(e));
}

Graph cycle_graph(int n) {
    if (n < 3) throw std::invalid_argument("cycle_graph: need at least 3 vertices");
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
    return Graph(n, std::move(e));
}

Graph bowtie_graph() {
    return Graph(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 4}, {2, 3}});
}

Graph d_graph() {
    return Graph(6, {{0, 1}, {1, 2}, {2, 3}, {0, 3}, {1, 3},
                     {0, 4}, {1, 4}, {3, 4}, {1, 5}, {2, 5}, {3, 5}});
}

Graph catalog_graph(CatalogId id) {
    switch (id) {
        case CatalogId::K1: return complete_graph(1);
        case CatalogId::K2: return complete_graph(2);
        case CatalogId::K3: return complete_graph(3);
        case CatalogId::K4: return complete_graph(4);
        case CatalogId::K6: return complete_graph(6);
        case CatalogId::C5: return cycle_graph(5);
        case CatalogId::B: return bowtie_graph();
        case CatalogId::D: return d_graph();
        case CatalogId::X4:
        case CatalogId::X5:
            throw std::invalid_argument("catalog_graph: X4/X5 depend on the prime; "
                                        "take them from the invariant report");
    }
    throw std::invalid_argument("catalog_graph: unknown id");
}

SymMatrix adjacency(const Graph& g, PrimeModulus p) {
    SymMatrix a(g.n(), p);
    for (const auto& [i, j] : g.edges()) a.set(i, j, 1);
    return a;
}

namespace detail {

std::int64_t bareiss_inplace(int n, std::int64_t* a) {
    // Fraction-free Bareiss elimination; every division is exact.
    std::int64_t sign = 1, prev = 1;
    for (int k = 0; k + 1 < n; ++k) {
        if (a[static_cast<std::size_t>(k) * n + k] == 0) {
            int pivot = -1;
            for (int i = k + 1; i < n; ++i) {
                if (a[static_cast<std::size_t>(i) * n + k] != 0) { pivot = i; break; }
            }
            if (pivot < 0) return 0;
            for (int j = 0; j < n; ++j) {
                std::swap(a[static_cast<std::size_t>(k) * n + j],
                          a[static_cast<std::size_t>(pivot) * n + j]);
            }
            sign = -sign;
        }
        const std::int64_t pv = a[static_cast<std::size_t>(k) * n + k];
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) {
                auto& mij = a[static_cast<std::size_t>(i) * n + j];
                mij = (mij * pv - a[static_cast<std::size_t>(i) * n + k] *
                                      a[static_cast<std::size_t>(k) * n + j]) /
                      prev;
            }
        }
        prev = pv;
    }
    return n == 0 ? 1 : sign * a[static_cast<std::size_t>(n - 1) * n + (n - 1)];
}

} // namespace detail

std::int64_t int_determinant(const Graph& g) {
    const int n = g.n();
    if (n > kIntDetMaxVertices) {
        throw std::domain_error("int_determinant: " + std::to_string(n) + " vertices exceeds " +
                                std::to_string(kIntDetMaxVertices) +
                                " (64-bit overflow guard)");
    }
    std::vector<std::int64_t> a(static_cast<std::size_t>(n) * n, 0);
    for (const auto& [i, j] : g.edges()) {
        a[static_cast<std::size_t>(i) * n + j] = 1;
        a[static_cast<std::size_t>(j) * n + i] = 1;
    }
    return detail::bareiss_inplace(n, a.data());
}

Graph direct_sum(const std::vector<Graph>& parts) {
    int total = 0;
    for (const auto& g : parts) total += g.n();
    std::vector<std::pair<int, int>> e;
    int offset = 0;
    for (const auto& g : parts) {
        for (const auto& [i, j] : g.edges()) e.emplace_back(offset + i, offset + j);
        offset += g.n();
    }
    return Graph(total, std::move(e));
}

namespace {

constexpr int kG6Base = 63;
constexpr int kG6MaxN = 62;

int g6_bit_count(int n) { return n * (n - 1) / 2; }
int g6_body_bytes(int n) { return (g6_bit_count(n) + 5) / 6; }

} // namespace

Graph parse_graph6(const std::string& text) {
    if (text.empty()) {
        throw ParseError("graph6: empty input");
    }
    const unsigned char size_byte = static_cast<unsigned char>(text[0]);
    if (size_byte < kG6Base || size_byte > kG6Base + kG6MaxN) {
        throw ParseError("graph6: byte 0 is not a size byte for n < 63");
    }
    const int n = size_byte - kG6Base;
    const std::size_t expected = 1 + static_cast<std::size_t>(g6_body_bytes(n));
    if (text.size() != expected) {
        throw ParseError("graph6: n=" + std::to_string(n) + " needs " +
                         std::to_string(expected) + " bytes, got " +
                         std::to_string(text.size()));
    }
    const int bits = g6_bit_count(n);
    std::vector<bool> bit(static_cast<std::size_t>(g6_body_bytes(n)) * 6, false);
    for (std::size_t b = 1; b < text.size(); ++b) {
        const unsigned char c = static_cast<unsigned char>(text[b]);
        if (c < kG6Base || c > 126) {
            throw ParseError("graph6: byte " + std::to_string(b) + " (value " +
                             std::to_string(int{c}) + ") outside [63, 126]");
        }
        const int v = c - kG6Base;
        for (int k = 0; k < 6; ++k) {
            bit[(b - 1) * 6 + static_cast<std::size_t>(k)] = (v >> (5 - k)) & 1;
        }
    }
    for (std::size_t k = static_cast<std::size_t>(bits); k < bit.size(); ++k) {
        if (bit[k]) {
            throw ParseError("graph6: nonzero padding bit " + std::to_string(k) +
                             " in byte " + std::to_string(1 + k / 6));
        }
    }
    std::vector<std::pair<int, int>> e;
    std::size_t idx = 0;
    for (int j = 1; j < n; ++j) {
        for (int i = 0; i < j; ++i, ++idx) {
            if (bit[idx]) e.emplace_back(i, j);
        }
    }
    return Graph(n, std::move(e));
}

std::string emit_graph6(const Graph& g) {
    const int n = g.n();
    if (n > kG6MaxN) {
        throw std::domain_error("graph6: only n < 63 is supported");
    }
    std::string out;
    out.push_back(static_cast<char>(kG6Base + n));
    int acc = 0, filled = 0;
    for (int j = 1; j < n; ++j) {
        for (int i = 0; i < j; ++i) {
            acc = (acc << 1) | (g.has_edge(i, j) ? 1 : 0);
            if (++filled == 6) {
                out.push_back(static_cast<char>(kG6Base + acc));
                acc = 0;
                filled = 0;
            }
        }
    }
    if (filled > 0) {
        acc <<= (6 - filled);
        out.push_back(static_cast<char>(kG6Base + acc));
    }
    return out;
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

int parse_int(std::string_view s, const std::string& what) {
    s = trim(s);
    int value = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        throw ParseError("edge list: bad " + what + " '" + std::string(s) + "'");
    }
    return value;
}

} // namespace

Graph parse_edge_list(const std::string& text) {
    std::string_view s = trim(text);
    if (!s.starts_with("n=")) {
        throw ParseError("edge list: expected leading 'n=<count>'");
    }
    s.remove_prefix(2);
    const auto semi = s.find(';');
    const int n = parse_int(s.substr(0, semi), "vertex count");
    if (n < 0) throw ParseError("edge list: negative vertex count");

    std::vector<std::pair<int, int>> edges;
    if (semi != std::string_view::npos) {
        std::string_view rest = s.substr(semi + 1);
        while (!trim(rest).empty()) {
            const auto comma = rest.find(',');
            std::string_view tok = trim(rest.substr(0, comma));
            rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
            if (tok.empty()) {
                throw ParseError("edge list: empty edge entry");
            }
            const auto dash = tok.find('-');
            if (dash == std::string_view::npos) {
                throw ParseError("edge list: edge '" + std::string(tok) +
                                 "' is not of the form <i>-<j>");
            }
            const int i = parse_int(tok.substr(0, dash), "vertex");
            const int j = parse_int(tok.substr(dash + 1), "vertex");
            edges.emplace_back(i, j);
        }
    }
    try {
        return Graph(n, std::move(edges));
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("edge list: ") + e.what());
    }
}

} // namespace fpdecomp
