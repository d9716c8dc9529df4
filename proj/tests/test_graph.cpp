#include <doctest.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <fpdecomp/errors.hpp>
#include <fpdecomp/graph.hpp>

using namespace fpdecomp;

TEST_CASE("graph construction") {
    Graph g(4, {{2, 1}, {0, 3}});
    CHECK(g.n() == 4);
    CHECK(g.edge_count() == 2);
    CHECK(g.edges() == std::vector<std::pair<int, int>>{{0, 3}, {1, 2}});
    CHECK(g.has_edge(1, 2));
    CHECK(g.has_edge(2, 1));
    CHECK_FALSE(g.has_edge(0, 1));

    CHECK_THROWS_AS(Graph(-1), std::invalid_argument);
    CHECK_THROWS_AS(Graph(3, {{1, 1}}), std::invalid_argument);
    CHECK_THROWS_AS(Graph(3, {{0, 3}}), std::invalid_argument);
    CHECK_THROWS_AS(Graph(3, {{0, 1}, {1, 0}}), std::invalid_argument);

    CHECK(Graph(0) == Graph(0, {}));
    CHECK(complete_graph(0).n() == 0);
    CHECK_THROWS_AS(cycle_graph(2), std::invalid_argument);
}

TEST_CASE("catalog determinants") {
    CHECK(int_determinant(catalog_graph(CatalogId::K1)) == 0);
    CHECK(int_determinant(catalog_graph(CatalogId::K2)) == -1);
    CHECK(int_determinant(catalog_graph(CatalogId::K3)) == 2);
    CHECK(int_determinant(catalog_graph(CatalogId::K4)) == -3);
    CHECK(int_determinant(catalog_graph(CatalogId::K6)) == -5);
    CHECK(int_determinant(catalog_graph(CatalogId::C5)) == 2);
    CHECK(int_determinant(catalog_graph(CatalogId::B)) == -4);
    CHECK(int_determinant(catalog_graph(CatalogId::D)) == 7);

    CHECK(catalog_graph(CatalogId::B).n() == 5);
    CHECK(catalog_graph(CatalogId::B).edge_count() == 6);
    CHECK(catalog_graph(CatalogId::D).n() == 6);
    CHECK(catalog_graph(CatalogId::D).edge_count() == 11);

    CHECK_THROWS_AS(catalog_graph(CatalogId::X4), std::invalid_argument);
    CHECK_THROWS_AS(catalog_graph(CatalogId::X5), std::invalid_argument);

    CHECK(std::string(to_string(CatalogId::C5)) == "C5");
    CHECK(std::string(to_string(CatalogId::X5)) == "X5");
}

TEST_CASE("complete graph determinant formula") {
    for (int n = 2; n <= 8; ++n) {
        const std::int64_t expected = (n % 2 == 0) ? n : -n;
        CHECK(int_determinant(complete_graph(n + 1)) == expected);
    }
}

TEST_CASE("integer determinant bounds") {
    CHECK(int_determinant(complete_graph(12)) == -11);
    CHECK_THROWS_AS(int_determinant(complete_graph(13)), std::domain_error);
    CHECK(int_determinant(Graph(0)) == 1);  // empty product
    CHECK(int_determinant(Graph(2)) == 0);
}

TEST_CASE("adjacency matrix") {
    PrimeModulus m(5);
    SymMatrix a = adjacency(complete_graph(3), m);
    CHECK(a.size() == 3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(a.at(i, j) == (i == j ? 0u : 1u));
    CHECK(a.determinant().value() == 2);

    // Field determinant agrees with the integer determinant mod p.
    for (std::uint64_t p : {3ull, 5ull, 7ull, 11ull, 13ull, 37ull, 73ull}) {
        PrimeModulus mp(p);
        for (CatalogId id : {CatalogId::K2, CatalogId::K3, CatalogId::K4,
                             CatalogId::K6, CatalogId::C5, CatalogId::B,
                             CatalogId::D}) {
            const Graph g = catalog_graph(id);
            CHECK(adjacency(g, mp).determinant() ==
                  Scalar::from_int(int_determinant(g), mp));
        }
    }
}

TEST_CASE("direct sum") {
    Graph s = direct_sum({complete_graph(2), complete_graph(3)});
    CHECK(s.n() == 5);
    CHECK(s.edges() == std::vector<std::pair<int, int>>{
                           {0, 1}, {2, 3}, {2, 4}, {3, 4}});
    CHECK(int_determinant(s) == -2);

    CHECK(direct_sum({}).n() == 0);
    CHECK(direct_sum({Graph(2), complete_graph(2)}).n() == 4);

    // Block-diagonal adjacency.
    PrimeModulus m(7);
    SymMatrix a = adjacency(s, m);
    for (int i = 0; i < 2; ++i)
        for (int j = 2; j < 5; ++j) CHECK(a.at(i, j) == 0);
}

TEST_CASE("graph6 golden strings") {
    CHECK(emit_graph6(catalog_graph(CatalogId::K1)) == "@");
    CHECK(emit_graph6(catalog_graph(CatalogId::K2)) == "A_");
    CHECK(emit_graph6(catalog_graph(CatalogId::K3)) == "Bw");
    CHECK(emit_graph6(catalog_graph(CatalogId::K4)) == "C~");
    CHECK(emit_graph6(catalog_graph(CatalogId::K6)) == "E~~w");
    CHECK(emit_graph6(catalog_graph(CatalogId::C5)) == "Dhc");
    CHECK(emit_graph6(catalog_graph(CatalogId::B)) == "Dto");
    CHECK(emit_graph6(catalog_graph(CatalogId::D)) == "Ento");
    CHECK(emit_graph6(Graph(0)) == "?");

    // Star on five vertices, centre last.
    Graph star = parse_graph6("D?{");
    CHECK(star.n() == 5);
    CHECK(star.edges() == std::vector<std::pair<int, int>>{
                              {0, 4}, {1, 4}, {2, 4}, {3, 4}});

    CHECK(parse_graph6("A_") == complete_graph(2));
    CHECK(parse_graph6("@") == Graph(1));
    CHECK(parse_graph6("?") == Graph(0));
}

TEST_CASE("graph6 rejects malformed input") {
    CHECK_THROWS_AS(parse_graph6(""), ParseError);
    CHECK_THROWS_AS(parse_graph6("~"), ParseError);      // size byte out of range
    CHECK_THROWS_AS(parse_graph6("A"), ParseError);      // missing data byte
    CHECK_THROWS_AS(parse_graph6("A_?"), ParseError);    // trailing byte
    CHECK_THROWS_AS(parse_graph6("A`"), ParseError);     // nonzero padding bits
    CHECK_THROWS_AS(parse_graph6("AO"), ParseError);     // nonzero padding bits
    CHECK_THROWS_AS(parse_graph6("B\x1f\x1f"), ParseError);  // byte below 63
    CHECK_THROWS_AS(parse_graph6("A\x7f"), ParseError);  // byte above 126
}

TEST_CASE("graph6 round trip on every graph with up to five vertices") {
    for (int n = 0; n <= 5; ++n) {
        const int bits = n * (n - 1) / 2;
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << bits); ++mask) {
            std::vector<std::pair<int, int>> edges;
            int b = 0;
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j, ++b)
                    if ((mask >> b) & 1) edges.emplace_back(i, j);
            const Graph g(n, std::move(edges));
            const std::string text = emit_graph6(g);
            CHECK(parse_graph6(text) == g);
        }
    }
}

TEST_CASE("edge list parsing") {
    CHECK(parse_edge_list("n=3; 0-1, 1-2, 0-2") == complete_graph(3));
    CHECK(parse_edge_list("n=3;0-1,1-2,0-2") == complete_graph(3));
    CHECK(parse_edge_list(" n=2 ") == Graph(2));
    CHECK(parse_edge_list("n=2;") == Graph(2));
    CHECK(parse_edge_list("n=5; 0-1, 0-2, 0-3, 0-4, 1-4, 2-3") ==
          bowtie_graph());
    CHECK(parse_edge_list("n=4; 3-2") == Graph(4, {{2, 3}}));

    CHECK_THROWS_AS(parse_edge_list(""), ParseError);
    CHECK_THROWS_AS(parse_edge_list("graph"), ParseError);
    CHECK_THROWS_AS(parse_edge_list("n=x"), ParseError);
    CHECK_THROWS_AS(parse_edge_list("n=-2"), ParseError);
    CHECK_THROWS_AS(parse_edge_list("n=2; 0-0"), ParseError);
    CHECK_THROWS_AS(parse_edge_list("n=3; 0-1, 0-1"), ParseError);
    CHECK_THROWS_AS(parse_edge_list("n=2; 0-5"), ParseError);
    CHECK_THROWS_AS(parse_edge_list("n=3; 0"), ParseError);
    CHECK_THROWS_AS(parse_edge_list("n=3; 0-1 1-2"), ParseError);
    CHECK_THROWS_AS(parse_edge_list("n=3; ,"), ParseError);
}
