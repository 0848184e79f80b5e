#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>

#include "aclsim/graph.hpp"
#include "aclsim/graph_io.hpp"
#include "aclsim/rng.hpp"
#include "test_util.hpp"

using namespace aclsim;
using testutil::make_attributed_graph;
using testutil::make_graph;

TEST_CASE("schema validation") {
    CHECK_THROWS_AS(AttributeSchema({{"a", {"x"}, {1.0}}}), std::invalid_argument);
    CHECK_THROWS_AS(AttributeSchema({{"a", {"x", "x"}, {0.5, 0.5}}}), std::invalid_argument);
    CHECK_THROWS_AS(AttributeSchema({{"a", {"x", "y"}, {0.6, 0.6}}}), std::invalid_argument);
    CHECK_THROWS_AS(AttributeSchema({{"a", {"x", "y"}, {0.5, 0.5}}, {"a", {"p", "q"}, {0.5, 0.5}}}),
                    std::invalid_argument);
    const AttributeSchema s = default_schema();
    CHECK(s.attribute_count() == 3);
    CHECK(s.value_count() == 7);
    CHECK(s.resolve_value("Ikea") == 4);
    CHECK(s.resolve_value("workplace:Ikea") == 4);
    CHECK(s.value_name(4) == "Ikea");
    CHECK_THROWS_AS(s.resolve_value("Sainsburys"), std::invalid_argument);
}

TEST_CASE("shared attribute count") {
    // profiles: (gender, workplace, location) value indices
    auto g = make_attributed_graph(
        {{0, 1, 1},   // male, Google, York
         {0, 1, 1},   // male, Google, York
         {1, 2, 0},   // female, Ikea, Leeds
         {1, 1, 1}},  // female, Google, York
        {});
    CHECK(g.shared_attribute_count(0, 1) == 3);
    CHECK(g.shared_attribute_count(0, 2) == 0);
    CHECK(g.shared_attribute_count(0, 3) == 2);
    CHECK(g.shared_attribute_count(3, 0) == g.shared_attribute_count(0, 3));
    CHECK_THROWS_WITH_AS(g.shared_attribute_count(0, 99), doctest::Contains("node not found"),
                         std::invalid_argument);
}

TEST_CASE("degree") {
    auto isolated = make_graph(1, {});
    CHECK(isolated.degree(0) == 0);

    auto triangle = make_graph(3, {{0, 1}, {1, 2}, {0, 2}});
    CHECK(triangle.degree(0) == 2);
    CHECK(triangle.degree(1) == 2);
    CHECK(triangle.degree(2) == 2);

    auto path = make_graph(3, {{0, 1}, {1, 2}});
    CHECK(path.degree(1) == 2);
    CHECK_THROWS_AS(path.degree(5), std::invalid_argument);
}

TEST_CASE("degree sum property") {
    Rng rng(7);
    for (int t = 0; t < 20; ++t) {
        const std::size_t n = 2 + rng.next_below(20);
        AttributedGraph g(testutil::tiny_schema());
        for (std::size_t i = 0; i < n; ++i)
            g.add_node(NodeProfile{{static_cast<std::uint16_t>(rng.next_below(2))}});
        for (NodeId u = 0; u + 1 < n; ++u)
            for (NodeId v = u + 1; v < n; ++v)
                if (rng.next_double() < 0.3) g.add_edge(u, v);
        std::size_t sum = 0;
        for (NodeId v = 0; v < n; ++v) sum += g.degree(v);
        CHECK(sum == 2 * g.edge_count());
        for (NodeId u = 0; u < n; ++u)
            for (NodeId v = 0; v < n; ++v)
                if (u != v) CHECK(g.shared_attribute_count(u, v) == g.shared_attribute_count(v, u));
    }
}

TEST_CASE("simple graph invariants") {
    auto g = make_graph(3, {{0, 1}});
    CHECK_THROWS_AS(g.add_edge(1, 1), std::invalid_argument);
    CHECK_THROWS_AS(g.add_edge(1, 0), std::invalid_argument);
    CHECK_THROWS_AS(g.add_edge(0, 9), std::invalid_argument);
    CHECK(g.has_edge(0, 1));
    CHECK(g.has_edge(1, 0));
    CHECK_FALSE(g.has_edge(0, 2));
}

TEST_CASE("json round trip") {
    SUBCASE("empty graph") {
        AttributedGraph g(default_schema());
        const AttributedGraph back = graph_from_json(graph_to_json(g));
        CHECK(back == g);
        CHECK(back.node_count() == 0);
    }
    SUBCASE("triangle with profiles") {
        auto g = make_attributed_graph({{0, 1, 1}, {1, 2, 0}, {0, 0, 1}}, {{0, 1}, {1, 2}, {0, 2}});
        const std::string text = graph_to_json(g);
        const AttributedGraph back = graph_from_json(text);
        CHECK(back == g);
        CHECK(graph_to_json(back) == text);  // byte-identical re-serialization
    }
}

TEST_CASE("json parse errors") {
    CHECK_THROWS_WITH_AS(graph_from_json("{\n  \"schema\": oops\n}"), doctest::Contains("line 2"),
                         ParseError);
    auto g = make_graph(2, {{0, 1}});
    std::string text = graph_to_json(g);
    // Duplicating the edge line violates the simple-graph invariant.
    const auto pos = text.find("[\n      0,\n      1\n    ]");
    REQUIRE(pos != std::string::npos);
    text.insert(pos, "[\n      0,\n      1\n    ],\n    ");
    CHECK_THROWS_WITH_AS(graph_from_json(text), doctest::Contains("duplicate edge"), ParseError);

    // Unknown value name: schema mismatch.
    std::string mismatch = graph_to_json(g);
    const auto red = mismatch.find("\"red\"");
    REQUIRE(red != std::string::npos);
    mismatch.replace(red, 5, "\"pink\"");
    CHECK_THROWS_WITH_AS(graph_from_json(mismatch), doctest::Contains("schema mismatch"), ParseError);

    CHECK_THROWS_AS(graph_from_json("[1,2,3]"), ParseError);
    CHECK_THROWS_WITH_AS(
        graph_from_json(R"({"schema":{"attributes":[{"name":"a","values":["x","y"]}]},)"
                        R"("nodes":[{"id":0,"values":["x"]},{"id":1,"values":["y"]}],)"
                        R"("edges":[[1,0]]})"),
        doctest::Contains("id_low < id_high"), ParseError);
}

TEST_CASE("save and load files") {
    auto g = make_attributed_graph({{0, 2, 1}, {1, 2, 0}, {0, 1, 1}, {1, 0, 0}},
                                   {{0, 1}, {2, 3}, {0, 3}});
    const std::string path = "test_graph_roundtrip.json";
    save_graph(g, path);
    CHECK(load_graph(path) == g);
    std::remove(path.c_str());
    CHECK_THROWS(load_graph("does_not_exist.json"));
}

TEST_CASE("graphml and dot exports") {
    auto g = make_attributed_graph({{0, 1, 1}, {1, 1, 0}}, {{0, 1}});
    const std::string gml = graph_to_graphml(g);
    CHECK(gml.find("<graphml") != std::string::npos);
    CHECK(gml.find("attr.name=\"workplace\"") != std::string::npos);
    CHECK(gml.find("<data key=\"d1\">Google</data>") != std::string::npos);
    CHECK(gml.find("<edge source=\"n0\" target=\"n1\"/>") != std::string::npos);
    const std::string dot = graph_to_dot(g);
    CHECK(dot.find("graph g {") != std::string::npos);
    CHECK(dot.find("0 -- 1;") != std::string::npos);
}
