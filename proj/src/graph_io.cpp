#include "aclsim/graph_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace aclsim {

using Json = nlohmann::ordered_json;

namespace {

std::size_t line_of_byte(const std::string& text, std::size_t byte) {
    std::size_t line = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i)
        if (text[i] == '\n') ++line;
    return line;
}

Json parse_document(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError("graph file: parse error at line " + std::to_string(line_of_byte(text, e.byte)) +
                         ": " + e.what());
    }
}

std::string xml_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace

std::string graph_to_json(const AttributedGraph& g) {
    Json doc;
    Json attrs = Json::array();
    for (const auto& attr : g.schema().attributes()) {
        attrs.push_back({{"name", attr.name}, {"values", attr.values}, {"priors", attr.priors}});
    }
    doc["schema"] = {{"attributes", std::move(attrs)}};

    Json nodes = Json::array();
    for (NodeId v = 0; v < g.node_count(); ++v) {
        Json values = Json::array();
        const auto& profile = g.profile(v);
        for (std::size_t a = 0; a < profile.values.size(); ++a)
            values.push_back(g.schema().attribute(a).values[profile.values[a]]);
        nodes.push_back({{"id", v}, {"values", std::move(values)}});
    }
    doc["nodes"] = std::move(nodes);

    auto edges = g.edges();
    std::sort(edges.begin(), edges.end());
    Json edge_array = Json::array();
    for (const auto& [lo, hi] : edges) edge_array.push_back({lo, hi});
    doc["edges"] = std::move(edge_array);
    return doc.dump(2) + "\n";
}

AttributedGraph graph_from_json(const std::string& text) {
    const Json doc = parse_document(text);
    if (!doc.is_object() || !doc.contains("schema") || !doc.contains("nodes") || !doc.contains("edges"))
        throw ParseError("graph file: expected object with schema/nodes/edges");

    std::vector<Attribute> attrs;
    try {
        for (const auto& a : doc.at("schema").at("attributes")) {
            Attribute attr;
            attr.name = a.at("name").get<std::string>();
            attr.values = a.at("values").get<std::vector<std::string>>();
            if (a.contains("priors"))
                attr.priors = a.at("priors").get<std::vector<double>>();
            else
                attr.priors.assign(attr.values.size(), 1.0 / static_cast<double>(attr.values.size()));
            attrs.push_back(std::move(attr));
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("graph file: bad schema: ") + e.what());
    }
    AttributeSchema schema;
    try {
        schema = AttributeSchema(std::move(attrs));
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("graph file: ") + e.what());
    }

    const auto& nodes = doc.at("nodes");
    std::vector<NodeProfile> profiles(nodes.size());
    std::vector<bool> seen(nodes.size(), false);
    for (const auto& n : nodes) {
        std::size_t id;
        std::vector<std::string> names;
        try {
            id = n.at("id").get<std::size_t>();
            names = n.at("values").get<std::vector<std::string>>();
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(std::string("graph file: bad node entry: ") + e.what());
        }
        if (id >= nodes.size())
            throw ParseError("graph file: node id " + std::to_string(id) + " not dense in [0," +
                             std::to_string(nodes.size()) + ")");
        if (seen[id]) throw ParseError("graph file: duplicate node id " + std::to_string(id));
        seen[id] = true;
        if (names.size() != schema.attribute_count())
            throw ParseError("graph file: node " + std::to_string(id) + " has " +
                             std::to_string(names.size()) + " values, schema has " +
                             std::to_string(schema.attribute_count()) + " attributes");
        NodeProfile p;
        for (std::size_t a = 0; a < names.size(); ++a) {
            try {
                p.values.push_back(static_cast<std::uint16_t>(schema.value_index(a, names[a])));
            } catch (const std::invalid_argument&) {
                throw ParseError("graph file: node " + std::to_string(id) + ": schema mismatch, value '" +
                                 names[a] + "' not in attribute '" + schema.attribute(a).name + "'");
            }
        }
        profiles[id] = std::move(p);
    }

    AttributedGraph g(schema);
    for (auto& p : profiles) g.add_node(std::move(p));
    std::size_t index = 0;
    for (const auto& e : doc.at("edges")) {
        if (!e.is_array() || e.size() != 2)
            throw ParseError("graph file: edge " + std::to_string(index) + " is not a pair");
        std::size_t lo, hi;
        try {
            lo = e.at(0).get<std::size_t>();
            hi = e.at(1).get<std::size_t>();
        } catch (const nlohmann::json::exception& ex) {
            throw ParseError(std::string("graph file: bad edge entry: ") + ex.what());
        }
        if (lo >= g.node_count() || hi >= g.node_count())
            throw ParseError("graph file: edge " + std::to_string(index) + " references unknown node");
        if (lo >= hi)
            throw ParseError("graph file: edge " + std::to_string(index) + " must satisfy id_low < id_high");
        try {
            g.add_edge(static_cast<NodeId>(lo), static_cast<NodeId>(hi));
        } catch (const std::invalid_argument& ex) {
            throw ParseError("graph file: edge " + std::to_string(index) + ": " + ex.what());
        }
        ++index;
    }
    return g;
}

void save_graph(const AttributedGraph& g, const std::string& path) {
    write_text_file(path, graph_to_json(g));
}

AttributedGraph load_graph(const std::string& path) {
    return graph_from_json(read_text_file(path));
}

std::string graph_to_graphml(const AttributedGraph& g) {
    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n";
    const auto& schema = g.schema();
    for (std::size_t a = 0; a < schema.attribute_count(); ++a) {
        out << "  <key id=\"d" << a << "\" for=\"node\" attr.name=\"" << xml_escape(schema.attribute(a).name)
            << "\" attr.type=\"string\"/>\n";
    }
    out << "  <graph id=\"G\" edgedefault=\"undirected\">\n";
    for (NodeId v = 0; v < g.node_count(); ++v) {
        out << "    <node id=\"n" << v << "\">";
        const auto& p = g.profile(v);
        for (std::size_t a = 0; a < p.values.size(); ++a)
            out << "<data key=\"d" << a << "\">" << xml_escape(schema.attribute(a).values[p.values[a]]) << "</data>";
        out << "</node>\n";
    }
    auto edges = g.edges();
    std::sort(edges.begin(), edges.end());
    for (const auto& [lo, hi] : edges)
        out << "    <edge source=\"n" << lo << "\" target=\"n" << hi << "\"/>\n";
    out << "  </graph>\n</graphml>\n";
    return out.str();
}

std::string graph_to_dot(const AttributedGraph& g) {
    std::ostringstream out;
    out << "graph g {\n";
    for (NodeId v = 0; v < g.node_count(); ++v) {
        const auto& p = g.profile(v);
        out << "  " << v << " [label=\"" << v;
        for (std::size_t a = 0; a < p.values.size(); ++a)
            out << "\\n" << g.schema().attribute(a).values[p.values[a]];
        out << "\"];\n";
    }
    auto edges = g.edges();
    std::sort(edges.begin(), edges.end());
    for (const auto& [lo, hi] : edges) out << "  " << lo << " -- " << hi << ";\n";
    out << "}\n";
    return out.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace aclsim
