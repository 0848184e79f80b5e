#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "aclsim/graph.hpp"

namespace aclsim {

// Raised for malformed graph files; message includes a line number when the
// offending location is known.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// JSON graph document: {"schema": {"attributes": [{name, values, priors}...]},
// "nodes": [{"id": i, "values": [names...]}...],
// "edges": [[lo, hi]...] with lo < hi, sorted ascending}.
std::string graph_to_json(const AttributedGraph& g);
AttributedGraph graph_from_json(const std::string& text);

void save_graph(const AttributedGraph& g, const std::string& path);
AttributedGraph load_graph(const std::string& path);

// Export-only formats for external tooling.
std::string graph_to_graphml(const AttributedGraph& g);
std::string graph_to_dot(const AttributedGraph& g);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace aclsim
