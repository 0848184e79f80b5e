#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace aclsim {

// One categorical attribute: an ordered value list plus the prior used when
// sampling node profiles. Priors must sum to 1 within 1e-9.
struct Attribute {
    std::string name;
    std::vector<std::string> values;
    std::vector<double> priors;
};

// Ordered list of attributes. Values are addressed either per attribute
// (attribute index, value index) or through a flat "global value index" that
// enumerates all values of all attributes in schema order; the openness
// matrix is indexed by global value indices.
class AttributeSchema {
public:
    AttributeSchema() = default;
    explicit AttributeSchema(std::vector<Attribute> attributes);

    std::size_t attribute_count() const { return attributes_.size(); }
    const Attribute& attribute(std::size_t a) const { return attributes_.at(a); }
    const std::vector<Attribute>& attributes() const { return attributes_; }

    // Total number of values across attributes (7 in the default scenario).
    std::size_t value_count() const { return total_values_; }

    std::size_t global_value_index(std::size_t attr, std::size_t value) const;
    // Inverse of global_value_index.
    std::pair<std::size_t, std::size_t> split_global_index(std::size_t g) const;
    const std::string& value_name(std::size_t g) const;

    // Lookup by name; throws std::invalid_argument if absent.
    std::size_t attribute_index(const std::string& name) const;
    std::size_t value_index(std::size_t attr, const std::string& value) const;
    // Resolves a bare value name ("Ikea") or a qualified one ("workplace:Ikea")
    // to a global index; bare names must be unambiguous across attributes.
    std::size_t resolve_value(const std::string& name) const;

    bool operator==(const AttributeSchema& other) const;

private:
    std::vector<Attribute> attributes_;
    std::vector<std::size_t> offsets_;  // global index of each attribute's first value
    std::size_t total_values_ = 0;
};

// The paper scenario: gender {male,female} 0.5/0.5, workplace
// {Starbucks,Google,Ikea} 1/3 each, location {Leeds,York} 0.5/0.5.
AttributeSchema default_schema();

}  // namespace aclsim
