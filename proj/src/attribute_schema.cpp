#include "aclsim/attribute_schema.hpp"

#include <cmath>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace aclsim {

AttributeSchema::AttributeSchema(std::vector<Attribute> attributes) : attributes_(std::move(attributes)) {
    if (attributes_.empty()) throw std::invalid_argument("schema: needs at least one attribute");
    std::unordered_set<std::string> attr_names;
    offsets_.reserve(attributes_.size());
    for (const auto& attr : attributes_) {
        if (!attr_names.insert(attr.name).second)
            throw std::invalid_argument("schema: duplicate attribute name '" + attr.name + "'");
        if (attr.values.size() < 2)
            throw std::invalid_argument("schema: attribute '" + attr.name + "' needs at least 2 values");
        std::unordered_set<std::string> value_names;
        for (const auto& v : attr.values) {
            if (!value_names.insert(v).second)
                throw std::invalid_argument("schema: duplicate value '" + v + "' in attribute '" + attr.name + "'");
        }
        if (attr.priors.size() != attr.values.size())
            throw std::invalid_argument("schema: attribute '" + attr.name + "' has " +
                                        std::to_string(attr.priors.size()) + " priors for " +
                                        std::to_string(attr.values.size()) + " values");
        double sum = 0.0;
        for (double p : attr.priors) {
            if (!(p >= 0.0 && p <= 1.0))
                throw std::invalid_argument("schema: prior out of [0,1] in attribute '" + attr.name + "'");
            sum += p;
        }
        if (std::abs(sum - 1.0) > 1e-9)
            throw std::invalid_argument("schema: priors of attribute '" + attr.name + "' sum to " +
                                        std::to_string(sum) + ", expected 1");
        offsets_.push_back(total_values_);
        total_values_ += attr.values.size();
    }
}

std::size_t AttributeSchema::global_value_index(std::size_t attr, std::size_t value) const {
    if (attr >= attributes_.size() || value >= attributes_[attr].values.size())
        throw std::out_of_range("schema: value index out of range");
    return offsets_[attr] + value;
}

std::pair<std::size_t, std::size_t> AttributeSchema::split_global_index(std::size_t g) const {
    if (g >= total_values_) throw std::out_of_range("schema: global value index out of range");
    std::size_t attr = attributes_.size() - 1;
    while (offsets_[attr] > g) --attr;
    return {attr, g - offsets_[attr]};
}

const std::string& AttributeSchema::value_name(std::size_t g) const {
    auto [a, v] = split_global_index(g);
    return attributes_[a].values[v];
}

std::size_t AttributeSchema::attribute_index(const std::string& name) const {
    for (std::size_t a = 0; a < attributes_.size(); ++a)
        if (attributes_[a].name == name) return a;
    throw std::invalid_argument("schema: unknown attribute '" + name + "'");
}

std::size_t AttributeSchema::value_index(std::size_t attr, const std::string& value) const {
    const auto& values = attributes_.at(attr).values;
    for (std::size_t v = 0; v < values.size(); ++v)
        if (values[v] == value) return v;
    throw std::invalid_argument("schema: unknown value '" + value + "' for attribute '" +
                                attributes_.at(attr).name + "'");
}

std::size_t AttributeSchema::resolve_value(const std::string& name) const {
    const auto colon = name.find(':');
    if (colon != std::string::npos) {
        const std::size_t a = attribute_index(name.substr(0, colon));
        return global_value_index(a, value_index(a, name.substr(colon + 1)));
    }
    std::size_t found = total_values_;
    for (std::size_t a = 0; a < attributes_.size(); ++a) {
        const auto& values = attributes_[a].values;
        for (std::size_t v = 0; v < values.size(); ++v) {
            if (values[v] != name) continue;
            if (found != total_values_)
                throw std::invalid_argument("schema: value name '" + name +
                                            "' is ambiguous, qualify as attribute:value");
            found = offsets_[a] + v;
        }
    }
    if (found == total_values_) throw std::invalid_argument("schema: unknown value '" + name + "'");
    return found;
}

bool AttributeSchema::operator==(const AttributeSchema& other) const {
    if (attributes_.size() != other.attributes_.size()) return false;
    for (std::size_t a = 0; a < attributes_.size(); ++a) {
        if (attributes_[a].name != other.attributes_[a].name) return false;
        if (attributes_[a].values != other.attributes_[a].values) return false;
        if (attributes_[a].priors != other.attributes_[a].priors) return false;
    }
    return true;
}

AttributeSchema default_schema() {
    const double third = 1.0 / 3.0;
    return AttributeSchema({
        {"gender", {"male", "female"}, {0.5, 0.5}},
        {"workplace", {"Starbucks", "Google", "Ikea"}, {third, third, third}},
        {"location", {"Leeds", "York"}, {0.5, 0.5}},
    });
}

}  // namespace aclsim
