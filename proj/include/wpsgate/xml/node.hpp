#ifndef WPSGATE_XML_NODE_HPP
#define WPSGATE_XML_NODE_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace wpsgate::xml {

/// Thrown when the input is not a well-formed XML document.
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// Minimal element tree. Names are local names: namespace prefixes are
/// stripped on parse and xmlns declarations dropped, so documents from
/// servers with different prefix conventions compare equal.
struct Node {
    std::string name;
    std::vector<std::pair<std::string, std::string>> attrs;
    std::vector<Node> children;
    std::string text; // concatenated character data; cleared when
                      // whitespace-only and the element has children

    const std::string* attr(std::string_view name) const;
    const Node* child(std::string_view name) const;
    std::vector<const Node*> children_named(std::string_view name) const;
    std::string child_text(std::string_view name) const; // "" when absent

    Node& add(std::string name);
    Node& set_attr(std::string name, std::string value);
    Node& set_text(std::string text);

    friend bool operator==(const Node&, const Node&) = default;
};

/// Parse a document; throws ParseError on anything that is not XML.
Node parse(std::string_view bytes);

/// Serialize with an XML declaration and 2-space indentation.
/// Deterministic: equal trees yield identical bytes.
std::string serialize(const Node& root);

std::string escape_text(std::string_view s);
std::string escape_attr(std::string_view s);

} // namespace wpsgate::xml

#endif
