#include "wpsgate/xml/node.hpp"

#include <expat.h>

#include <algorithm>
#include <cctype>

namespace wpsgate::xml {

namespace {

std::string local_name(const char* qname) {
    std::string_view sv(qname);
    auto pos = sv.rfind(':');
    if (pos != std::string_view::npos) sv.remove_prefix(pos + 1);
    return std::string(sv);
}

bool is_xmlns(std::string_view qname) {
    return qname == "xmlns" || qname.substr(0, 6) == "xmlns:";
}

bool whitespace_only(std::string_view s) {
    return std::all_of(s.begin(), s.end(),
                       [](unsigned char c) { return std::isspace(c); });
}

struct ParseState {
    Node root;
    std::vector<Node*> stack;
    bool have_root = false;
};

void XMLCALL on_start(void* ud, const XML_Char* name, const XML_Char** atts) {
    auto* st = static_cast<ParseState*>(ud);
    Node* node;
    if (st->stack.empty()) {
        st->root = Node{};
        st->have_root = true;
        node = &st->root;
    } else {
        node = &st->stack.back()->children.emplace_back();
    }
    node->name = local_name(name);
    for (int i = 0; atts[i]; i += 2) {
        if (is_xmlns(atts[i])) continue;
        node->attrs.emplace_back(local_name(atts[i]), atts[i + 1]);
    }
    st->stack.push_back(node);
}

void XMLCALL on_end(void* ud, const XML_Char*) {
    auto* st = static_cast<ParseState*>(ud);
    Node* node = st->stack.back();
    if (!node->children.empty() && whitespace_only(node->text)) node->text.clear();
    st->stack.pop_back();
}

void XMLCALL on_chardata(void* ud, const XML_Char* s, int len) {
    auto* st = static_cast<ParseState*>(ud);
    if (!st->stack.empty()) st->stack.back()->text.append(s, static_cast<size_t>(len));
}

void serialize_node(const Node& node, std::string& out, int depth) {
    std::string indent(static_cast<size_t>(depth) * 2, ' ');
    out += indent;
    out += '<';
    out += node.name;
    for (const auto& [k, v] : node.attrs) {
        out += ' ';
        out += k;
        out += "=\"";
        out += escape_attr(v);
        out += '"';
    }
    if (node.children.empty() && node.text.empty()) {
        out += "/>\n";
        return;
    }
    out += '>';
    if (node.children.empty()) {
        out += escape_text(node.text);
        out += "</";
        out += node.name;
        out += ">\n";
        return;
    }
    out += '\n';
    for (const auto& c : node.children) serialize_node(c, out, depth + 1);
    out += indent;
    out += "</";
    out += node.name;
    out += ">\n";
}

} // namespace

const std::string* Node::attr(std::string_view name) const {
    for (const auto& [k, v] : attrs) {
        if (k == name) return &v;
    }
    return nullptr;
}

const Node* Node::child(std::string_view name) const {
    for (const auto& c : children) {
        if (c.name == name) return &c;
    }
    return nullptr;
}

std::vector<const Node*> Node::children_named(std::string_view name) const {
    std::vector<const Node*> out;
    for (const auto& c : children) {
        if (c.name == name) out.push_back(&c);
    }
    return out;
}

std::string Node::child_text(std::string_view name) const {
    const Node* c = child(name);
    return c ? c->text : std::string();
}

Node& Node::add(std::string name) {
    Node& c = children.emplace_back();
    c.name = std::move(name);
    return c;
}

Node& Node::set_attr(std::string name, std::string value) {
    attrs.emplace_back(std::move(name), std::move(value));
    return *this;
}

Node& Node::set_text(std::string t) {
    text = std::move(t);
    return *this;
}

Node parse(std::string_view bytes) {
    XML_Parser parser = XML_ParserCreate(nullptr);
    if (!parser) throw ParseError("parser allocation failed");

    ParseState state;
    XML_SetUserData(parser, &state);
    XML_SetElementHandler(parser, on_start, on_end);
    XML_SetCharacterDataHandler(parser, on_chardata);

    XML_Status status = XML_Parse(parser, bytes.data(),
                                  static_cast<int>(bytes.size()), /*isFinal=*/1);
    std::string err;
    if (status != XML_STATUS_OK) {
        err = XML_ErrorString(XML_GetErrorCode(parser));
    }
    XML_ParserFree(parser);
    if (!err.empty()) throw ParseError("malformed XML: " + err);
    if (!state.have_root) throw ParseError("malformed XML: empty document");
    return std::move(state.root);
}

std::string serialize(const Node& root) {
    std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    serialize_node(root, out, 0);
    return out;
}

std::string escape_text(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (unsigned char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '\r': out += "&#13;"; break;
        default: out.push_back(static_cast<char>(c));
        }
    }
    return out;
}

std::string escape_attr(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (unsigned char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        case '\t': out += "&#9;"; break;
        case '\n': out += "&#10;"; break;
        case '\r': out += "&#13;"; break;
        default: out.push_back(static_cast<char>(c));
        }
    }
    return out;
}

} // namespace wpsgate::xml
