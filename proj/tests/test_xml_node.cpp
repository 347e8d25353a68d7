#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support/gen.hpp"
#include "wpsgate/xml/node.hpp"

using namespace wpsgate;

TEST_CASE("parse and serialize agree") {
    xml::Node root;
    root.name = "Doc";
    root.set_attr("a", "1 & 2 <3>");
    root.add("Leaf").set_text("text & <markup> stays text");
    root.add("Empty");
    auto& nested = root.add("Outer");
    nested.add("Inner").set_text("x");

    xml::Node back = xml::parse(xml::serialize(root));
    CHECK(back == root);
}

TEST_CASE("namespace prefixes are stripped, xmlns dropped") {
    xml::Node root = xml::parse(
        "<ns1:Root xmlns:ns1=\"urn:a\" xmlns=\"urn:b\" ns1:attr=\"v\"><ns1:Child/></ns1:Root>");
    CHECK(root.name == "Root");
    REQUIRE(root.attrs.size() == 1);
    CHECK(root.attrs[0].first == "attr");
    REQUIRE(root.children.size() == 1);
    CHECK(root.children[0].name == "Child");
}

TEST_CASE("garbage raises ParseError") {
    CHECK_THROWS_AS(xml::parse(""), xml::ParseError);
    CHECK_THROWS_AS(xml::parse("plain text"), xml::ParseError);
    CHECK_THROWS_AS(xml::parse("<unclosed"), xml::ParseError);
    CHECK_THROWS_AS(xml::parse("<a><b></a></b>"), xml::ParseError);
}

TEST_CASE("control-character escapes survive attribute normalization") {
    xml::Node root;
    root.name = "R";
    root.set_attr("a", "line\nbreak\tand\rcr");
    root.set_text("text with \r carriage return");
    xml::Node back = xml::parse(xml::serialize(root));
    CHECK(back == root);
}

TEST_CASE("property: trees with hostile text round-trip") {
    gen::Rng rng(3);
    for (int i = 0; i < 800; ++i) {
        xml::Node root;
        root.name = "N" + rng.identifier();
        if (rng.chance(0.7)) root.set_attr(rng.identifier(), rng.text());
        int kids = rng.range(0, 3);
        for (int k = 0; k < kids; ++k) {
            auto& child = root.add("C" + rng.identifier());
            if (rng.chance(0.5)) child.set_text(rng.text());
            if (rng.chance(0.3)) child.set_attr(rng.identifier(), rng.text());
        }
        if (kids == 0 && rng.chance(0.5)) root.set_text(rng.text());
        CHECK(xml::parse(xml::serialize(root)) == root);
    }
}
