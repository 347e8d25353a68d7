#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support/gen.hpp"
#include "wpsgate/util.hpp"

#include <set>

using namespace wpsgate;

TEST_CASE("percent encoding round-trips and covers the reserved set") {
    CHECK(util::pct_encode("a b&c=d") == "a%20b%26c%3Dd");
    CHECK(util::pct_decode("a%20b%26c%3Dd") == "a b&c=d");
    CHECK(util::pct_decode("%zz") == "%zz"); // invalid escapes pass through

    gen::Rng rng(1);
    for (int i = 0; i < 500; ++i) {
        std::string s = gen::random_bytes(rng, 48);
        std::string enc = util::pct_encode(s);
        for (unsigned char c : enc) {
            bool ok = std::isalnum(c) || c == '-' || c == '.' || c == '_' || c == '~' || c == '%';
            CHECK(ok);
        }
        CHECK(util::pct_decode(enc) == s);
    }
}

TEST_CASE("format_double always shows a decimal marker and parses back") {
    CHECK(util::format_double(1.0) == "1.0");
    CHECK(util::format_double(6.0) == "6.0");
    CHECK(util::format_double(0.5) == "0.5");
    CHECK(util::format_double(-2.0) == "-2.0");

    gen::Rng rng(2);
    for (int i = 0; i < 2000; ++i) {
        double v = rng.finite_double();
        auto back = util::parse_double(util::format_double(v));
        REQUIRE(back.has_value());
        CHECK(*back == v);
    }
}

TEST_CASE("strict numeric parsing consumes the whole token") {
    CHECK_FALSE(util::parse_double("1.5x").has_value());
    CHECK_FALSE(util::parse_double("").has_value());
    CHECK(util::parse_integer("-42") == -42);
    CHECK_FALSE(util::parse_integer("4.2").has_value());
}

TEST_CASE("tokens are URL-safe and collision-free in bulk") {
    std::set<std::string> seen;
    for (int i = 0; i < 5000; ++i) {
        std::string token = util::random_token();
        CHECK(token.size() == 22);
        for (char c : token) {
            bool ok = std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_';
            CHECK(ok);
        }
        CHECK(seen.insert(token).second);
    }
}

TEST_CASE("URL splitting") {
    auto s = util::split_url("http://h:1234/a/b?q=1");
    REQUIRE(s.has_value());
    CHECK(s->root == "http://h:1234");
    CHECK(s->path == "/a/b?q=1");
    CHECK(util::split_url("http://h")->path == "/");
    CHECK_FALSE(util::split_url("ftp://h/").has_value());
    CHECK_FALSE(util::split_url("/relative").has_value());
}
