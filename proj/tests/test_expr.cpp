#include "catch_amalgamated.hpp"

#include <map>
#include <string>

#include "rsim/expr.hpp"

using namespace rsim;

namespace {
uint64_t eval(const std::string& text, std::map<std::string, uint64_t> vars = {}) {
    Expr e = parseExpr(text);
    return evalExpr(e, [&](const std::string& v) { return vars.at(v); });
}
}  // namespace

TEST_CASE("literals and identifiers") {
    CHECK(eval("1") == 1);
    CHECK(eval("0x10") == 1);  // truthy, normalized to 1
    CHECK(eval("0") == 0);
    CHECK(eval("exit", {{"exit", 7}}) == 1);
    CHECK(eval("cnt.q == 10", {{"cnt.q", 10}}) == 1);
}

TEST_CASE("comparisons are unsigned") {
    CHECK(eval("2 > 1") == 1);
    CHECK(eval("1 >= 1") == 1);
    CHECK(eval("1 < 2") == 1);
    CHECK(eval("2 <= 1") == 0);
    CHECK(eval("3 == 3") == 1);
    CHECK(eval("3 != 3") == 0);
    CHECK(eval("x < 2", {{"x", 0xffffffffffffffffull}}) == 0);
}

TEST_CASE("precedence: ! binds tighter than comparison, && tighter than ||") {
    CHECK(eval("!0 == 1") == 1);         // (!0) == 1
    CHECK(eval("1 || 0 && 0") == 1);     // 1 || (0 && 0)
    CHECK(eval("(1 || 0) && 0") == 0);
    CHECK(eval("!(1 == 2)") == 1);
    CHECK(eval("a == 1 && b == 2", {{"a", 1}, {"b", 2}}) == 1);
    CHECK(eval("a == 1 && b == 2", {{"a", 1}, {"b", 3}}) == 0);
}

TEST_CASE("truthiness on non-zero") {
    CHECK(eval("5 && 9") == 1);
    CHECK(eval("5 || 0") == 1);
    CHECK(eval("!5") == 0);
}

TEST_CASE("structural equality ignores text") {
    CHECK(parseExpr("a == 1") == parseExpr("a  ==  1"));
    CHECK_FALSE(parseExpr("a == 1") == parseExpr("a == 2"));
    CHECK_FALSE(parseExpr("a == 1") == parseExpr("b == 1"));
    CHECK(parseExpr("!(x < 2) && y") == parseExpr("!(x < 2) && y"));
}

TEST_CASE("forEachVar visits every variable") {
    std::vector<std::string> seen;
    forEachVar(parseExpr("a == 1 && (b.q < c || !d)"),
               [&](const std::string& v) { seen.push_back(v); });
    REQUIRE(seen.size() == 4);
    CHECK(seen[0] == "a");
    CHECK(seen[1] == "b.q");
    CHECK(seen[2] == "c");
    CHECK(seen[3] == "d");
}

TEST_CASE("syntax errors carry a position") {
    CHECK_THROWS_AS(parseExpr(""), Error);
    CHECK_THROWS_AS(parseExpr("1 +"), Error);
    CHECK_THROWS_AS(parseExpr("(1"), Error);
    CHECK_THROWS_AS(parseExpr("a =="), Error);
    CHECK_THROWS_AS(parseExpr("== 1"), Error);
    try {
        parseExpr("a && ");
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.code() == Err::ExprSyntax);
        CHECK(e.pos().line == 1);
        CHECK(e.pos().col >= 5);
    }
}

TEST_CASE("comparisons chain left-associatively") {
    CHECK(eval("1 == 2 == 0") == 1);  // (1 == 2) == 0
    CHECK(eval("3 > 2 > 0") == 1);    // (3 > 2) -> 1, 1 > 0
}

TEST_CASE("deep nesting is capped") {
    std::string deep;
    for (int i = 0; i < 200; ++i) deep += "(";
    deep += "1";
    for (int i = 0; i < 200; ++i) deep += ")";
    CHECK_THROWS_AS(parseExpr(deep), Error);
}
