#pragma once
// Tiny recognizer for the DOT subset the exporters emit. Parses the digraph
// into explicit node statements and edges so tests can check counts, labels,
// and attributes without a Graphviz dependency.

#include <cctype>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace dotcheck {

struct Node {
    std::string id;
    std::map<std::string, std::string> attrs;
};

struct Edge {
    std::string from, to;
    std::map<std::string, std::string> attrs;
};

struct Graph {
    std::string name;
    std::vector<Node> nodes;  // explicit node statements only
    std::vector<Edge> edges;

    const Node* node(const std::string& id) const {
        for (const auto& n : nodes) {
            if (n.id == id) return &n;
        }
        return nullptr;
    }
};

namespace detail {

class Parser {
public:
    explicit Parser(const std::string& text) : s_(text) {}

    Graph parse() {
        Graph g;
        expectWord("digraph");
        g.name = ident();
        expect('{');
        while (true) {
            skipWs();
            if (peek() == '}') {
                ++i_;
                break;
            }
            statement(g);
        }
        skipWs();
        if (i_ != s_.size()) fail("trailing content after '}'");
        return g;
    }

private:
    void statement(Graph& g) {
        std::string first = ident();
        skipWs();
        if (peek() == '=') {  // graph attribute like rankdir=LR
            ++i_;
            ident();
            expect(';');
            return;
        }
        if (peek() == '[') {  // node statement (or node/edge defaults)
            auto attrs = attrList();
            expect(';');
            if (first != "node" && first != "edge" && first != "graph") {
                g.nodes.push_back({first, std::move(attrs)});
            }
            return;
        }
        if (peek() == '-') {  // edge: A -> B [attrs];
            ++i_;
            expect('>');
            std::string to = ident();
            std::map<std::string, std::string> attrs;
            skipWs();
            if (peek() == '[') attrs = attrList();
            expect(';');
            g.edges.push_back({first, to, std::move(attrs)});
            return;
        }
        expect(';');  // bare node
        g.nodes.push_back({first, {}});
    }

    std::map<std::string, std::string> attrList() {
        expect('[');
        std::map<std::string, std::string> attrs;
        while (true) {
            std::string key = ident();
            expect('=');
            attrs[key] = ident();
            skipWs();
            if (peek() == ',') {
                ++i_;
                continue;
            }
            expect(']');
            return attrs;
        }
    }

    // identifier or quoted string (unescaped)
    std::string ident() {
        skipWs();
        if (i_ >= s_.size()) fail("unexpected end");
        if (s_[i_] == '"') {
            ++i_;
            std::string out;
            while (i_ < s_.size() && s_[i_] != '"') {
                if (s_[i_] == '\\' && i_ + 1 < s_.size()) ++i_;
                out += s_[i_++];
            }
            if (i_ >= s_.size()) fail("unterminated string");
            ++i_;
            return out;
        }
        size_t start = i_;
        while (i_ < s_.size() &&
               (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) {
            ++i_;
        }
        if (i_ == start) fail(std::string("expected identifier at '") + s_[i_] + "'");
        return s_.substr(start, i_ - start);
    }

    void expectWord(const char* w) {
        if (ident() != w) fail(std::string("expected '") + w + "'");
    }
    void expect(char c) {
        skipWs();
        if (i_ >= s_.size() || s_[i_] != c) {
            fail(std::string("expected '") + c + "'");
        }
        ++i_;
    }
    char peek() { return i_ < s_.size() ? s_[i_] : '\0'; }
    void skipWs() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }
    [[noreturn]] void fail(const std::string& why) {
        throw std::runtime_error("dot parse error near offset " + std::to_string(i_) + ": " +
                                 why);
    }

    const std::string& s_;
    size_t i_ = 0;
};

}  // namespace detail

inline Graph parseDot(const std::string& text) { return detail::Parser(text).parse(); }

}  // namespace dotcheck
