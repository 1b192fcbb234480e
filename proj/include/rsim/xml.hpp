#pragma once
// Minimal XML reader for the design dialects: elements, attributes, comments,
// an optional prolog, and the five predefined entities plus numeric character
// references. Element text content other than whitespace is rejected — the
// dialects keep all data in attributes. Every failure is a diagnostic with
// line/column; no input may crash the parser.

#include <string>
#include <string_view>
#include <vector>

#include "rsim/diag.hpp"

namespace rsim {

struct XmlAttr {
    std::string name;
    std::string value;
    SourcePos pos;
};

struct XmlNode {
    std::string tag;
    SourcePos pos;
    std::vector<XmlAttr> attrs;
    std::vector<XmlNode> children;

    const XmlAttr* findAttr(std::string_view name) const {
        for (const auto& a : attrs) {
            if (a.name == name) return &a;
        }
        return nullptr;
    }
};

namespace detail {

class XmlParser {
public:
    explicit XmlParser(std::string_view text) : text_(text) {}

    static constexpr int kMaxDepth = 64;

    XmlNode parseDocument() {
        // UTF-8 BOM
        if (text_.size() >= 3 && text_.substr(0, 3) == "\xef\xbb\xbf") advance(3);
        skipMisc(true);
        if (eof() || peek() != '<') fail("expected root element");
        XmlNode root = parseElement(0);
        skipMisc(false);
        if (!eof()) fail("content after root element");
        return root;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const {
        throw Error(Err::XmlSyntax, msg, SourcePos{line_, col_});
    }
    [[noreturn]] void failAt(SourcePos pos, const std::string& msg) const {
        throw Error(Err::XmlSyntax, msg, pos);
    }

    bool eof() const { return pos_ >= text_.size(); }
    char peek() const { return text_[pos_]; }
    bool startsWith(std::string_view s) const {
        return text_.size() - pos_ >= s.size() && text_.substr(pos_, s.size()) == s;
    }

    void advance(size_t n = 1) {
        for (size_t i = 0; i < n && pos_ < text_.size(); ++i) {
            if (text_[pos_] == '\n') {
                ++line_;
                col_ = 1;
            } else {
                ++col_;
            }
            ++pos_;
        }
    }

    static bool isSpace(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; }
    static bool nameStart(char c) {
        return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' || c == ':';
    }
    static bool nameChar(char c) {
        return nameStart(c) || (c >= '0' && c <= '9') || c == '-' || c == '.';
    }

    void skipSpace() {
        while (!eof() && isSpace(peek())) advance();
    }

    // Whitespace, comments, and processing instructions between markup.
    // Outside the root only these are allowed; `allowText` is always false
    // here but inside elements stray text is reported by the caller.
    void skipMisc(bool prolog) {
        while (true) {
            skipSpace();
            if (startsWith("<!--")) {
                skipComment();
            } else if (prolog && startsWith("<?")) {
                skipPi();
            } else if (startsWith("<!")) {
                fail("unsupported markup declaration");
            } else {
                return;
            }
        }
    }

    void skipComment() {
        SourcePos start{line_, col_};
        advance(4);
        while (!startsWith("-->")) {
            if (eof()) failAt(start, "unterminated comment");
            advance();
        }
        advance(3);
    }

    void skipPi() {
        SourcePos start{line_, col_};
        advance(2);
        while (!startsWith("?>")) {
            if (eof()) failAt(start, "unterminated processing instruction");
            advance();
        }
        advance(2);
    }

    std::string parseName() {
        if (eof() || !nameStart(peek())) fail("expected name");
        size_t start = pos_;
        while (!eof() && nameChar(peek())) advance();
        return std::string(text_.substr(start, pos_ - start));
    }

    uint64_t parseCharRef() {
        // cursor sits just past "&#"
        uint64_t v = 0;
        bool any = false;
        if (!eof() && (peek() == 'x' || peek() == 'X')) {
            advance();
            while (!eof() && peek() != ';') {
                char c = peek();
                int d;
                if (c >= '0' && c <= '9') d = c - '0';
                else if (c >= 'a' && c <= 'f') d = c - 'a' + 10;
                else if (c >= 'A' && c <= 'F') d = c - 'A' + 10;
                else fail("malformed character reference");
                v = v * 16 + static_cast<uint64_t>(d);
                if (v > 0x10FFFF) fail("character reference out of range");
                any = true;
                advance();
            }
        } else {
            while (!eof() && peek() != ';') {
                char c = peek();
                if (c < '0' || c > '9') fail("malformed character reference");
                v = v * 10 + static_cast<uint64_t>(c - '0');
                if (v > 0x10FFFF) fail("character reference out of range");
                any = true;
                advance();
            }
        }
        if (eof() || !any) fail("malformed character reference");
        advance();  // ';'
        return v;
    }

    void appendUtf8(std::string& out, uint64_t cp) {
        if (cp < 0x80) {
            out += static_cast<char>(cp);
        } else if (cp < 0x800) {
            out += static_cast<char>(0xC0 | (cp >> 6));
            out += static_cast<char>(0x80 | (cp & 0x3F));
        } else if (cp < 0x10000) {
            out += static_cast<char>(0xE0 | (cp >> 12));
            out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
            out += static_cast<char>(0x80 | (cp & 0x3F));
        } else {
            out += static_cast<char>(0xF0 | (cp >> 18));
            out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
            out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
            out += static_cast<char>(0x80 | (cp & 0x3F));
        }
    }

    std::string parseAttrValue() {
        if (eof() || (peek() != '"' && peek() != '\'')) fail("expected quoted attribute value");
        char quote = peek();
        advance();
        std::string out;
        while (true) {
            if (eof()) fail("unterminated attribute value");
            char c = peek();
            if (c == quote) {
                advance();
                return out;
            }
            if (c == '<') fail("'<' not allowed in attribute value");
            if (c == '&') {
                advance();
                if (startsWith("#")) {
                    advance();
                    appendUtf8(out, parseCharRef());
                } else if (startsWith("amp;")) {
                    advance(4);
                    out += '&';
                } else if (startsWith("lt;")) {
                    advance(3);
                    out += '<';
                } else if (startsWith("gt;")) {
                    advance(3);
                    out += '>';
                } else if (startsWith("quot;")) {
                    advance(5);
                    out += '"';
                } else if (startsWith("apos;")) {
                    advance(5);
                    out += '\'';
                } else {
                    fail("unknown entity reference");
                }
                continue;
            }
            out += c;
            advance();
        }
    }

    XmlNode parseElement(int depth) {
        if (depth > kMaxDepth) fail("elements nested too deeply");
        XmlNode node;
        node.pos = SourcePos{line_, col_};
        advance();  // '<'
        node.tag = parseName();
        while (true) {
            bool sawSpace = !eof() && isSpace(peek());
            skipSpace();
            if (eof()) fail("unterminated element");
            char c = peek();
            if (c == '>' || c == '/') break;
            if (!sawSpace) fail("expected whitespace before attribute");
            XmlAttr attr;
            attr.pos = SourcePos{line_, col_};
            attr.name = parseName();
            skipSpace();
            if (eof() || peek() != '=') fail("expected '=' after attribute name");
            advance();
            skipSpace();
            attr.value = parseAttrValue();
            for (const auto& existing : node.attrs) {
                if (existing.name == attr.name) {
                    failAt(attr.pos, "duplicate attribute '" + attr.name + "'");
                }
            }
            node.attrs.push_back(std::move(attr));
        }
        if (peek() == '/') {
            advance();
            if (eof() || peek() != '>') fail("expected '>' after '/'");
            advance();
            return node;
        }
        advance();  // '>'
        // content
        while (true) {
            if (eof()) failAt(node.pos, "unterminated element '" + node.tag + "'");
            char c = peek();
            if (c == '<') {
                if (startsWith("<!--")) {
                    skipComment();
                    continue;
                }
                if (startsWith("</")) {
                    advance(2);
                    SourcePos closePos{line_, col_};
                    std::string closeName = parseName();
                    if (closeName != node.tag) {
                        failAt(closePos, "mismatched close tag '" + closeName + "' for '" +
                                             node.tag + "'");
                    }
                    skipSpace();
                    if (eof() || peek() != '>') fail("expected '>'");
                    advance();
                    return node;
                }
                if (startsWith("<!") || startsWith("<?")) fail("unsupported markup");
                node.children.push_back(parseElement(depth + 1));
            } else if (isSpace(c)) {
                advance();
            } else {
                fail("text content not allowed");
            }
        }
    }

    std::string_view text_;
    size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

}  // namespace detail

inline XmlNode parseXml(std::string_view text) {
    detail::XmlParser p(text);
    return p.parseDocument();
}

// Escapes text for use in an attribute value.
inline std::string xmlEscape(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c; break;
        }
    }
    return out;
}

}  // namespace rsim
