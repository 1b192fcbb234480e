#pragma once
// XML frontends for the three design dialects, plus canonical emitters and
// position-insensitive equality so emit∘parse round-trips can be checked.
// The schema is strict: unknown elements and unknown attributes are errors.

#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "rsim/diag.hpp"
#include "rsim/expr.hpp"
#include "rsim/model.hpp"
#include "rsim/xml.hpp"

namespace rsim {

inline constexpr uint64_t kMaxMemDepth = 1ull << 20;

namespace detail {

inline bool isIdent(std::string_view s) {
    if (s.empty()) return false;
    char c = s[0];
    if (!((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_')) return false;
    for (char ch : s.substr(1)) {
        if (!((ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z') ||
              (ch >= '0' && ch <= '9') || ch == '_'))
            return false;
    }
    return true;
}

// "op" or "op.port"
inline bool isPortRef(std::string_view s) {
    size_t dot = s.find('.');
    if (dot == std::string_view::npos) return isIdent(s);
    return isIdent(s.substr(0, dot)) && isIdent(s.substr(dot + 1));
}

// Attribute reader that tracks consumption; done() turns leftovers into
// schema errors so typos never pass silently.
class Attrs {
public:
    explicit Attrs(const XmlNode& node) : node_(node), used_(node.attrs.size(), false) {}

    const XmlAttr* find(std::string_view name) {
        for (size_t i = 0; i < node_.attrs.size(); ++i) {
            if (node_.attrs[i].name == name) {
                used_[i] = true;
                return &node_.attrs[i];
            }
        }
        return nullptr;
    }

    SourcePos posOf(std::string_view name) const {
        for (const auto& a : node_.attrs) {
            if (a.name == name) return a.pos;
        }
        return node_.pos;
    }

    std::string req(std::string_view name) {
        const XmlAttr* a = find(name);
        if (!a) {
            throw Error(Err::BadAttribute,
                        "<" + node_.tag + "> missing required attribute '" + std::string(name) +
                            "'",
                        node_.pos);
        }
        return a->value;
    }

    std::optional<std::string> opt(std::string_view name) {
        const XmlAttr* a = find(name);
        if (!a) return std::nullopt;
        return a->value;
    }

    std::string reqIdent(std::string_view name) {
        std::string v = req(name);
        if (!isIdent(v)) {
            throw Error(Err::BadAttribute,
                        "attribute '" + std::string(name) + "' must be an identifier, got '" + v +
                            "'",
                        posOf(name));
        }
        return v;
    }

    std::string reqRef(std::string_view name) {
        std::string v = req(name);
        if (!isPortRef(v)) {
            throw Error(Err::BadAttribute,
                        "attribute '" + std::string(name) + "' must be 'id' or 'id.port', got '" +
                            v + "'",
                        posOf(name));
        }
        return v;
    }

    uint64_t num(std::string_view name, const std::string& text, uint64_t lo, uint64_t hi) {
        auto n = parseNumber(text);
        if (!n || *n < lo || *n > hi) {
            throw Error(Err::BadAttribute,
                        "attribute '" + std::string(name) + "' must be a number in [" +
                            std::to_string(lo) + ", " + std::to_string(hi) + "], got '" + text +
                            "'",
                        posOf(name));
        }
        return *n;
    }

    uint64_t reqNum(std::string_view name, uint64_t lo, uint64_t hi) {
        return num(name, req(name), lo, hi);
    }

    uint64_t optNum(std::string_view name, uint64_t lo, uint64_t hi, uint64_t dflt) {
        auto v = opt(name);
        if (!v) return dflt;
        return num(name, *v, lo, hi);
    }

    void done() {
        for (size_t i = 0; i < used_.size(); ++i) {
            if (!used_[i]) {
                throw Error(Err::BadAttribute,
                            "<" + node_.tag + "> has unknown attribute '" + node_.attrs[i].name +
                                "'",
                            node_.attrs[i].pos);
            }
        }
    }

private:
    const XmlNode& node_;
    std::vector<bool> used_;
};

inline void expectNoChildren(const XmlNode& node) {
    if (!node.children.empty()) {
        throw Error(Err::UnknownElement, "<" + node.tag + "> does not allow child elements",
                    node.children[0].pos);
    }
}

inline void checkFits(uint64_t value, int width, std::string_view what, SourcePos pos) {
    if (!fitsWidth(value, width)) {
        throw Error(Err::BadAttribute,
                    std::string(what) + " does not fit in " + std::to_string(width) + " bits",
                    pos);
    }
}

inline Expr parseGuard(const std::string& text, SourcePos pos) {
    try {
        return parseExpr(text);
    } catch (const Error& e) {
        throw Error(Err::ExprSyntax, "in guard '" + text + "': " + e.brief(), pos);
    }
}

}  // namespace detail

// --- datapath ---------------------------------------------------------------

inline DatapathSpec parseDatapath(const XmlNode& root) {
    if (root.tag != "datapath") {
        throw Error(Err::UnknownElement, "expected <datapath>, got <" + root.tag + ">", root.pos);
    }
    detail::Attrs ra(root);
    DatapathSpec dp;
    dp.name = ra.reqIdent("name");
    ra.done();

    // Operators, controls, and statuses share one signal namespace.
    std::unordered_set<std::string> names;
    auto claim = [&](const std::string& n, SourcePos pos) {
        if (!names.insert(n).second) {
            throw Error(Err::DuplicateId, "duplicate id '" + n + "'", pos);
        }
    };

    for (const XmlNode& child : root.children) {
        if (child.tag == "control") {
            detail::Attrs a(child);
            ControlPort cp;
            cp.pos = child.pos;
            cp.name = a.reqIdent("name");
            cp.width = static_cast<int>(a.reqNum("width", 1, kMaxWidth));
            a.done();
            detail::expectNoChildren(child);
            claim(cp.name, child.pos);
            dp.controls.push_back(std::move(cp));
        } else if (child.tag == "status") {
            detail::Attrs a(child);
            StatusPort sp;
            sp.pos = child.pos;
            sp.name = a.reqIdent("name");
            sp.width = static_cast<int>(a.reqNum("width", 1, kMaxWidth));
            sp.from = a.reqRef("from");
            a.done();
            detail::expectNoChildren(child);
            claim(sp.name, child.pos);
            dp.statuses.push_back(std::move(sp));
        } else if (child.tag == "operator") {
            detail::Attrs a(child);
            OperatorDecl od;
            od.pos = child.pos;
            od.id = a.reqIdent("id");
            std::string kindStr = a.req("kind");
            auto kind = opKindFromName(kindStr);
            if (!kind) {
                throw Error(Err::UnknownOperatorKind, "unknown operator kind '" + kindStr + "'",
                            a.posOf("kind"));
            }
            od.kind = *kind;
            od.width = static_cast<int>(a.reqNum("width", 1, kMaxWidth));
            switch (od.kind) {
            case OpKind::Const:
                od.value = a.optNum("value", 0, ~0ull, 0);
                detail::checkFits(od.value, od.width, "constant value", a.posOf("value"));
                break;
            case OpKind::Reg:
                od.init = a.optNum("init", 0, ~0ull, 0);
                detail::checkFits(od.init, od.width, "register init", a.posOf("init"));
                break;
            case OpKind::Mem: {
                od.depth = a.reqNum("depth", 1, kMaxMemDepth);
                od.latency = static_cast<int>(a.optNum("latency", 0, 1, 1));
                auto f = a.opt("file");
                if (f) {
                    if (f->empty()) {
                        throw Error(Err::BadAttribute, "attribute 'file' must not be empty",
                                    a.posOf("file"));
                    }
                    od.memFile = *f;
                }
                break;
            }
            case OpKind::Mux:
                od.arity = static_cast<int>(a.optNum("arity", 2, 64, 2));
                break;
            default: break;
            }
            a.done();
            detail::expectNoChildren(child);
            claim(od.id, child.pos);
            dp.operators.push_back(std::move(od));
        } else if (child.tag == "net") {
            detail::Attrs a(child);
            NetDecl nd;
            nd.pos = child.pos;
            nd.from = a.reqRef("from");
            nd.to = a.reqRef("to");
            if (nd.to.find('.') == std::string::npos) {
                throw Error(Err::BadAttribute,
                            "net destination must name a port ('id.port'), got '" + nd.to + "'",
                            a.posOf("to"));
            }
            a.done();
            detail::expectNoChildren(child);
            dp.nets.push_back(std::move(nd));
        } else {
            throw Error(Err::UnknownElement, "unexpected <" + child.tag + "> in <datapath>",
                        child.pos);
        }
    }
    return dp;
}

// --- controller FSM -----------------------------------------------------------

inline FsmSpec parseFsm(const XmlNode& root) {
    if (root.tag != "fsm") {
        throw Error(Err::UnknownElement, "expected <fsm>, got <" + root.tag + ">", root.pos);
    }
    detail::Attrs ra(root);
    FsmSpec fsm;
    fsm.name = ra.reqIdent("name");
    fsm.resetState = ra.reqIdent("reset");
    ra.done();

    std::unordered_set<std::string> varNames;  // inputs + outputs
    std::unordered_set<std::string> stateNames;

    for (const XmlNode& child : root.children) {
        if (child.tag == "input") {
            detail::Attrs a(child);
            std::string name = a.reqIdent("name");
            a.done();
            detail::expectNoChildren(child);
            if (!varNames.insert(name).second) {
                throw Error(Err::DuplicateId, "duplicate input/output '" + name + "'", child.pos);
            }
            fsm.inputs.push_back(std::move(name));
        } else if (child.tag == "output") {
            detail::Attrs a(child);
            FsmOutput out;
            out.pos = child.pos;
            out.name = a.reqIdent("name");
            out.width = static_cast<int>(a.reqNum("width", 1, kMaxWidth));
            out.defaultValue = a.optNum("default", 0, ~0ull, 0);
            detail::checkFits(out.defaultValue, out.width, "output default", a.posOf("default"));
            a.done();
            detail::expectNoChildren(child);
            if (!varNames.insert(out.name).second) {
                throw Error(Err::DuplicateId, "duplicate input/output '" + out.name + "'",
                            child.pos);
            }
            fsm.outputs.push_back(std::move(out));
        } else if (child.tag == "state") {
            detail::Attrs a(child);
            FsmState st;
            st.pos = child.pos;
            st.name = a.reqIdent("name");
            if (auto fin = a.opt("final")) {
                st.isFinal = true;
                st.exitCode = static_cast<int>(a.num("final", *fin, 0, 255));
            }
            a.done();
            if (!stateNames.insert(st.name).second) {
                throw Error(Err::DuplicateId, "duplicate state '" + st.name + "'", child.pos);
            }
            for (const XmlNode& item : child.children) {
                if (item.tag == "assign") {
                    detail::Attrs ia(item);
                    FsmAssign as;
                    as.pos = item.pos;
                    as.output = ia.reqIdent("output");
                    as.value = ia.reqNum("value", 0, ~0ull);
                    ia.done();
                    detail::expectNoChildren(item);
                    for (const auto& prev : st.assigns) {
                        if (prev.output == as.output) {
                            throw Error(Err::MultipleDrivers,
                                        "output '" + as.output + "' assigned twice in state '" +
                                            st.name + "'",
                                        item.pos);
                        }
                    }
                    st.assigns.push_back(std::move(as));
                } else if (item.tag == "transition") {
                    detail::Attrs ia(item);
                    FsmTransition tr;
                    tr.pos = item.pos;
                    if (auto cond = ia.opt("cond")) {
                        tr.cond = detail::parseGuard(*cond, ia.posOf("cond"));
                    }
                    tr.next = ia.reqIdent("next");
                    ia.done();
                    detail::expectNoChildren(item);
                    if (st.isFinal) {
                        throw Error(Err::BadAttribute,
                                    "final state '" + st.name + "' cannot have transitions",
                                    item.pos);
                    }
                    st.transitions.push_back(std::move(tr));
                } else {
                    throw Error(Err::UnknownElement, "unexpected <" + item.tag + "> in <state>",
                                item.pos);
                }
            }
            fsm.states.push_back(std::move(st));
        } else {
            throw Error(Err::UnknownElement, "unexpected <" + child.tag + "> in <fsm>", child.pos);
        }
    }

    if (!stateNames.count(fsm.resetState)) {
        throw Error(Err::MissingResetState, "reset state '" + fsm.resetState + "' is not defined",
                    root.pos);
    }
    std::unordered_map<std::string, int> outputWidth;
    for (const auto& o : fsm.outputs) outputWidth[o.name] = o.width;
    std::unordered_set<std::string> inputSet(fsm.inputs.begin(), fsm.inputs.end());
    for (const auto& st : fsm.states) {
        for (const auto& as : st.assigns) {
            auto it = outputWidth.find(as.output);
            if (it == outputWidth.end()) {
                throw Error(Err::DanglingReference, "assign to undeclared output '" + as.output +
                                                        "'",
                            as.pos);
            }
            detail::checkFits(as.value, it->second, "assigned value", as.pos);
        }
        for (const auto& tr : st.transitions) {
            if (!stateNames.count(tr.next)) {
                throw Error(Err::DanglingReference, "transition to undefined state '" + tr.next +
                                                        "'",
                            tr.pos);
            }
            if (tr.cond) {
                forEachVar(*tr.cond, [&](const std::string& v) {
                    if (!inputSet.count(v)) {
                        throw Error(Err::DanglingReference,
                                    "guard references undeclared input '" + v + "'", tr.pos);
                    }
                });
            }
        }
    }
    return fsm;
}

// --- reconfiguration transition graph -------------------------------------------

inline RtgSpec parseRtg(const XmlNode& root) {
    if (root.tag != "rtg") {
        throw Error(Err::UnknownElement, "expected <rtg>, got <" + root.tag + ">", root.pos);
    }
    detail::Attrs ra(root);
    RtgSpec rtg;
    rtg.name = ra.reqIdent("name");
    rtg.start = ra.reqIdent("start");
    ra.done();

    std::unordered_set<std::string> configIds;
    std::unordered_set<std::string> sharedIds;

    for (const XmlNode& child : root.children) {
        if (child.tag == "configuration") {
            detail::Attrs a(child);
            RtgConfiguration cfg;
            cfg.pos = child.pos;
            cfg.id = a.reqIdent("id");
            cfg.datapathFile = a.req("datapath");
            cfg.fsmFile = a.req("fsm");
            a.done();
            detail::expectNoChildren(child);
            if (cfg.datapathFile.empty() || cfg.fsmFile.empty()) {
                throw Error(Err::BadAttribute, "configuration file paths must not be empty",
                            child.pos);
            }
            if (!configIds.insert(cfg.id).second) {
                throw Error(Err::DuplicateId, "duplicate configuration '" + cfg.id + "'",
                            child.pos);
            }
            rtg.configurations.push_back(std::move(cfg));
        } else if (child.tag == "edge") {
            detail::Attrs a(child);
            RtgEdge e;
            e.pos = child.pos;
            e.from = a.reqIdent("from");
            e.to = a.reqIdent("to");
            if (auto cond = a.opt("cond")) {
                e.cond = detail::parseGuard(*cond, a.posOf("cond"));
                forEachVar(*e.cond, [&](const std::string& v) {
                    if (v != "exit") {
                        throw Error(Err::DanglingReference,
                                    "edge guards may only reference 'exit', got '" + v + "'",
                                    a.posOf("cond"));
                    }
                });
            }
            a.done();
            detail::expectNoChildren(child);
            rtg.edges.push_back(std::move(e));
        } else if (child.tag == "shared-memory") {
            detail::Attrs a(child);
            SharedMemoryDecl sm;
            sm.pos = child.pos;
            sm.id = a.reqIdent("id");
            sm.width = static_cast<int>(a.reqNum("width", 1, kMaxWidth));
            sm.depth = a.reqNum("depth", 1, kMaxMemDepth);
            a.done();
            if (!sharedIds.insert(sm.id).second) {
                throw Error(Err::DuplicateId, "duplicate shared memory '" + sm.id + "'",
                            child.pos);
            }
            for (const XmlNode& item : child.children) {
                if (item.tag != "bind") {
                    throw Error(Err::UnknownElement,
                                "unexpected <" + item.tag + "> in <shared-memory>", item.pos);
                }
                detail::Attrs ia(item);
                RtgBinding b;
                b.pos = item.pos;
                b.config = ia.reqIdent("config");
                b.memory = ia.reqIdent("memory");
                ia.done();
                detail::expectNoChildren(item);
                for (const auto& prev : sm.binds) {
                    if (prev.config == b.config) {
                        throw Error(Err::DuplicateId,
                                    "shared memory '" + sm.id + "' bound twice in configuration '" +
                                        b.config + "'",
                                    item.pos);
                    }
                }
                sm.binds.push_back(std::move(b));
            }
            rtg.sharedMemories.push_back(std::move(sm));
        } else {
            throw Error(Err::UnknownElement, "unexpected <" + child.tag + "> in <rtg>", child.pos);
        }
    }

    if (!configIds.count(rtg.start)) {
        throw Error(Err::MissingStartNode, "start configuration '" + rtg.start + "' is not defined",
                    root.pos);
    }
    for (const auto& e : rtg.edges) {
        if (!configIds.count(e.from)) {
            throw Error(Err::UnknownConfiguration, "edge from unknown configuration '" + e.from +
                                                       "'",
                        e.pos);
        }
        if (!configIds.count(e.to)) {
            throw Error(Err::UnknownConfiguration, "edge to unknown configuration '" + e.to + "'",
                        e.pos);
        }
    }
    // A datapath memory can host at most one shared memory.
    std::unordered_set<std::string> hosts;
    for (const auto& sm : rtg.sharedMemories) {
        for (const auto& b : sm.binds) {
            if (!configIds.count(b.config)) {
                throw Error(Err::UnknownConfiguration,
                            "bind references unknown configuration '" + b.config + "'", b.pos);
            }
            if (!hosts.insert(b.config + "." + b.memory).second) {
                throw Error(Err::MultipleDrivers,
                            "memory '" + b.memory + "' in configuration '" + b.config +
                                "' is bound to more than one shared memory",
                            b.pos);
            }
        }
    }
    return rtg;
}

// --- file loaders ---------------------------------------------------------------

namespace detail {
template <class Fn>
auto loadSpecFile(const std::string& path, Fn&& parse) {
    try {
        XmlNode root = parseXml(readTextFile(path));
        return parse(root);
    } catch (Error& e) {
        e.setFile(path);
        throw;
    }
}
}  // namespace detail

inline DatapathSpec loadDatapathFile(const std::string& path) {
    return detail::loadSpecFile(path, [](const XmlNode& n) { return parseDatapath(n); });
}

inline FsmSpec loadFsmFile(const std::string& path) {
    return detail::loadSpecFile(path, [](const XmlNode& n) { return parseFsm(n); });
}

inline RtgSpec loadRtgFile(const std::string& path) {
    return detail::loadSpecFile(path, [](const XmlNode& n) { return parseRtg(n); });
}

// --- canonical emitters -----------------------------------------------------------

namespace detail {
inline void attr(std::string& out, std::string_view name, std::string_view value) {
    out += ' ';
    out += name;
    out += "=\"";
    out += xmlEscape(value);
    out += '"';
}
inline void attr(std::string& out, std::string_view name, uint64_t value) {
    attr(out, name, std::to_string(value));
}
}  // namespace detail

inline std::string emitDatapathXml(const DatapathSpec& dp) {
    std::string out = "<datapath";
    detail::attr(out, "name", dp.name);
    out += ">\n";
    for (const auto& c : dp.controls) {
        out += "  <control";
        detail::attr(out, "name", c.name);
        detail::attr(out, "width", static_cast<uint64_t>(c.width));
        out += "/>\n";
    }
    for (const auto& s : dp.statuses) {
        out += "  <status";
        detail::attr(out, "name", s.name);
        detail::attr(out, "width", static_cast<uint64_t>(s.width));
        detail::attr(out, "from", s.from);
        out += "/>\n";
    }
    for (const auto& o : dp.operators) {
        out += "  <operator";
        detail::attr(out, "id", o.id);
        detail::attr(out, "kind", opKindName(o.kind));
        detail::attr(out, "width", static_cast<uint64_t>(o.width));
        switch (o.kind) {
        case OpKind::Const:
            if (o.value != 0) detail::attr(out, "value", o.value);
            break;
        case OpKind::Reg:
            if (o.init != 0) detail::attr(out, "init", o.init);
            break;
        case OpKind::Mem:
            detail::attr(out, "depth", o.depth);
            if (o.latency != 1) detail::attr(out, "latency", static_cast<uint64_t>(o.latency));
            if (o.memFile) detail::attr(out, "file", *o.memFile);
            break;
        case OpKind::Mux:
            if (o.arity != 2) detail::attr(out, "arity", static_cast<uint64_t>(o.arity));
            break;
        default: break;
        }
        out += "/>\n";
    }
    for (const auto& n : dp.nets) {
        out += "  <net";
        detail::attr(out, "from", n.from);
        detail::attr(out, "to", n.to);
        out += "/>\n";
    }
    out += "</datapath>\n";
    return out;
}

inline std::string emitFsmXml(const FsmSpec& fsm) {
    std::string out = "<fsm";
    detail::attr(out, "name", fsm.name);
    detail::attr(out, "reset", fsm.resetState);
    out += ">\n";
    for (const auto& in : fsm.inputs) {
        out += "  <input";
        detail::attr(out, "name", in);
        out += "/>\n";
    }
    for (const auto& o : fsm.outputs) {
        out += "  <output";
        detail::attr(out, "name", o.name);
        detail::attr(out, "width", static_cast<uint64_t>(o.width));
        if (o.defaultValue != 0) detail::attr(out, "default", o.defaultValue);
        out += "/>\n";
    }
    for (const auto& st : fsm.states) {
        out += "  <state";
        detail::attr(out, "name", st.name);
        if (st.isFinal) detail::attr(out, "final", static_cast<uint64_t>(st.exitCode));
        if (st.assigns.empty() && st.transitions.empty()) {
            out += "/>\n";
            continue;
        }
        out += ">\n";
        for (const auto& as : st.assigns) {
            out += "    <assign";
            detail::attr(out, "output", as.output);
            detail::attr(out, "value", as.value);
            out += "/>\n";
        }
        for (const auto& tr : st.transitions) {
            out += "    <transition";
            if (tr.cond) detail::attr(out, "cond", tr.cond->text);
            detail::attr(out, "next", tr.next);
            out += "/>\n";
        }
        out += "  </state>\n";
    }
    out += "</fsm>\n";
    return out;
}

inline std::string emitRtgXml(const RtgSpec& rtg) {
    std::string out = "<rtg";
    detail::attr(out, "name", rtg.name);
    detail::attr(out, "start", rtg.start);
    out += ">\n";
    for (const auto& c : rtg.configurations) {
        out += "  <configuration";
        detail::attr(out, "id", c.id);
        detail::attr(out, "datapath", c.datapathFile);
        detail::attr(out, "fsm", c.fsmFile);
        out += "/>\n";
    }
    for (const auto& e : rtg.edges) {
        out += "  <edge";
        detail::attr(out, "from", e.from);
        detail::attr(out, "to", e.to);
        if (e.cond) detail::attr(out, "cond", e.cond->text);
        out += "/>\n";
    }
    for (const auto& sm : rtg.sharedMemories) {
        out += "  <shared-memory";
        detail::attr(out, "id", sm.id);
        detail::attr(out, "width", static_cast<uint64_t>(sm.width));
        detail::attr(out, "depth", sm.depth);
        if (sm.binds.empty()) {
            out += "/>\n";
            continue;
        }
        out += ">\n";
        for (const auto& b : sm.binds) {
            out += "    <bind";
            detail::attr(out, "config", b.config);
            detail::attr(out, "memory", b.memory);
            out += "/>\n";
        }
        out += "  </shared-memory>\n";
    }
    out += "</rtg>\n";
    return out;
}

// --- position-insensitive equality ----------------------------------------------

inline bool sameSpec(const DatapathSpec& a, const DatapathSpec& b) {
    if (a.name != b.name || a.controls.size() != b.controls.size() ||
        a.statuses.size() != b.statuses.size() || a.operators.size() != b.operators.size() ||
        a.nets.size() != b.nets.size())
        return false;
    for (size_t i = 0; i < a.controls.size(); ++i) {
        if (a.controls[i].name != b.controls[i].name || a.controls[i].width != b.controls[i].width)
            return false;
    }
    for (size_t i = 0; i < a.statuses.size(); ++i) {
        const auto& x = a.statuses[i];
        const auto& y = b.statuses[i];
        if (x.name != y.name || x.width != y.width || x.from != y.from) return false;
    }
    for (size_t i = 0; i < a.operators.size(); ++i) {
        const auto& x = a.operators[i];
        const auto& y = b.operators[i];
        if (x.id != y.id || x.kind != y.kind || x.width != y.width || x.value != y.value ||
            x.init != y.init || x.depth != y.depth || x.latency != y.latency ||
            x.arity != y.arity || x.memFile != y.memFile)
            return false;
    }
    for (size_t i = 0; i < a.nets.size(); ++i) {
        if (a.nets[i].from != b.nets[i].from || a.nets[i].to != b.nets[i].to) return false;
    }
    return true;
}

inline bool sameSpec(const FsmSpec& a, const FsmSpec& b) {
    if (a.name != b.name || a.resetState != b.resetState || a.inputs != b.inputs ||
        a.outputs.size() != b.outputs.size() || a.states.size() != b.states.size())
        return false;
    for (size_t i = 0; i < a.outputs.size(); ++i) {
        const auto& x = a.outputs[i];
        const auto& y = b.outputs[i];
        if (x.name != y.name || x.width != y.width || x.defaultValue != y.defaultValue)
            return false;
    }
    for (size_t i = 0; i < a.states.size(); ++i) {
        const auto& x = a.states[i];
        const auto& y = b.states[i];
        if (x.name != y.name || x.isFinal != y.isFinal || x.exitCode != y.exitCode ||
            x.assigns.size() != y.assigns.size() || x.transitions.size() != y.transitions.size())
            return false;
        for (size_t j = 0; j < x.assigns.size(); ++j) {
            if (x.assigns[j].output != y.assigns[j].output ||
                x.assigns[j].value != y.assigns[j].value)
                return false;
        }
        for (size_t j = 0; j < x.transitions.size(); ++j) {
            const auto& tx = x.transitions[j];
            const auto& ty = y.transitions[j];
            if (tx.next != ty.next || tx.cond.has_value() != ty.cond.has_value()) return false;
            if (tx.cond && !(*tx.cond == *ty.cond)) return false;
        }
    }
    return true;
}

inline bool sameSpec(const RtgSpec& a, const RtgSpec& b) {
    if (a.name != b.name || a.start != b.start ||
        a.configurations.size() != b.configurations.size() || a.edges.size() != b.edges.size() ||
        a.sharedMemories.size() != b.sharedMemories.size())
        return false;
    for (size_t i = 0; i < a.configurations.size(); ++i) {
        const auto& x = a.configurations[i];
        const auto& y = b.configurations[i];
        if (x.id != y.id || x.datapathFile != y.datapathFile || x.fsmFile != y.fsmFile)
            return false;
    }
    for (size_t i = 0; i < a.edges.size(); ++i) {
        const auto& x = a.edges[i];
        const auto& y = b.edges[i];
        if (x.from != y.from || x.to != y.to || x.cond.has_value() != y.cond.has_value())
            return false;
        if (x.cond && !(*x.cond == *y.cond)) return false;
    }
    for (size_t i = 0; i < a.sharedMemories.size(); ++i) {
        const auto& x = a.sharedMemories[i];
        const auto& y = b.sharedMemories[i];
        if (x.id != y.id || x.width != y.width || x.depth != y.depth ||
            x.binds.size() != y.binds.size())
            return false;
        for (size_t j = 0; j < x.binds.size(); ++j) {
            if (x.binds[j].config != y.binds[j].config || x.binds[j].memory != y.binds[j].memory)
                return false;
        }
    }
    return true;
}

}  // namespace rsim
