#pragma once
// Graphviz exports. One node per model element, one edge per connection, in
// document order, so node/edge counts line up with the source spec and the
// output is stable across runs.

#include <string>
#include <string_view>

#include "rsim/model.hpp"
#include "rsim/ops.hpp"

namespace rsim {

namespace detail {

inline std::string dotQuote(std::string_view s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    out += '"';
    return out;
}

inline std::string_view portOf(std::string_view ref) {
    size_t d = ref.find('.');
    return d == std::string_view::npos ? std::string_view{} : ref.substr(d + 1);
}

inline std::string_view ownerOf(std::string_view ref) {
    return ref.substr(0, ref.find('.'));
}

}  // namespace detail

// One node per operator, control, and status, labeled "id : kind [width]";
// one edge per net plus one per status source link, labeled with the sink port.
inline std::string datapathToDot(const DatapathSpec& dp) {
    using detail::dotQuote;
    std::string out = "digraph " + dotQuote(dp.name) + " {\n";
    out += "  rankdir=LR;\n";
    for (const auto& o : dp.operators) {
        out += "  " + dotQuote(o.id) + " [shape=box, label=" +
               dotQuote(o.id + " : " + std::string(opKindName(o.kind)) + " [" +
                        std::to_string(o.width) + "]") +
               "];\n";
    }
    for (const auto& c : dp.controls) {
        out += "  " + dotQuote(c.name) + " [shape=house, label=" +
               dotQuote(c.name + " : control [" + std::to_string(c.width) + "]") + "];\n";
    }
    for (const auto& s : dp.statuses) {
        out += "  " + dotQuote(s.name) + " [shape=invhouse, label=" +
               dotQuote(s.name + " : status [" + std::to_string(s.width) + "]") + "];\n";
    }
    for (const auto& n : dp.nets) {
        out += "  " + dotQuote(std::string(detail::ownerOf(n.from))) + " -> " +
               dotQuote(std::string(detail::ownerOf(n.to))) + " [label=" +
               dotQuote(std::string(detail::portOf(n.to))) + "];\n";
    }
    for (const auto& s : dp.statuses) {
        out += "  " + dotQuote(std::string(detail::ownerOf(s.from))) + " -> " +
               dotQuote(s.name) + ";\n";
    }
    out += "}\n";
    return out;
}

// One node per state; the reset state is double-circled, final states carry
// their exit code in the label. One edge per declared transition, labeled
// with the guard text, or "else" for an unconditional transition.
inline std::string fsmToDot(const FsmSpec& fsm) {
    using detail::dotQuote;
    std::string out = "digraph " + dotQuote(fsm.name) + " {\n";
    out += "  rankdir=LR;\n";
    for (const auto& st : fsm.states) {
        std::string label = st.name;
        if (st.isFinal) label += " : exit " + std::to_string(st.exitCode);
        const char* shape = st.name == fsm.resetState ? "doublecircle" : "ellipse";
        out += "  " + dotQuote(st.name) + " [shape=" + shape + ", label=" + dotQuote(label) +
               "];\n";
    }
    for (const auto& st : fsm.states) {
        for (const auto& tr : st.transitions) {
            out += "  " + dotQuote(st.name) + " -> " + dotQuote(tr.next) + " [label=" +
                   dotQuote(tr.cond ? tr.cond->text : "else") + "];\n";
        }
    }
    out += "}\n";
    return out;
}

// One node per configuration (the start one drawn bold) and one box node per
// shared memory, linked to each configuration it is bound into, labeled with
// the local memory id there. One edge per transition, guard text or "else".
inline std::string rtgToDot(const RtgSpec& rtg) {
    using detail::dotQuote;
    std::string out = "digraph " + dotQuote(rtg.name) + " {\n";
    out += "  rankdir=LR;\n";
    for (const auto& c : rtg.configurations) {
        out += "  " + dotQuote(c.id);
        if (c.id == rtg.start) out += " [style=bold]";
        out += ";\n";
    }
    for (const auto& sm : rtg.sharedMemories) {
        out += "  " + dotQuote(sm.id) + " [shape=box, label=" +
               dotQuote(sm.id + " [" + std::to_string(sm.width) + "x" +
                        std::to_string(sm.depth) + "]") +
               "];\n";
    }
    for (const auto& e : rtg.edges) {
        out += "  " + dotQuote(e.from) + " -> " + dotQuote(e.to) + " [label=" +
               dotQuote(e.cond ? e.cond->text : "else") + "];\n";
    }
    for (const auto& sm : rtg.sharedMemories) {
        for (const auto& b : sm.binds) {
            out += "  " + dotQuote(sm.id) + " -> " + dotQuote(b.config) +
                   " [style=dashed, label=" + dotQuote(b.memory) + "];\n";
        }
    }
    out += "}\n";
    return out;
}

}  // namespace rsim
