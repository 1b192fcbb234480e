#pragma once
// Elaboration: resolves every name to a signal index, checks widths, binds
// the controller FSM to the datapath by port-name sets, rejects
// combinational cycles (naming the members), and levelizes the
// combinational operators into the evaluation schedule the simulator runs.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "rsim/diag.hpp"
#include "rsim/model.hpp"
#include "rsim/ops.hpp"
#include "rsim/value.hpp"

namespace rsim {

struct PortInfo {
    std::string name;
    int width = 1;
    bool required = true;
};

inline int memAddrWidthFor(uint64_t depth) {
    int w = ceilLog2(depth);
    return w < 1 ? 1 : w;
}

inline int muxSelWidthFor(int arity) {
    int w = ceilLog2(static_cast<uint64_t>(arity));
    return w < 1 ? 1 : w;
}

inline std::vector<PortInfo> inputPortsOf(const OperatorDecl& d) {
    const int w = d.width;
    if (isBinaryArith(d.kind) || isCompare(d.kind)) {
        return {{"a", w, true}, {"b", w, true}};
    }
    if (isUnaryArith(d.kind)) return {{"a", w, true}};
    switch (d.kind) {
    case OpKind::Const:
    case OpKind::In: return {};
    case OpKind::Out: return {{"in", w, true}};
    case OpKind::Mux: {
        std::vector<PortInfo> ports;
        ports.push_back({"sel", muxSelWidthFor(d.arity), true});
        for (int i = 0; i < d.arity; ++i) {
            ports.push_back({"in" + std::to_string(i), w, true});
        }
        return ports;
    }
    case OpKind::Reg: return {{"d", w, true}, {"en", 1, false}};
    case OpKind::Mem:
        return {{"addr", memAddrWidthFor(d.depth), true}, {"din", w, false}, {"we", 1, false}};
    default: break;
    }
    return {};
}

inline const char* outputPortOf(OpKind k) {
    if (k == OpKind::Reg) return "q";
    if (k == OpKind::Mem) return "dout";
    return "out";
}

inline int outputWidthOf(const OperatorDecl& d) { return isCompare(d.kind) ? 1 : d.width; }

// A sequential source starts each cycle with a value held from the previous
// edge; everything else is recomputed during settle.
inline bool isSequentialOutput(const OperatorDecl& d) {
    return d.kind == OpKind::Reg || (d.kind == OpKind::Mem && d.latency == 1);
}

struct Signal {
    std::string name;  // "owner.port"
    int width = 1;
};

struct ElabOp {
    OperatorDecl decl;
    std::vector<PortInfo> ports;  // input ports
    std::vector<int> inputs;      // signal index per port; -1 = unbound optional
    int output = -1;              // signal index
    int level = 0;                // 0 for sequential/external sources

    int input(std::string_view port) const {
        for (size_t i = 0; i < ports.size(); ++i) {
            if (ports[i].name == port) return inputs[i];
        }
        return -1;
    }
};

struct ElabControl {
    std::string name;
    int width = 1;
    int signal = -1;
};

struct ElabStatus {
    std::string name;
    int width = 1;
    int signal = -1;  // aliases the driving operator's output
};

struct ElabState {
    std::string name;
    bool isFinal = false;
    int exitCode = 0;
    std::vector<uint64_t> controlImage;  // one value per control, controls order
    struct Transition {
        std::optional<Expr> cond;
        int next = 0;
    };
    std::vector<Transition> transitions;
};

struct Model {
    DatapathSpec dp;  // originals kept for emit/export
    FsmSpec fsm;

    std::vector<Signal> signals;
    std::unordered_map<std::string, int> signalIndex;  // "owner.port" and bare "owner"
    std::vector<ElabOp> ops;      // parallel to dp.operators
    std::vector<int> schedule;    // combinational op indices, level order
    int maxLevel = 0;

    std::vector<ElabControl> controls;
    std::vector<ElabStatus> statuses;
    std::vector<int> regOps;  // indices into ops, declaration order
    std::vector<int> memOps;
    std::vector<int> inOps;
    std::vector<int> outOps;

    std::vector<ElabState> states;
    int resetState = 0;

    int findSignal(const std::string& name) const {
        auto it = signalIndex.find(name);
        return it == signalIndex.end() ? -1 : it->second;
    }
};

namespace detail {

// Finds one combinational cycle in the leftover (unlevelized) subgraph and
// names its operators. `pred` yields, for a leftover op, one leftover
// predecessor — every leftover node has one, so walking predecessors must
// revisit a node, and the segment between the two visits is a cycle.
inline std::vector<int> traceCycle(int start, const std::vector<int>& anyPred) {
    std::unordered_map<int, int> seenAt;
    std::vector<int> path;
    int cur = start;
    while (!seenAt.count(cur)) {
        seenAt[cur] = static_cast<int>(path.size());
        path.push_back(cur);
        cur = anyPred[static_cast<size_t>(cur)];
    }
    std::vector<int> cycle(path.begin() + seenAt[cur], path.end());
    std::reverse(cycle.begin(), cycle.end());  // predecessor walk ran backwards
    return cycle;
}

}  // namespace detail

inline Model elaborate(const DatapathSpec& dp, const FsmSpec& fsm) {
    Model m;
    m.dp = dp;
    m.fsm = fsm;

    // -- signals: one per operator output, one per control --
    auto addSignal = [&](const std::string& owner, const char* port, int width) {
        int idx = static_cast<int>(m.signals.size());
        m.signals.push_back({owner + "." + port, width});
        m.signalIndex[m.signals.back().name] = idx;
        m.signalIndex[owner] = idx;
        return idx;
    };

    std::unordered_map<std::string, int> opIndex;
    for (const auto& decl : dp.operators) {
        ElabOp op;
        op.decl = decl;
        op.ports = inputPortsOf(decl);
        op.inputs.assign(op.ports.size(), -1);
        op.output = addSignal(decl.id, outputPortOf(decl.kind), outputWidthOf(decl));
        opIndex[decl.id] = static_cast<int>(m.ops.size());
        m.ops.push_back(std::move(op));
    }
    for (const auto& c : dp.controls) {
        int sig = addSignal(c.name, "out", c.width);
        m.controls.push_back({c.name, c.width, sig});
    }

    // -- statuses alias operator outputs --
    for (const auto& s : dp.statuses) {
        int sig = m.findSignal(s.from);
        if (sig < 0) {
            throw Error(Err::DanglingReference,
                        "status '" + s.name + "' reads unknown signal '" + s.from + "'", s.pos);
        }
        if (m.signals[static_cast<size_t>(sig)].width != s.width) {
            throw Error(Err::WidthMismatch,
                        "status '" + s.name + "' is " + std::to_string(s.width) + " bits but '" +
                            s.from + "' is " +
                            std::to_string(m.signals[static_cast<size_t>(sig)].width),
                        s.pos);
        }
        m.statuses.push_back({s.name, s.width, sig});
        m.signalIndex[s.name] = sig;
        m.signalIndex[s.name + ".out"] = sig;
    }

    // -- nets --
    for (const auto& net : dp.nets) {
        int src = m.findSignal(net.from);
        if (src < 0) {
            throw Error(Err::DanglingReference, "net from unknown signal '" + net.from + "'",
                        net.pos);
        }
        size_t dot = net.to.find('.');
        std::string toId = net.to.substr(0, dot);
        std::string toPort = net.to.substr(dot + 1);
        auto it = opIndex.find(toId);
        if (it == opIndex.end()) {
            throw Error(Err::DanglingReference, "net to unknown operator '" + toId + "'", net.pos);
        }
        ElabOp& op = m.ops[static_cast<size_t>(it->second)];
        size_t portIdx = op.ports.size();
        for (size_t i = 0; i < op.ports.size(); ++i) {
            if (op.ports[i].name == toPort) {
                portIdx = i;
                break;
            }
        }
        if (portIdx == op.ports.size()) {
            throw Error(Err::DanglingReference,
                        "operator '" + toId + "' has no input port '" + toPort + "'", net.pos);
        }
        if (op.inputs[portIdx] != -1) {
            throw Error(Err::MultipleDrivers, "port '" + net.to + "' has more than one driver",
                        net.pos);
        }
        int srcWidth = m.signals[static_cast<size_t>(src)].width;
        if (srcWidth != op.ports[portIdx].width) {
            throw Error(Err::WidthMismatch,
                        "net '" + net.from + "' -> '" + net.to + "': " + std::to_string(srcWidth) +
                            " bits into a " + std::to_string(op.ports[portIdx].width) +
                            "-bit port",
                        net.pos);
        }
        op.inputs[portIdx] = src;
    }

    // -- required ports --
    for (const auto& op : m.ops) {
        for (size_t i = 0; i < op.ports.size(); ++i) {
            if (op.ports[i].required && op.inputs[i] == -1) {
                throw Error(Err::UnboundPort,
                            "port '" + op.decl.id + "." + op.ports[i].name + "' is not driven",
                            op.decl.pos);
            }
        }
        if (op.decl.kind == OpKind::Mem) {
            int din = op.input("din");
            int we = op.input("we");
            if (we != -1 && din == -1) {
                throw Error(Err::UnboundPort,
                            "memory '" + op.decl.id + "' has we connected but no din",
                            op.decl.pos);
            }
            if (din != -1 && we == -1) {
                throw Error(Err::UnboundPort,
                            "memory '" + op.decl.id + "' has din connected but no we",
                            op.decl.pos);
            }
        }
    }

    // -- controller binding: outputs ↔ controls, inputs ↔ statuses --
    {
        std::unordered_map<std::string, int> outWidth;
        for (const auto& o : fsm.outputs) outWidth[o.name] = o.width;
        for (const auto& c : m.controls) {
            auto it = outWidth.find(c.name);
            if (it == outWidth.end()) {
                throw Error(Err::ControlStatusMismatch,
                            "control '" + c.name + "' has no matching FSM output");
            }
            if (it->second != c.width) {
                throw Error(Err::ControlStatusMismatch,
                            "control '" + c.name + "' is " + std::to_string(c.width) +
                                " bits but FSM output is " + std::to_string(it->second));
            }
        }
        if (outWidth.size() != m.controls.size()) {
            for (const auto& o : fsm.outputs) {
                bool found = false;
                for (const auto& c : m.controls) found = found || c.name == o.name;
                if (!found) {
                    throw Error(Err::ControlStatusMismatch,
                                "FSM output '" + o.name + "' has no matching datapath control");
                }
            }
        }
        std::unordered_set<std::string> statusNames;
        for (const auto& s : m.statuses) statusNames.insert(s.name);
        for (const auto& in : fsm.inputs) {
            if (!statusNames.count(in)) {
                throw Error(Err::ControlStatusMismatch,
                            "FSM input '" + in + "' has no matching datapath status");
            }
        }
        if (fsm.inputs.size() != statusNames.size()) {
            std::unordered_set<std::string> inNames(fsm.inputs.begin(), fsm.inputs.end());
            for (const auto& s : m.statuses) {
                if (!inNames.count(s.name)) {
                    throw Error(Err::ControlStatusMismatch,
                                "status '" + s.name + "' has no matching FSM input");
                }
            }
        }
    }

    // -- classify --
    for (size_t i = 0; i < m.ops.size(); ++i) {
        switch (m.ops[i].decl.kind) {
        case OpKind::Reg: m.regOps.push_back(static_cast<int>(i)); break;
        case OpKind::Mem: m.memOps.push_back(static_cast<int>(i)); break;
        case OpKind::In: m.inOps.push_back(static_cast<int>(i)); break;
        case OpKind::Out: m.outOps.push_back(static_cast<int>(i)); break;
        default: break;
        }
    }

    // -- levelize combinational ops (Kahn); leftovers indicate a cycle --
    std::vector<int> producerOf(m.signals.size(), -1);  // comb op producing a signal
    auto isCombNode = [&](const ElabOp& op) {
        return !isSequentialOutput(op.decl) && op.decl.kind != OpKind::In;
    };
    for (size_t i = 0; i < m.ops.size(); ++i) {
        if (isCombNode(m.ops[i])) producerOf[static_cast<size_t>(m.ops[i].output)] = static_cast<int>(i);
    }
    // For a latency-0 memory only addr feeds the combinational output; din/we
    // are sampled at the edge and impose no settle ordering.
    auto combInputs = [&](const ElabOp& op, auto&& fn) {
        if (op.decl.kind == OpKind::Mem) {
            fn(op.input("addr"));
            return;
        }
        for (int s : op.inputs) fn(s);
    };
    std::vector<int> indeg(m.ops.size(), 0);
    std::vector<std::vector<int>> consumers(m.ops.size());
    std::vector<int> anyPred(m.ops.size(), -1);
    for (size_t i = 0; i < m.ops.size(); ++i) {
        if (!isCombNode(m.ops[i])) continue;
        combInputs(m.ops[i], [&](int s) {
            if (s < 0) return;
            int p = producerOf[static_cast<size_t>(s)];
            if (p < 0) return;
            ++indeg[i];
            consumers[static_cast<size_t>(p)].push_back(static_cast<int>(i));
            anyPred[i] = p;
        });
    }
    std::vector<int> ready;
    for (size_t i = 0; i < m.ops.size(); ++i) {
        if (isCombNode(m.ops[i]) && indeg[i] == 0) {
            m.ops[i].level = 1;
            ready.push_back(static_cast<int>(i));
        }
    }
    size_t processed = 0;
    size_t combCount = 0;
    for (const auto& op : m.ops) {
        if (isCombNode(op)) ++combCount;
    }
    for (size_t head = 0; head < ready.size(); ++head) {
        int u = ready[static_cast<size_t>(head)];
        ++processed;
        for (int v : consumers[static_cast<size_t>(u)]) {
            m.ops[static_cast<size_t>(v)].level =
                std::max(m.ops[static_cast<size_t>(v)].level, m.ops[static_cast<size_t>(u)].level + 1);
            if (--indeg[static_cast<size_t>(v)] == 0) ready.push_back(v);
        }
    }
    if (processed != combCount) {
        int start = -1;
        for (size_t i = 0; i < m.ops.size(); ++i) {
            if (isCombNode(m.ops[i]) && indeg[i] > 0) {
                start = static_cast<int>(i);
                break;
            }
        }
        // Restrict predecessor choice to leftover nodes so the walk stays
        // inside the cyclic subgraph.
        std::vector<int> pred(m.ops.size(), -1);
        for (size_t i = 0; i < m.ops.size(); ++i) {
            if (!isCombNode(m.ops[i]) || indeg[i] == 0) continue;
            combInputs(m.ops[i], [&](int s) {
                if (s < 0) return;
                int p = producerOf[static_cast<size_t>(s)];
                if (p >= 0 && indeg[static_cast<size_t>(p)] > 0) pred[i] = p;
            });
        }
        std::vector<int> cycle = detail::traceCycle(start, pred);
        std::string members;
        for (size_t i = 0; i < cycle.size(); ++i) {
            if (i) members += " -> ";
            members += m.ops[static_cast<size_t>(cycle[i])].decl.id;
        }
        members += " -> " + m.ops[static_cast<size_t>(cycle[0])].decl.id;
        throw Error(Err::CombinationalCycle, "combinational cycle: " + members,
                    m.ops[static_cast<size_t>(cycle[0])].decl.pos);
    }
    for (size_t i = 0; i < m.ops.size(); ++i) {
        if (isCombNode(m.ops[i])) {
            m.schedule.push_back(static_cast<int>(i));
            m.maxLevel = std::max(m.maxLevel, m.ops[i].level);
        }
    }
    std::stable_sort(m.schedule.begin(), m.schedule.end(), [&](int a, int b) {
        return m.ops[static_cast<size_t>(a)].level < m.ops[static_cast<size_t>(b)].level;
    });

    // -- FSM states: control images and transition targets --
    std::unordered_map<std::string, int> stateIndex;
    for (size_t i = 0; i < fsm.states.size(); ++i) stateIndex[fsm.states[i].name] = static_cast<int>(i);
    std::unordered_map<std::string, uint64_t> defaults;
    for (const auto& o : fsm.outputs) defaults[o.name] = o.defaultValue;
    for (const auto& st : fsm.states) {
        ElabState es;
        es.name = st.name;
        es.isFinal = st.isFinal;
        es.exitCode = st.exitCode;
        es.controlImage.reserve(m.controls.size());
        for (const auto& c : m.controls) {
            uint64_t v = defaults[c.name];
            for (const auto& as : st.assigns) {
                if (as.output == c.name) v = as.value;
            }
            es.controlImage.push_back(v);
        }
        for (const auto& tr : st.transitions) {
            es.transitions.push_back({tr.cond, stateIndex.at(tr.next)});
        }
        m.states.push_back(std::move(es));
    }
    m.resetState = stateIndex.at(fsm.resetState);
    return m;
}

}  // namespace rsim
