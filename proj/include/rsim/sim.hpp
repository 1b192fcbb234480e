#pragma once
// Cycle-accurate interpreter for an elaborated model. Each cycle: pour the
// current state's control image into the datapath, settle the combinational
// schedule in level order, write the trace row, check assertions, stop on a
// final state, otherwise take the clock edge (FSM transition plus atomic
// register/memory commit).

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "rsim/diag.hpp"
#include "rsim/elaborate.hpp"
#include "rsim/memfile.hpp"
#include "rsim/value.hpp"

namespace rsim {

enum class SimStatus { Finished, MaxCyclesReached, AssertionFailed, Fault };

inline const char* simStatusName(SimStatus s) {
    switch (s) {
    case SimStatus::Finished: return "finished";
    case SimStatus::MaxCyclesReached: return "max-cycles";
    case SimStatus::AssertionFailed: return "assertion-failed";
    case SimStatus::Fault: return "fault";
    }
    return "?";
}

struct SimResult {
    SimStatus status = SimStatus::Finished;
    int exitCode = 0;        // FSM final-state code, valid when Finished
    uint64_t cycles = 0;     // completed cycles == trace rows written
    uint64_t faultCycle = 0; // cycle a fault or assertion failure hit
    std::optional<Err> faultCode;
    std::string message;
    std::map<std::string, MemoryImage> finalMemories;  // every memory operator
    uint64_t opEvals = 0;    // operator evaluations (settle + edge)
    double wallSeconds = 0;
};

// --- assertions -------------------------------------------------------------

// Two forms, one per line:
//   at CYCLE SIGNAL == VALUE
//   always EXPR
// with // comments. At-checks fire only if the run reaches that cycle.
struct Assertion {
    bool isAlways = false;
    uint64_t cycle = 0;    // at
    std::string signal;    // at
    uint64_t value = 0;    // at
    std::optional<Expr> expr;  // always
    std::string text;      // original line, for messages
    SourcePos pos;
};

inline std::vector<Assertion> parseAssertions(std::string_view text) {
    std::vector<Assertion> out;
    int lineNo = 0;
    for (size_t start = 0; start <= text.size(); ++lineNo) {
        size_t end = text.find('\n', start);
        bool last = end == std::string_view::npos;
        std::string_view line = text.substr(start, (last ? text.size() : end) - start);
        start = last ? text.size() + 1 : end + 1;

        if (size_t c = line.find("//"); c != std::string_view::npos) line = line.substr(0, c);
        size_t b = line.find_first_not_of(" \t\r");
        if (b == std::string_view::npos) continue;
        line = line.substr(b, line.find_last_not_of(" \t\r") - b + 1);
        SourcePos pos{lineNo + 1, static_cast<int>(b) + 1};

        auto fail = [&](const std::string& msg) -> void {
            throw Error(Err::BadToken, msg, pos);
        };
        std::vector<std::string> tok;
        for (size_t i = 0; i < line.size();) {
            while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
            size_t s = i;
            while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
            if (i > s) tok.emplace_back(line.substr(s, i - s));
        }
        Assertion a;
        a.pos = pos;
        a.text = std::string(line);
        if (tok[0] == "at") {
            if (tok.size() != 5 || tok[3] != "==") fail("expected 'at CYCLE SIGNAL == VALUE'");
            auto cyc = parseNumber(tok[1]);
            if (!cyc) fail("bad cycle number '" + tok[1] + "'");
            auto val = parseNumber(tok[4]);
            if (!val) fail("bad value '" + tok[4] + "'");
            a.cycle = *cyc;
            a.signal = tok[2];
            a.value = *val;
        } else if (tok[0] == "always") {
            a.isAlways = true;
            std::string exprText(line.substr(6));
            try {
                a.expr = parseExpr(exprText);
            } catch (const Error& e) {
                throw Error(Err::ExprSyntax, "in assertion: " + e.brief(), pos);
            }
        } else {
            fail("expected 'at' or 'always', got '" + tok[0] + "'");
        }
        out.push_back(std::move(a));
    }
    return out;
}

inline std::vector<Assertion> loadAssertFile(const std::string& path) {
    try {
        return parseAssertions(readTextFile(path));
    } catch (Error& e) {
        e.setFile(path);
        throw;
    }
}

// --- trace columns ------------------------------------------------------------

// Observable state, in declaration order: register q's, memory dout's,
// statuses, out-operator outputs.
struct TraceColumn {
    std::string name;
    int signal = -1;
};

inline std::vector<TraceColumn> traceColumns(const Model& m) {
    std::vector<TraceColumn> cols;
    for (int i : m.regOps) cols.push_back({m.ops[static_cast<size_t>(i)].decl.id + ".q",
                                           m.ops[static_cast<size_t>(i)].output});
    for (int i : m.memOps) cols.push_back({m.ops[static_cast<size_t>(i)].decl.id + ".dout",
                                           m.ops[static_cast<size_t>(i)].output});
    for (const auto& s : m.statuses) cols.push_back({s.name + ".out", s.signal});
    for (int i : m.outOps) cols.push_back({m.ops[static_cast<size_t>(i)].decl.id + ".out",
                                           m.ops[static_cast<size_t>(i)].output});
    return cols;
}

// --- simulator -----------------------------------------------------------------

struct RunOptions {
    uint64_t maxCycles = 1000000;
    std::ostream* trace = nullptr;
    const std::vector<Assertion>* assertions = nullptr;
    // Signals to trace; empty means the default observable set (traceColumns).
    // Any signal-table name works; probing never changes simulation results.
    std::vector<std::string> probes;
};

class Simulator {
public:
    // `memFileBaseDir` resolves relative `file=` attributes on memories.
    explicit Simulator(const Model& model, const std::string& memFileBaseDir = "")
        : m_(model) {
        vals_.assign(m_.signals.size(), 0);
        regs_.resize(m_.regOps.size());
        mems_.resize(m_.memOps.size());
        memModelOfOp_.assign(m_.ops.size(), -1);
        for (size_t i = 0; i < m_.memOps.size(); ++i) {
            const OperatorDecl& d = m_.ops[static_cast<size_t>(m_.memOps[i])].decl;
            MemoryModel& mm = mems_[i];
            mm.latency = d.latency;
            if (d.memFile) {
                std::filesystem::path p(*d.memFile);
                if (p.is_relative() && !memFileBaseDir.empty()) {
                    p = std::filesystem::path(memFileBaseDir) / p;
                }
                mm.image = loadMemFile(p.string(), d.width, d.depth);
            } else {
                mm.image = makeImage(d.width, d.depth);
            }
            memIndex_[d.id] = static_cast<int>(i);
            memModelOfOp_[static_cast<size_t>(m_.memOps[i])] = static_cast<int>(i);
        }
        for (int i : m_.inOps) inIndex_[m_.ops[static_cast<size_t>(i)].decl.id] = i;
        for (const auto& s : m_.statuses) statusSignal_[s.name] = s.signal;
        resetSequential();
    }

    const Model& model() const { return m_; }

    // External input value; persists for the whole run.
    void setInput(const std::string& name, uint64_t value) {
        auto it = inIndex_.find(name);
        if (it == inIndex_.end()) {
            throw Error(Err::DanglingReference, "no input operator '" + name + "'");
        }
        const ElabOp& op = m_.ops[static_cast<size_t>(it->second)];
        if (!fitsWidth(value, op.decl.width)) {
            throw Error(Err::WordExceedsWidth, "input '" + name + "' value does not fit in " +
                                                   std::to_string(op.decl.width) + " bits");
        }
        vals_[static_cast<size_t>(op.output)] = value;
    }

    void setMemImage(const std::string& id, const MemoryImage& img) {
        MemoryModel& mm = memByName(id);
        if (!mm.image.sameShape(img)) {
            throw Error(Err::SharedMemoryShapeMismatch,
                        "memory '" + id + "' is " + std::to_string(mm.image.width) + "x" +
                            std::to_string(mm.image.depth) + ", image is " +
                            std::to_string(img.width) + "x" + std::to_string(img.depth));
        }
        mm.image = img;
    }

    const MemoryImage& memImage(const std::string& id) const {
        return const_cast<Simulator*>(this)->memByName(id).image;
    }

    uint64_t signalValue(const std::string& name) const {
        int s = m_.findSignal(name);
        if (s < 0) throw Error(Err::DanglingReference, "no signal '" + name + "'");
        return vals_[static_cast<size_t>(s)];
    }

    int stateIndex() const { return state_; }

    // One cycle for tests: settle, then take the edge unless the state is
    // final. Returns false (leaving settled values observable) when it is.
    // Faults propagate as Error.
    bool step() {
        settle();
        const ElabState& st = m_.states[static_cast<size_t>(state_)];
        if (st.isFinal) return false;
        edge(st);
        return true;
    }

    SimResult run(const RunOptions& opt = {}) {
        if (opt.assertions) checkAssertionSignals(*opt.assertions);
        std::vector<TraceColumn> cols;
        if (opt.trace) {
            if (opt.probes.empty()) {
                cols = traceColumns(m_);
            } else {
                for (const auto& p : opt.probes) {
                    int s = m_.findSignal(p);
                    if (s < 0) throw Error(Err::DanglingReference, "no signal '" + p + "' to probe");
                    cols.push_back({p, s});
                }
            }
            std::string header = "cycle";
            for (const auto& c : cols) {
                header += ',';
                header += c.name;
            }
            header += '\n';
            *opt.trace << header;
        }
        auto t0 = std::chrono::steady_clock::now();
        opEvals_ = 0;
        SimResult res;
        auto finish = [&]() -> SimResult& {
            res.opEvals = opEvals_;
            res.wallSeconds = std::chrono::duration<double>(
                std::chrono::steady_clock::now() - t0).count();
            for (size_t i = 0; i < m_.memOps.size(); ++i) {
                res.finalMemories.emplace(m_.ops[static_cast<size_t>(m_.memOps[i])].decl.id,
                                          mems_[i].image);
            }
            return res;
        };
        for (uint64_t cycle = 0;; ++cycle) {
            if (cycle == opt.maxCycles) {
                res.status = SimStatus::MaxCyclesReached;
                res.cycles = cycle;
                res.message = "cycle budget of " + std::to_string(opt.maxCycles) + " exhausted";
                return finish();
            }
            try {
                settle();
            } catch (const Error& e) {
                res.status = SimStatus::Fault;
                res.cycles = cycle;
                res.faultCycle = cycle;
                res.faultCode = e.code();
                res.message = "cycle " + std::to_string(cycle) + ": " + e.brief();
                return finish();
            }
            if (opt.trace) {
                std::string row = std::to_string(cycle);
                for (const auto& c : cols) {
                    row += ',';
                    row += hexWord(vals_[static_cast<size_t>(c.signal)],
                                   m_.signals[static_cast<size_t>(c.signal)].width);
                }
                row += '\n';
                *opt.trace << row;
            }
            if (opt.assertions) {
                for (const auto& a : *opt.assertions) {
                    if (!holds(a, cycle)) {
                        res.status = SimStatus::AssertionFailed;
                        res.cycles = cycle + 1;
                        res.faultCycle = cycle;
                        res.message = "cycle " + std::to_string(cycle) + ": assertion '" +
                                      a.text + "' failed" + assertDetail(a);
                        return finish();
                    }
                }
            }
            const ElabState& st = m_.states[static_cast<size_t>(state_)];
            if (st.isFinal) {
                res.status = SimStatus::Finished;
                res.exitCode = st.exitCode;
                res.cycles = cycle + 1;
                return finish();
            }
            try {
                edge(st);
            } catch (const Error& e) {
                res.status = SimStatus::Fault;
                res.cycles = cycle + 1;
                res.faultCycle = cycle;
                res.faultCode = e.code();
                res.message = "cycle " + std::to_string(cycle) + ": " + e.brief();
                return finish();
            }
        }
    }

private:
    MemoryModel& memByName(const std::string& id) {
        auto it = memIndex_.find(id);
        if (it == memIndex_.end()) {
            throw Error(Err::DanglingReference, "no memory operator '" + id + "'");
        }
        return mems_[static_cast<size_t>(it->second)];
    }

    void resetSequential() {
        state_ = m_.resetState;
        for (size_t i = 0; i < m_.regOps.size(); ++i) {
            const ElabOp& op = m_.ops[static_cast<size_t>(m_.regOps[i])];
            regs_[i].reset();
            regs_[i].q = op.decl.init;
            regs_[i].next = op.decl.init;
            vals_[static_cast<size_t>(op.output)] = op.decl.init;
        }
        for (size_t i = 0; i < m_.memOps.size(); ++i) {
            const ElabOp& op = m_.ops[static_cast<size_t>(m_.memOps[i])];
            mems_[i].resetSequential();
            if (mems_[i].latency == 1) vals_[static_cast<size_t>(op.output)] = 0;
        }
    }

    uint64_t in(const ElabOp& op, size_t port) const {
        return vals_[static_cast<size_t>(op.inputs[port])];
    }

    void settle() {
        const ElabState& st = m_.states[static_cast<size_t>(state_)];
        for (size_t i = 0; i < m_.controls.size(); ++i) {
            vals_[static_cast<size_t>(m_.controls[i].signal)] = st.controlImage[i];
        }
        size_t cur = 0;
        try {
            for (size_t n = 0; n < m_.schedule.size(); ++n) {
                cur = n;
                const ElabOp& op = m_.ops[static_cast<size_t>(m_.schedule[n])];
                const OperatorDecl& d = op.decl;
                uint64_t out;
                if (isBinaryArith(d.kind)) {
                    out = evalBinary(d.kind, in(op, 0), in(op, 1), d.width);
                } else if (isCompare(d.kind)) {
                    out = evalCompare(d.kind, in(op, 0), in(op, 1), d.width);
                } else if (isUnaryArith(d.kind)) {
                    out = evalUnary(d.kind, in(op, 0), d.width);
                } else if (d.kind == OpKind::Const) {
                    out = d.value;
                } else if (d.kind == OpKind::Mux) {
                    uint64_t sel = in(op, 0);
                    if (sel >= static_cast<uint64_t>(d.arity)) {
                        throw Error(Err::MuxIndexOutOfRange,
                                    "select " + std::to_string(sel) + " with arity " +
                                        std::to_string(d.arity));
                    }
                    out = in(op, 1 + static_cast<size_t>(sel));
                } else if (d.kind == OpKind::Out) {
                    out = in(op, 0);
                } else {  // latency-0 memory read
                    const MemoryModel& mm = mems_[static_cast<size_t>(
                        memModelOfOp_[static_cast<size_t>(m_.schedule[n])])];
                    out = mm.readComb(in(op, 0));
                }
                vals_[static_cast<size_t>(op.output)] = out;
            }
        } catch (const Error& e) {
            const OperatorDecl& d = m_.ops[static_cast<size_t>(m_.schedule[cur])].decl;
            throw Error(e.code(), "operator '" + d.id + "': " + e.brief(), d.pos);
        }
        opEvals_ += m_.schedule.size();
    }

    void edge(const ElabState& st) {
        // next FSM state: first transition whose guard holds; none → stay
        int next = state_;
        for (const auto& tr : st.transitions) {
            bool take = true;
            if (tr.cond) {
                take = evalExpr(*tr.cond, [&](const std::string& v) {
                           return vals_[static_cast<size_t>(statusSignal_.at(v))];
                       }) != 0;
            }
            if (take) {
                next = tr.next;
                break;
            }
        }
        // capture, then commit, so simultaneous updates see old values
        for (size_t i = 0; i < m_.regOps.size(); ++i) {
            const ElabOp& op = m_.ops[static_cast<size_t>(m_.regOps[i])];
            int en = op.inputs[1];
            regs_[i].capture(in(op, 0), en < 0 ? 1 : vals_[static_cast<size_t>(en)]);
        }
        for (size_t i = 0; i < m_.memOps.size(); ++i) {
            const ElabOp& op = m_.ops[static_cast<size_t>(m_.memOps[i])];
            int din = op.inputs[1];
            int we = op.inputs[2];
            try {
                mems_[i].capture(in(op, 0), din < 0 ? 0 : vals_[static_cast<size_t>(din)],
                                 we < 0 ? 0 : vals_[static_cast<size_t>(we)]);
            } catch (const Error& e) {
                throw Error(e.code(), "memory '" + op.decl.id + "': " + e.brief(), op.decl.pos);
            }
        }
        for (size_t i = 0; i < m_.regOps.size(); ++i) {
            regs_[i].commit();
            vals_[static_cast<size_t>(m_.ops[static_cast<size_t>(m_.regOps[i])].output)] =
                regs_[i].q;
        }
        for (size_t i = 0; i < m_.memOps.size(); ++i) {
            mems_[i].commit();
            if (mems_[i].latency == 1) {
                vals_[static_cast<size_t>(m_.ops[static_cast<size_t>(m_.memOps[i])].output)] =
                    mems_[i].doutReg;
            }
        }
        opEvals_ += m_.regOps.size() + m_.memOps.size();
        state_ = next;
    }

    void checkAssertionSignals(const std::vector<Assertion>& asserts) {
        for (const auto& a : asserts) {
            if (a.isAlways) {
                forEachVar(*a.expr, [&](const std::string& v) {
                    if (m_.findSignal(v) < 0) {
                        throw Error(Err::DanglingReference,
                                    "assertion references unknown signal '" + v + "'", a.pos);
                    }
                });
            } else {
                int s = m_.findSignal(a.signal);
                if (s < 0) {
                    throw Error(Err::DanglingReference,
                                "assertion references unknown signal '" + a.signal + "'", a.pos);
                }
                if (!fitsWidth(a.value, m_.signals[static_cast<size_t>(s)].width)) {
                    throw Error(Err::WordExceedsWidth,
                                "assertion value does not fit signal '" + a.signal + "'", a.pos);
                }
            }
        }
    }

    bool holds(const Assertion& a, uint64_t cycle) const {
        if (a.isAlways) {
            return evalExpr(*a.expr, [&](const std::string& v) {
                       return vals_[static_cast<size_t>(m_.findSignal(v))];
                   }) != 0;
        }
        if (a.cycle != cycle) return true;
        return vals_[static_cast<size_t>(m_.findSignal(a.signal))] == a.value;
    }

    std::string assertDetail(const Assertion& a) const {
        if (a.isAlways) return "";
        return " (" + a.signal + " = 0x" +
               hexWord(vals_[static_cast<size_t>(m_.findSignal(a.signal))],
                       m_.signals[static_cast<size_t>(m_.findSignal(a.signal))].width) +
               ", expected 0x" +
               hexWord(a.value, m_.signals[static_cast<size_t>(m_.findSignal(a.signal))].width) +
               ")";
    }

    const Model& m_;
    std::vector<uint64_t> vals_;
    std::vector<RegisterModel> regs_;
    std::vector<MemoryModel> mems_;
    std::vector<int> memModelOfOp_;  // op index -> mems_ index, -1 otherwise
    std::unordered_map<std::string, int> memIndex_;
    std::unordered_map<std::string, int> inIndex_;
    std::unordered_map<std::string, int> statusSignal_;
    uint64_t opEvals_ = 0;
    int state_ = 0;
};

}  // namespace rsim
