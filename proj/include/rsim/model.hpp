#pragma once
// Parsed design model: datapath, controller FSM, and reconfiguration
// transition graph, exactly as read from their files. Cross-reference
// resolution, width checking, and scheduling happen in elaborate.hpp.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rsim/expr.hpp"
#include "rsim/ops.hpp"

namespace rsim {

// --- datapath -------------------------------------------------------------

struct ControlPort {
    std::string name;
    int width = 1;
    SourcePos pos;
};

struct StatusPort {
    std::string name;
    int width = 1;
    std::string from;  // "operator.port" or bare operator id
    SourcePos pos;
};

struct OperatorDecl {
    std::string id;
    OpKind kind = OpKind::Const;
    int width = 1;
    uint64_t value = 0;              // const
    uint64_t init = 0;               // reg initial q
    uint64_t depth = 0;              // mem
    int latency = 1;                 // mem
    int arity = 2;                   // mux data inputs
    std::optional<std::string> memFile;  // mem initial contents (relative path)
    SourcePos pos;
};

struct NetDecl {
    std::string from;  // "operator" or "operator.port" or control name
    std::string to;    // "operator.port"
    SourcePos pos;
};

struct DatapathSpec {
    std::string name;
    std::vector<ControlPort> controls;
    std::vector<StatusPort> statuses;
    std::vector<OperatorDecl> operators;
    std::vector<NetDecl> nets;
};

// --- controller FSM ---------------------------------------------------------

struct FsmOutput {
    std::string name;
    int width = 1;
    uint64_t defaultValue = 0;
    SourcePos pos;
};

struct FsmAssign {
    std::string output;
    uint64_t value = 0;
    SourcePos pos;
};

struct FsmTransition {
    std::optional<Expr> cond;  // absent = unconditional
    std::string next;
    SourcePos pos;
};

struct FsmState {
    std::string name;
    bool isFinal = false;
    int exitCode = 0;
    std::vector<FsmAssign> assigns;
    std::vector<FsmTransition> transitions;
    SourcePos pos;
};

struct FsmSpec {
    std::string name;
    std::string resetState;
    std::vector<std::string> inputs;  // status names consumed by guards
    std::vector<FsmOutput> outputs;   // control values driven into the datapath
    std::vector<FsmState> states;
};

// --- reconfiguration transition graph ----------------------------------------

struct RtgBinding {
    std::string config;  // configuration id
    std::string memory;  // mem operator id inside that configuration
    SourcePos pos;
};

struct SharedMemoryDecl {
    std::string id;
    int width = 1;
    uint64_t depth = 0;
    std::vector<RtgBinding> binds;
    SourcePos pos;
};

struct RtgConfiguration {
    std::string id;
    std::string datapathFile;
    std::string fsmFile;
    SourcePos pos;
};

struct RtgEdge {
    std::string from;
    std::string to;
    std::optional<Expr> cond;  // over variable `exit`; absent = always
    SourcePos pos;
};

struct RtgSpec {
    std::string name;
    std::string start;
    std::vector<RtgConfiguration> configurations;
    std::vector<RtgEdge> edges;
    std::vector<SharedMemoryDecl> sharedMemories;
};

}  // namespace rsim
