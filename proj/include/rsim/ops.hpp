#pragma once
// Operator kinds, their port signatures, and the word-level evaluation
// primitives. All arithmetic wraps modulo 2^width; shifts take the amount
// modulo the width; comparisons yield a 1-bit result; signed comparisons
// interpret both operands as two's complement at the operator width.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rsim/diag.hpp"
#include "rsim/memfile.hpp"
#include "rsim/value.hpp"

namespace rsim {

enum class OpKind {
    Const,
    Add,
    Sub,
    Mul,
    Div,
    Rem,
    Neg,
    And,
    Or,
    Xor,
    Not,
    Shl,
    Shr,
    Asr,
    Eq,
    Ne,
    Ltu,
    Leu,
    Gtu,
    Geu,
    Lts,
    Les,
    Gts,
    Ges,
    Mux,
    Reg,
    Mem,
    In,
    Out,
};

inline constexpr std::string_view opKindName(OpKind k) {
    switch (k) {
    case OpKind::Const: return "const";
    case OpKind::Add: return "add";
    case OpKind::Sub: return "sub";
    case OpKind::Mul: return "mul";
    case OpKind::Div: return "div";
    case OpKind::Rem: return "rem";
    case OpKind::Neg: return "neg";
    case OpKind::And: return "and";
    case OpKind::Or: return "or";
    case OpKind::Xor: return "xor";
    case OpKind::Not: return "not";
    case OpKind::Shl: return "shl";
    case OpKind::Shr: return "shr";
    case OpKind::Asr: return "asr";
    case OpKind::Eq: return "eq";
    case OpKind::Ne: return "ne";
    case OpKind::Ltu: return "ltu";
    case OpKind::Leu: return "leu";
    case OpKind::Gtu: return "gtu";
    case OpKind::Geu: return "geu";
    case OpKind::Lts: return "lts";
    case OpKind::Les: return "les";
    case OpKind::Gts: return "gts";
    case OpKind::Ges: return "ges";
    case OpKind::Mux: return "mux";
    case OpKind::Reg: return "reg";
    case OpKind::Mem: return "mem";
    case OpKind::In: return "in";
    case OpKind::Out: return "out";
    }
    return "?";
}

inline std::optional<OpKind> opKindFromName(std::string_view name) {
    static constexpr OpKind kAll[] = {
        OpKind::Const, OpKind::Add, OpKind::Sub, OpKind::Mul, OpKind::Div, OpKind::Rem,
        OpKind::Neg,   OpKind::And, OpKind::Or,  OpKind::Xor, OpKind::Not, OpKind::Shl,
        OpKind::Shr,   OpKind::Asr, OpKind::Eq,  OpKind::Ne,  OpKind::Ltu, OpKind::Leu,
        OpKind::Gtu,   OpKind::Geu, OpKind::Lts, OpKind::Les, OpKind::Gts, OpKind::Ges,
        OpKind::Mux,   OpKind::Reg, OpKind::Mem, OpKind::In,  OpKind::Out,
    };
    for (OpKind k : kAll) {
        if (opKindName(k) == name) return k;
    }
    return std::nullopt;
}

inline constexpr bool isBinaryArith(OpKind k) {
    switch (k) {
    case OpKind::Add:
    case OpKind::Sub:
    case OpKind::Mul:
    case OpKind::Div:
    case OpKind::Rem:
    case OpKind::And:
    case OpKind::Or:
    case OpKind::Xor:
    case OpKind::Shl:
    case OpKind::Shr:
    case OpKind::Asr: return true;
    default: return false;
    }
}

inline constexpr bool isCompare(OpKind k) {
    switch (k) {
    case OpKind::Eq:
    case OpKind::Ne:
    case OpKind::Ltu:
    case OpKind::Leu:
    case OpKind::Gtu:
    case OpKind::Geu:
    case OpKind::Lts:
    case OpKind::Les:
    case OpKind::Gts:
    case OpKind::Ges: return true;
    default: return false;
    }
}

inline constexpr bool isUnaryArith(OpKind k) { return k == OpKind::Neg || k == OpKind::Not; }

inline constexpr bool isCombinational(OpKind k) {
    return k != OpKind::Reg && k != OpKind::Mem;
}

// --- word-level primitives ---------------------------------------------

// Binary combinational op at `width`; inputs must already be masked.
// Div/Rem by zero reports a DivideByZero fault at the caller's position.
inline uint64_t evalBinary(OpKind k, uint64_t a, uint64_t b, int width) {
    const uint64_t mask = maskFor(width);
    const uint64_t uw = static_cast<uint64_t>(width);
    switch (k) {
    case OpKind::Add: return (a + b) & mask;
    case OpKind::Sub: return (a - b) & mask;
    case OpKind::Mul: return (a * b) & mask;
    case OpKind::Div:
        if (b == 0) throw Error(Err::DivideByZero, "division by zero");
        return (a / b) & mask;
    case OpKind::Rem:
        if (b == 0) throw Error(Err::DivideByZero, "remainder by zero");
        return (a % b) & mask;
    case OpKind::And: return a & b;
    case OpKind::Or: return a | b;
    case OpKind::Xor: return a ^ b;
    case OpKind::Shl: return (a << (b % uw)) & mask;
    case OpKind::Shr: return a >> (b % uw);
    case OpKind::Asr: {
        uint64_t sh = b % uw;
        int64_t sa = toSigned(a, width);
        return static_cast<uint64_t>(sa >> sh) & mask;
    }
    default: break;
    }
    throw Error(Err::UnknownOperatorKind, "not a binary operator");
}

inline uint64_t evalUnary(OpKind k, uint64_t a, int width) {
    const uint64_t mask = maskFor(width);
    switch (k) {
    case OpKind::Neg: return (~a + 1) & mask;
    case OpKind::Not: return ~a & mask;
    default: break;
    }
    throw Error(Err::UnknownOperatorKind, "not a unary operator");
}

// Comparison at the *operand* width; result is one bit.
inline uint64_t evalCompare(OpKind k, uint64_t a, uint64_t b, int width) {
    switch (k) {
    case OpKind::Eq: return a == b;
    case OpKind::Ne: return a != b;
    case OpKind::Ltu: return a < b;
    case OpKind::Leu: return a <= b;
    case OpKind::Gtu: return a > b;
    case OpKind::Geu: return a >= b;
    case OpKind::Lts: return toSigned(a, width) < toSigned(b, width);
    case OpKind::Les: return toSigned(a, width) <= toSigned(b, width);
    case OpKind::Gts: return toSigned(a, width) > toSigned(b, width);
    case OpKind::Ges: return toSigned(a, width) >= toSigned(b, width);
    default: break;
    }
    throw Error(Err::UnknownOperatorKind, "not a comparison");
}

// --- stateful element models --------------------------------------------

// Register state: holds the current q; next-value capture and commit are
// separate so simultaneous updates across the netlist are atomic.
struct RegisterModel {
    uint64_t q = 0;
    uint64_t next = 0;

    void capture(uint64_t d, uint64_t en) { next = en ? d : q; }
    void commit() { q = next; }
    void reset() { q = 0; next = 0; }
};

// Synchronous memory: read-first semantics. With latency 1 the read data
// appears on dout one cycle after the address; with latency 0 dout follows
// combinationally. Writes commit at the clock edge; a simultaneous read of
// the written address returns the old word.
struct MemoryModel {
    MemoryImage image;
    int latency = 1;     // 0 or 1
    uint64_t doutReg = 0;

    uint64_t pendingAddr = 0;
    uint64_t pendingDin = 0;
    bool pendingWrite = false;
    uint64_t pendingRead = 0;
    bool havePending = false;

    uint64_t readComb(uint64_t addr) const {
        if (addr >= image.depth) {
            throw Error(Err::AddressOutOfRange, "read address " + std::to_string(addr) +
                                                    " out of range (depth " +
                                                    std::to_string(image.depth) + ")");
        }
        return image.words[addr];
    }

    // Settled-phase capture of this cycle's port values.
    void capture(uint64_t addr, uint64_t din, uint64_t we) {
        if (addr >= image.depth) {
            throw Error(Err::AddressOutOfRange, "address " + std::to_string(addr) +
                                                    " out of range (depth " +
                                                    std::to_string(image.depth) + ")");
        }
        pendingAddr = addr;
        pendingDin = din;
        pendingWrite = we != 0;
        pendingRead = image.words[addr];  // read-first: old data
        havePending = true;
    }

    void commit() {
        if (!havePending) return;
        if (latency == 1) doutReg = pendingRead;
        if (pendingWrite) image.words[pendingAddr] = pendingDin & maskFor(image.width);
        havePending = false;
    }

    void resetSequential() {
        doutReg = 0;
        havePending = false;
    }
};

}  // namespace rsim
