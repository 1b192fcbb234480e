#pragma once
// Diagnostic codes and the error type shared by all components.

#include <exception>
#include <string>
#include <utility>

namespace rsim {

enum class Err {
    // document / schema
    XmlSyntax,
    UnknownElement,
    UnknownOperatorKind,
    DuplicateId,
    BadAttribute,
    MissingResetState,
    ExprSyntax,
    // elaboration
    CombinationalCycle,
    WidthMismatch,
    UnboundPort,
    MultipleDrivers,
    DanglingReference,
    ControlStatusMismatch,
    // reconfiguration graph
    UnknownConfiguration,
    SharedMemoryShapeMismatch,
    MissingStartNode,
    NoEnabledEdge,
    ReconfigLimit,
    // runtime faults
    DivideByZero,
    AddressOutOfRange,
    MuxIndexOutOfRange,
    // memory image files
    BadToken,
    AddressBeyondDepth,
    WordExceedsWidth,
    ShapeMismatch,
    // i/o
    FileError,
};

inline const char* errName(Err e) {
    switch (e) {
    case Err::XmlSyntax: return "XmlSyntax";
    case Err::UnknownElement: return "UnknownElement";
    case Err::UnknownOperatorKind: return "UnknownOperatorKind";
    case Err::DuplicateId: return "DuplicateId";
    case Err::BadAttribute: return "BadAttribute";
    case Err::MissingResetState: return "MissingResetState";
    case Err::ExprSyntax: return "ExprSyntax";
    case Err::CombinationalCycle: return "CombinationalCycle";
    case Err::WidthMismatch: return "WidthMismatch";
    case Err::UnboundPort: return "UnboundPort";
    case Err::MultipleDrivers: return "MultipleDrivers";
    case Err::DanglingReference: return "DanglingReference";
    case Err::ControlStatusMismatch: return "ControlStatusMismatch";
    case Err::UnknownConfiguration: return "UnknownConfiguration";
    case Err::SharedMemoryShapeMismatch: return "SharedMemoryShapeMismatch";
    case Err::MissingStartNode: return "MissingStartNode";
    case Err::NoEnabledEdge: return "NoEnabledEdge";
    case Err::ReconfigLimit: return "ReconfigLimit";
    case Err::DivideByZero: return "DivideByZero";
    case Err::AddressOutOfRange: return "AddressOutOfRange";
    case Err::MuxIndexOutOfRange: return "MuxIndexOutOfRange";
    case Err::BadToken: return "BadToken";
    case Err::AddressBeyondDepth: return "AddressBeyondDepth";
    case Err::WordExceedsWidth: return "WordExceedsWidth";
    case Err::ShapeMismatch: return "ShapeMismatch";
    case Err::FileError: return "FileError";
    }
    return "Unknown";
}

struct SourcePos {
    int line = 0;  // 1-based; 0 means "no position"
    int col = 0;
    bool valid() const { return line > 0; }
};

// All fallible operations throw this. The formatted what() carries
// file:line:col when known, plus the code name, so callers can print it
// verbatim as a diagnostic.
class Error : public std::exception {
public:
    Error(Err code, std::string brief, SourcePos pos = {})
        : code_(code), pos_(pos), brief_(std::move(brief)) {
        reformat();
    }

    const char* what() const noexcept override { return formatted_.c_str(); }
    Err code() const { return code_; }
    SourcePos pos() const { return pos_; }
    const std::string& brief() const { return brief_; }
    const std::string& file() const { return file_; }

    // Attaches the originating file once; later calls keep the first name.
    void setFile(const std::string& f) {
        if (file_.empty() && !f.empty()) {
            file_ = f;
            reformat();
        }
    }

private:
    void reformat() {
        formatted_.clear();
        if (!file_.empty()) formatted_ += file_ + ":";
        if (pos_.valid()) {
            formatted_ += std::to_string(pos_.line) + ":" + std::to_string(pos_.col) + ":";
        }
        if (!formatted_.empty()) formatted_ += " ";
        formatted_ += brief_;
        formatted_ += " [";
        formatted_ += errName(code_);
        formatted_ += "]";
    }

    Err code_;
    SourcePos pos_;
    std::string brief_;
    std::string file_;
    std::string formatted_;
};

}  // namespace rsim
