// Command-line front door: validate designs, simulate a configuration, walk a
// reconfiguration graph, diff memory images, run a verification suite, and
// export Graphviz views.
//
// Exit codes: 0 success, 1 verification/assertion/execution failure,
// 2 bad input or usage, 3 cycle budget exhausted.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <unistd.h>

#include "CLI11.hpp"
#include "rsim/rsim.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kBadInput = 2;
constexpr int kBudget = 3;

struct Palette {
    const char* red = "";
    const char* green = "";
    const char* yellow = "";
    const char* reset = "";
};

Palette paletteFor(FILE* stream) {
    const char* mode = std::getenv("RECONFIGSIM_COLOR");
    bool on;
    if (mode && std::string_view(mode) == "always") {
        on = true;
    } else if (mode && std::string_view(mode) == "never") {
        on = false;
    } else {
        on = isatty(fileno(stream)) != 0;  // auto
    }
    if (!on) return {};
    return {"\033[31m", "\033[32m", "\033[33m", "\033[0m"};
}

void printError(const std::string& msg) {
    Palette p = paletteFor(stderr);
    std::cerr << p.red << "error:" << p.reset << " " << msg << "\n";
}

void printWarning(const std::string& msg) {
    Palette p = paletteFor(stderr);
    std::cerr << p.yellow << "warning:" << p.reset << " " << msg << "\n";
}

std::pair<std::string, std::string> splitKv(const std::string& s, const char* what) {
    size_t eq = s.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == s.size()) {
        throw rsim::Error(rsim::Err::BadToken,
                          std::string(what) + " needs the form NAME=VALUE, got '" + s + "'");
    }
    return {s.substr(0, eq), s.substr(eq + 1)};
}

std::string dirOf(const std::string& file) {
    return fs::path(file).parent_path().string();
}

// Open --trace/-o style outputs; "-" means stdout.
class OutFile {
public:
    explicit OutFile(const std::string& path) {
        if (path == "-") {
            out_ = &std::cout;
            return;
        }
        file_.open(path, std::ios::binary);
        if (!file_) {
            throw rsim::Error(rsim::Err::FileError, "cannot open '" + path + "' for writing");
        }
        out_ = &file_;
    }
    std::ostream& stream() { return *out_; }

private:
    std::ofstream file_;
    std::ostream* out_ = nullptr;
};

const rsim::OperatorDecl* findMem(const rsim::Model& m, const std::string& id) {
    for (int i : m.memOps) {
        if (m.ops[static_cast<size_t>(i)].decl.id == id) {
            return &m.ops[static_cast<size_t>(i)].decl;
        }
    }
    return nullptr;
}

void printStats(uint64_t opEvals, double wallSeconds) {
    double rate = wallSeconds > 0 ? static_cast<double>(opEvals) / wallSeconds : 0;
    std::fprintf(stdout, "stats: %llu operator evaluations in %.3f ms (%.2f Mops/s)\n",
                 static_cast<unsigned long long>(opEvals), wallSeconds * 1e3, rate / 1e6);
}

// --- validate -------------------------------------------------------------

struct ValidateArgs {
    std::vector<std::string> files;
};

int cmdValidate(const ValidateArgs& a) {
    int failures = 0;
    std::optional<rsim::DatapathSpec> dp;
    std::optional<rsim::FsmSpec> fsm;
    for (const auto& f : a.files) {
        try {
            rsim::XmlNode root = rsim::parseXml(rsim::readTextFile(f));
            if (root.tag == "datapath") {
                dp = rsim::parseDatapath(root);
                std::cout << f << ": datapath '" << dp->name << "', "
                          << dp->operators.size() << " operators, " << dp->nets.size()
                          << " nets\n";
            } else if (root.tag == "fsm") {
                fsm = rsim::parseFsm(root);
                std::cout << f << ": fsm '" << fsm->name << "', " << fsm->states.size()
                          << " states\n";
            } else if (root.tag == "rtg") {
                rsim::RtgEngine engine = rsim::RtgEngine::fromFile(f);
                std::cout << f << ": rtg '" << engine.spec().name << "', "
                          << engine.spec().configurations.size() << " configurations, "
                          << engine.spec().sharedMemories.size() << " shared memories\n";
            } else {
                throw rsim::Error(rsim::Err::UnknownElement,
                                  "expected <datapath>, <fsm>, or <rtg>, got <" + root.tag + ">",
                                  root.pos);
            }
        } catch (const rsim::Error& e) {
            std::string msg = e.what();
            if (msg.find(f) == std::string::npos) msg = f + ": " + msg;
            printError(msg);
            ++failures;
        }
    }
    if (failures == 0 && dp && fsm) {
        try {
            rsim::Model m = rsim::elaborate(*dp, *fsm);
            std::cout << "elaborated '" << dp->name << "' with '" << fsm->name << "': "
                      << m.signals.size() << " signals, schedule depth " << m.maxLevel << "\n";
        } catch (const rsim::Error& e) {
            printError(e.what());
            ++failures;
        }
    }
    return failures == 0 ? kOk : kBadInput;
}

// --- sim --------------------------------------------------------------------

struct SimArgs {
    std::string datapath;
    std::string fsm;
    std::vector<std::string> mems;
    std::vector<std::string> ins;
    std::vector<std::string> probes;
    std::vector<std::string> asserts;
    std::vector<std::string> dumps;
    std::string trace;
    uint64_t maxCycles = 1000000;
    bool stats = false;
};

int cmdSim(const SimArgs& a) {
    rsim::SimResult res;
    try {
        rsim::DatapathSpec dp = rsim::loadDatapathFile(a.datapath);
        rsim::FsmSpec fsm = rsim::loadFsmFile(a.fsm);
        rsim::Model model = rsim::elaborate(dp, fsm);
        rsim::Simulator sim(model, dirOf(a.datapath));

        for (const auto& kv : a.mems) {
            auto [id, file] = splitKv(kv, "--mem");
            const rsim::OperatorDecl* d = findMem(model, id);
            if (!d) {
                throw rsim::Error(rsim::Err::DanglingReference, "no memory operator '" + id + "'");
            }
            sim.setMemImage(id, rsim::loadMemFile(file, d->width, d->depth));
        }
        for (const auto& kv : a.ins) {
            auto [name, text] = splitKv(kv, "--in");
            auto value = rsim::parseNumber(text);
            if (!value) {
                throw rsim::Error(rsim::Err::BadToken, "bad --in value '" + text + "'");
            }
            sim.setInput(name, *value);
        }
        std::vector<rsim::Assertion> asserts;
        for (const auto& f : a.asserts) {
            auto part = rsim::loadAssertFile(f);
            asserts.insert(asserts.end(), part.begin(), part.end());
        }

        rsim::RunOptions opt;
        opt.maxCycles = a.maxCycles;
        opt.probes = a.probes;
        if (!asserts.empty()) opt.assertions = &asserts;
        std::optional<OutFile> traceOut;
        if (!a.trace.empty()) {
            traceOut.emplace(a.trace);
            opt.trace = &traceOut->stream();
        }
        res = sim.run(opt);

        for (const auto& kv : a.dumps) {
            auto [id, file] = splitKv(kv, "--dump");
            auto it = res.finalMemories.find(id);
            if (it == res.finalMemories.end()) {
                throw rsim::Error(rsim::Err::DanglingReference, "no memory operator '" + id + "'");
            }
            rsim::dumpMemFile(file, it->second);
        }
    } catch (const rsim::Error& e) {
        printError(e.what());
        return kBadInput;
    }

    switch (res.status) {
    case rsim::SimStatus::Finished:
        std::cout << "finished: exit " << res.exitCode << " after " << res.cycles
                  << " cycle(s)\n";
        break;
    case rsim::SimStatus::MaxCyclesReached:
        std::cout << "max-cycles: " << res.message << "\n";
        break;
    case rsim::SimStatus::AssertionFailed:
        std::cout << "assertion-failed: " << res.message << "\n";
        break;
    case rsim::SimStatus::Fault:
        std::cout << "fault: " << res.message << "\n";
        break;
    }
    if (a.stats) printStats(res.opEvals, res.wallSeconds);
    switch (res.status) {
    case rsim::SimStatus::Finished: return kOk;
    case rsim::SimStatus::MaxCyclesReached: return kBudget;
    default: return kFailed;
    }
}

// --- run-rtg ------------------------------------------------------------------

struct RtgArgs {
    std::string rtg;
    std::vector<std::string> shared;
    std::vector<std::string> dumps;
    std::string trace;
    uint64_t maxCycles = 1000000;
    uint64_t maxReconfigs = rsim::kDefaultReconfigLimit;
    bool stats = false;
};

int cmdRunRtg(const RtgArgs& a) {
    rsim::RtgResult res;
    try {
        rsim::RtgEngine engine = rsim::RtgEngine::fromFile(a.rtg);
        for (const auto& kv : a.shared) {
            auto [id, file] = splitKv(kv, "--shared");
            const rsim::SharedMemoryDecl* decl = nullptr;
            for (const auto& sm : engine.spec().sharedMemories) {
                if (sm.id == id) decl = &sm;
            }
            if (!decl) {
                throw rsim::Error(rsim::Err::DanglingReference, "no shared memory '" + id + "'");
            }
            engine.setSharedImage(id, rsim::loadMemFile(file, decl->width, decl->depth));
        }

        rsim::RtgRunOptions opt;
        opt.maxCycles = a.maxCycles;
        opt.maxReconfigs = a.maxReconfigs;
        std::optional<OutFile> traceOut;
        if (!a.trace.empty()) {
            traceOut.emplace(a.trace);
            opt.trace = &traceOut->stream();
        }
        try {
            res = engine.run(opt);
        } catch (const rsim::Error& e) {
            // deadlock: edges exist but none is enabled
            printError(e.what());
            return kFailed;
        }

        for (const auto& kv : a.dumps) {
            auto [id, file] = splitKv(kv, "--dump-shared");
            auto it = res.finalShared.find(id);
            if (it == res.finalShared.end()) {
                throw rsim::Error(rsim::Err::DanglingReference, "no shared memory '" + id + "'");
            }
            rsim::dumpMemFile(file, it->second);
        }
    } catch (const rsim::Error& e) {
        printError(e.what());
        return kBadInput;
    }

    std::string path;
    uint64_t totalCycles = 0;
    uint64_t totalEvals = 0;
    double totalWall = 0;
    for (const auto& step : res.path) {
        if (!path.empty()) path += " -> ";
        path += step.config + "(" + std::to_string(step.result.cycles) + ")";
        totalCycles += step.result.cycles;
        totalEvals += step.result.opEvals;
        totalWall += step.result.wallSeconds;
    }
    std::cout << "path: " << (path.empty() ? "(none)" : path) << "\n";
    switch (res.status) {
    case rsim::RtgStatus::Completed:
        std::cout << "completed: exit " << res.lastExit << " after " << res.path.size()
                  << " activation(s), " << totalCycles << " cycle(s)\n";
        break;
    case rsim::RtgStatus::ReconfigLimit:
        std::cout << "reconfig-limit: " << res.message << "\n";
        break;
    case rsim::RtgStatus::PropagatedFault:
        std::cout << "propagated-fault: " << res.message << "\n";
        break;
    }
    if (a.stats) printStats(totalEvals, totalWall);
    if (res.status == rsim::RtgStatus::Completed) return kOk;
    if (res.status == rsim::RtgStatus::PropagatedFault && !res.path.empty() &&
        res.path.back().result.status == rsim::SimStatus::MaxCyclesReached) {
        return kBudget;
    }
    return kFailed;
}

// --- check ----------------------------------------------------------------------

struct CheckArgs {
    std::string actual;
    std::string expected;
    uint64_t width = 0;
    uint64_t depth = 0;
};

int cmdCheck(const CheckArgs& a) {
    rsim::MismatchReport report;
    try {
        int width = static_cast<int>(a.width);
        rsim::MemoryImage actual = rsim::loadMemFile(a.actual, width, a.depth);
        rsim::MemoryImage expected = rsim::loadMemFile(a.expected, width, a.depth);
        report = rsim::compareImages(actual, expected);
    } catch (const rsim::Error& e) {
        printError(e.what());
        return kBadInput;
    }
    if (report.ok()) {
        std::cout << "0 mismatches\n";
        return kOk;
    }
    std::cout << report.total << " mismatch(es)\n";
    for (const auto& m : report.entries) {
        std::cout << "  addr 0x" << rsim::hexWord(m.address, 64) << ": actual 0x"
                  << rsim::hexWord(m.actual, static_cast<int>(a.width)) << ", expected 0x"
                  << rsim::hexWord(m.expected, static_cast<int>(a.width)) << "\n";
    }
    if (report.truncated()) {
        std::cout << "  ... and " << (report.total - report.entries.size()) << " more\n";
    }
    return kFailed;
}

// --- suite ----------------------------------------------------------------------

struct SuiteArgs {
    std::string manifest;
    std::string report;
    int jobs = 0;
};

int cmdSuite(const SuiteArgs& a) {
    rsim::SuiteOutcome outcome;
    try {
        rsim::SuiteSpec suite = rsim::loadSuiteFile(a.manifest);
        if (suite.tests.empty()) {
            printWarning("suite '" + suite.name + "' has no tests");
        }
        int jobs = a.jobs;
        if (jobs <= 0) {
            unsigned hc = std::thread::hardware_concurrency();
            jobs = hc > 0 ? static_cast<int>(hc) : 1;
        }
        outcome = rsim::runSuite(suite, dirOf(a.manifest), jobs);
    } catch (const rsim::Error& e) {
        printError(e.what());
        return kBadInput;
    }
    Palette p = paletteFor(stdout);
    for (const auto& t : outcome.tests) {
        char wall[32];
        std::snprintf(wall, sizeof wall, "%.1f", t.wallSeconds * 1e3);
        if (t.passed) {
            std::cout << p.green << "PASS" << p.reset;
        } else {
            std::cout << p.red << "FAIL" << p.reset;
        }
        std::cout << " " << t.name << ": " << t.detail << " (" << wall << " ms)\n";
    }
    std::cout << (outcome.tests.size() - outcome.failCount()) << "/" << outcome.tests.size()
              << " passed\n";
    if (!a.report.empty()) {
        try {
            OutFile out(a.report);
            out.stream() << rsim::suiteReportXml(outcome);
        } catch (const rsim::Error& e) {
            printError(e.what());
            return kBadInput;
        }
    }
    return outcome.allPassed() ? kOk : kFailed;
}

// --- dot ------------------------------------------------------------------------

struct DotArgs {
    std::string kind;
    std::string file;
    std::string out;
};

int cmdDot(const DotArgs& a) {
    try {
        std::string dot;
        if (a.kind == "datapath") {
            dot = rsim::datapathToDot(rsim::loadDatapathFile(a.file));
        } else if (a.kind == "fsm") {
            dot = rsim::fsmToDot(rsim::loadFsmFile(a.file));
        } else {
            dot = rsim::rtgToDot(rsim::loadRtgFile(a.file));
        }
        OutFile out(a.out.empty() ? "-" : a.out);
        out.stream() << dot;
    } catch (const rsim::Error& e) {
        printError(e.what());
        return kBadInput;
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Simulator and verification harness for reconfigurable-fabric designs"};
    app.require_subcommand(1);

    ValidateArgs va;
    CLI::App* validate = app.add_subcommand("validate", "Parse and check design files");
    validate->add_option("files", va.files, "Design files (datapath, fsm, or rtg XML)")
        ->required()
        ->expected(-1);

    SimArgs sa;
    CLI::App* sim = app.add_subcommand("sim", "Simulate one datapath+fsm configuration");
    sim->add_option("--datapath", sa.datapath, "Datapath XML file")->required();
    sim->add_option("--fsm", sa.fsm, "Controller XML file")->required();
    sim->add_option("--mem", sa.mems, "Preload memory: ID=FILE");
    sim->add_option("--in", sa.ins, "Drive an input operator: NAME=VALUE");
    sim->add_option("--probe", sa.probes, "Trace this signal instead of the default set");
    sim->add_option("--trace", sa.trace, "Write a CSV trace ('-' for stdout)");
    sim->add_option("--assert", sa.asserts, "Assertion file");
    sim->add_option("--max-cycles", sa.maxCycles, "Cycle budget");
    sim->add_option("--dump", sa.dumps, "Write a final memory image: ID=FILE");
    sim->add_flag("--stats", sa.stats, "Print evaluation statistics");

    RtgArgs ra;
    CLI::App* rtg = app.add_subcommand("run-rtg", "Execute a reconfiguration transition graph");
    rtg->add_option("--rtg", ra.rtg, "RTG XML file")->required();
    rtg->add_option("--shared", ra.shared, "Preload shared memory: ID=FILE");
    rtg->add_option("--dump-shared", ra.dumps, "Write a final shared image: ID=FILE");
    rtg->add_option("--trace", ra.trace, "Write a CSV trace ('-' for stdout)");
    rtg->add_option("--max-cycles", ra.maxCycles, "Cycle budget per activation");
    rtg->add_option("--max-reconfig", ra.maxReconfigs, "Activation limit");
    rtg->add_flag("--stats", ra.stats, "Print evaluation statistics");

    CheckArgs ca;
    CLI::App* check = app.add_subcommand("check", "Compare two memory image files");
    check->add_option("actual", ca.actual, "Actual image")->required();
    check->add_option("expected", ca.expected, "Expected image")->required();
    check->add_option("--width", ca.width, "Word width in bits")->required();
    check->add_option("--depth", ca.depth, "Number of words")->required();

    SuiteArgs ua;
    CLI::App* suite = app.add_subcommand("suite", "Run a verification suite manifest");
    suite->add_option("manifest", ua.manifest, "Suite XML manifest")->required();
    suite->add_option("--report", ua.report, "Write an XML report here");
    suite->add_option("--jobs", ua.jobs, "Worker threads (default: hardware concurrency)");

    DotArgs da;
    CLI::App* dot = app.add_subcommand("dot", "Export a Graphviz view");
    dot->add_option("kind", da.kind, "datapath | fsm | rtg")
        ->required()
        ->check(CLI::IsMember({"datapath", "fsm", "rtg"}));
    dot->add_option("file", da.file, "Design file")->required();
    dot->add_option("-o,--out", da.out, "Output file (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kBadInput;
    }

    try {
        if (*validate) return cmdValidate(va);
        if (*sim) return cmdSim(sa);
        if (*rtg) return cmdRunRtg(ra);
        if (*check) return cmdCheck(ca);
        if (*suite) return cmdSuite(ua);
        if (*dot) return cmdDot(da);
    } catch (const std::exception& e) {
        printError(e.what());
        return kBadInput;
    }
    return kBadInput;
}
