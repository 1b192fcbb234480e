#pragma once
// Verification suite: an XML manifest lists tests, each binding a design to
// stimulus files, assertions, an expected outcome, and golden memory images.
// Tests are independent, so the runner can spread them across worker threads;
// the report always comes back in manifest order.

#include <atomic>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "rsim/diag.hpp"
#include "rsim/frontend.hpp"
#include "rsim/rtg.hpp"
#include "rsim/sim.hpp"

namespace rsim {

struct SuiteMemInit {
    std::string id;    // mem operator id, or shared memory id for RTG tests
    std::string file;  // relative to the manifest
    SourcePos pos;
};

struct SuiteTest {
    std::string name;
    std::string datapath;  // datapath+fsm test …
    std::string fsm;
    std::string rtg;       // … or an RTG test
    uint64_t maxCycles = 1000000;
    uint64_t maxReconfigs = kDefaultReconfigLimit;
    std::string expect = "finished";
    int expectExit = 0;
    std::optional<uint64_t> expectCycle;  // required fault/assertion cycle
    std::vector<SuiteMemInit> mems;
    std::vector<std::pair<std::string, uint64_t>> inputs;
    std::vector<std::string> assertFiles;
    std::vector<SuiteMemInit> goldens;
    SourcePos pos;

    bool isRtg() const { return !rtg.empty(); }
};

struct SuiteSpec {
    std::string name;
    std::vector<SuiteTest> tests;
};

inline SuiteSpec parseSuite(const XmlNode& root) {
    if (root.tag != "suite") {
        throw Error(Err::UnknownElement, "expected <suite>, got <" + root.tag + ">", root.pos);
    }
    detail::Attrs ra(root);
    SuiteSpec suite;
    suite.name = ra.reqIdent("name");
    ra.done();

    std::unordered_set<std::string> testNames;
    static const std::unordered_set<std::string> kExpects = {
        "finished", "assertion-failed", "max-cycles", "fault", "reconfig-limit"};

    for (const XmlNode& child : root.children) {
        if (child.tag != "test") {
            throw Error(Err::UnknownElement, "unexpected <" + child.tag + "> in <suite>",
                        child.pos);
        }
        detail::Attrs a(child);
        SuiteTest t;
        t.pos = child.pos;
        t.name = a.reqIdent("name");
        if (!testNames.insert(t.name).second) {
            throw Error(Err::DuplicateId, "duplicate test '" + t.name + "'", child.pos);
        }
        if (auto v = a.opt("datapath")) t.datapath = *v;
        if (auto v = a.opt("fsm")) t.fsm = *v;
        if (auto v = a.opt("rtg")) t.rtg = *v;
        bool hasDp = !t.datapath.empty() || !t.fsm.empty();
        if (t.rtg.empty() == !hasDp) {
            throw Error(Err::BadAttribute,
                        "test '" + t.name + "' needs either datapath+fsm or rtg", child.pos);
        }
        if (hasDp && (t.datapath.empty() || t.fsm.empty())) {
            throw Error(Err::BadAttribute,
                        "test '" + t.name + "' needs both datapath and fsm", child.pos);
        }
        t.maxCycles = a.optNum("max-cycles", 1, ~0ull, 1000000);
        t.maxReconfigs = a.optNum("max-reconfig", 1, ~0ull, kDefaultReconfigLimit);
        if (auto v = a.opt("expect")) {
            if (!kExpects.count(*v)) {
                throw Error(Err::BadAttribute, "unknown expect '" + *v + "'", a.posOf("expect"));
            }
            t.expect = *v;
        }
        t.expectExit = static_cast<int>(a.optNum("expect-exit", 0, 255, 0));
        if (a.opt("expect-cycle")) t.expectCycle = a.optNum("expect-cycle", 0, ~0ull, 0);
        a.done();

        for (const XmlNode& item : child.children) {
            detail::Attrs ia(item);
            if (item.tag == "mem" || item.tag == "shared") {
                bool wantRtg = item.tag == "shared";
                if (wantRtg != t.isRtg()) {
                    throw Error(Err::UnknownElement,
                                wantRtg ? "<shared> only applies to rtg tests"
                                        : "<mem> only applies to datapath tests",
                                item.pos);
                }
                SuiteMemInit mi;
                mi.pos = item.pos;
                mi.id = ia.reqIdent("id");
                mi.file = ia.req("file");
                ia.done();
                detail::expectNoChildren(item);
                t.mems.push_back(std::move(mi));
            } else if (item.tag == "in") {
                if (t.isRtg()) {
                    throw Error(Err::UnknownElement, "<in> only applies to datapath tests",
                                item.pos);
                }
                std::string name = ia.reqIdent("name");
                uint64_t value = ia.reqNum("value", 0, ~0ull);
                ia.done();
                detail::expectNoChildren(item);
                t.inputs.emplace_back(std::move(name), value);
            } else if (item.tag == "assert") {
                if (t.isRtg()) {
                    throw Error(Err::UnknownElement, "<assert> only applies to datapath tests",
                                item.pos);
                }
                t.assertFiles.push_back(ia.req("file"));
                ia.done();
                detail::expectNoChildren(item);
            } else if (item.tag == "golden") {
                SuiteMemInit g;
                g.pos = item.pos;
                g.id = ia.reqIdent("id");
                g.file = ia.req("file");
                ia.done();
                detail::expectNoChildren(item);
                t.goldens.push_back(std::move(g));
            } else {
                throw Error(Err::UnknownElement, "unexpected <" + item.tag + "> in <test>",
                            item.pos);
            }
        }
        suite.tests.push_back(std::move(t));
    }
    return suite;
}

inline SuiteSpec loadSuiteFile(const std::string& path) {
    return detail::loadSpecFile(path, [](const XmlNode& n) { return parseSuite(n); });
}

// --- runner -------------------------------------------------------------------

struct TestOutcome {
    std::string name;
    bool passed = false;
    std::string detail;
    uint64_t cycles = 0;  // total simulated cycles (all activations for rtg tests)
    double wallSeconds = 0;
};

struct SuiteOutcome {
    std::string name;
    std::vector<TestOutcome> tests;

    size_t failCount() const {
        size_t n = 0;
        for (const auto& t : tests) n += t.passed ? 0 : 1;
        return n;
    }
    bool allPassed() const { return failCount() == 0; }
};

namespace detail {

inline std::string describeMismatch(const std::string& id, const MismatchReport& rep) {
    std::string out = "memory '" + id + "' differs from golden in " + std::to_string(rep.total) +
                      " cell(s):";
    size_t shown = std::min<size_t>(rep.entries.size(), 3);
    for (size_t i = 0; i < shown; ++i) {
        const auto& e = rep.entries[i];
        out += " [0x" + hexWord(e.address, 64) + "]=0x" + hexWord(e.actual, 64) + " want 0x" +
               hexWord(e.expected, 64);
    }
    if (rep.total > shown) out += " …";
    return out;
}

// Declared shape of a memory operator, for loading stimulus/golden files.
inline const OperatorDecl* findMemDecl(const Model& m, const std::string& id) {
    for (int i : m.memOps) {
        if (m.ops[static_cast<size_t>(i)].decl.id == id) {
            return &m.ops[static_cast<size_t>(i)].decl;
        }
    }
    return nullptr;
}

inline std::string checkResult(const SuiteTest& t, const std::string& got, int gotExit,
                               std::optional<uint64_t> gotCycle) {
    if (got != t.expect) {
        return "expected outcome '" + t.expect + "', got '" + got + "'";
    }
    if (t.expect == "finished" && gotExit != t.expectExit) {
        return "expected exit " + std::to_string(t.expectExit) + ", got " +
               std::to_string(gotExit);
    }
    if (t.expectCycle && (!gotCycle || *gotCycle != *t.expectCycle)) {
        return "expected failure at cycle " + std::to_string(*t.expectCycle) + ", got " +
               (gotCycle ? std::to_string(*gotCycle) : std::string("none"));
    }
    return "";
}

inline TestOutcome runDatapathTest(const SuiteTest& t, const std::filesystem::path& base) {
    namespace fs = std::filesystem;
    TestOutcome out;
    out.name = t.name;
    fs::path dpPath = base / t.datapath;
    Model model = elaborate(loadDatapathFile(dpPath.string()),
                            loadFsmFile((base / t.fsm).string()));
    Simulator sim(model, dpPath.parent_path().string());
    for (const auto& mi : t.mems) {
        const OperatorDecl* d = findMemDecl(model, mi.id);
        if (!d) {
            throw Error(Err::DanglingReference, "test references unknown memory '" + mi.id + "'",
                        mi.pos);
        }
        sim.setMemImage(mi.id, loadMemFile((base / mi.file).string(), d->width, d->depth));
    }
    for (const auto& [name, value] : t.inputs) sim.setInput(name, value);
    std::vector<Assertion> asserts;
    for (const auto& f : t.assertFiles) {
        auto more = loadAssertFile((base / f).string());
        asserts.insert(asserts.end(), more.begin(), more.end());
    }
    RunOptions opt;
    opt.maxCycles = t.maxCycles;
    if (!asserts.empty()) opt.assertions = &asserts;
    SimResult r = sim.run(opt);

    std::optional<uint64_t> gotCycle;
    if (r.status == SimStatus::AssertionFailed || r.status == SimStatus::Fault) {
        gotCycle = r.faultCycle;
    }
    std::string problem = checkResult(t, simStatusName(r.status), r.exitCode, gotCycle);
    if (problem.empty()) {
        for (const auto& g : t.goldens) {
            const OperatorDecl* d = findMemDecl(model, g.id);
            if (!d) {
                throw Error(Err::DanglingReference,
                            "golden references unknown memory '" + g.id + "'", g.pos);
            }
            MemoryImage want = loadMemFile((base / g.file).string(), d->width, d->depth);
            MismatchReport rep = compareImages(sim.memImage(g.id), want);
            if (!rep.ok()) {
                problem = describeMismatch(g.id, rep);
                break;
            }
        }
    }
    out.passed = problem.empty();
    out.cycles = r.cycles;
    out.detail = out.passed ? std::string(simStatusName(r.status)) + " in " +
                                  std::to_string(r.cycles) + " cycle(s)"
                            : problem + (r.message.empty() ? "" : " (" + r.message + ")");
    return out;
}

inline TestOutcome runRtgTest(const SuiteTest& t, const std::filesystem::path& base) {
    TestOutcome out;
    out.name = t.name;
    RtgEngine engine = RtgEngine::fromFile((base / t.rtg).string());
    for (const auto& mi : t.mems) {
        int width = 0;
        uint64_t depth = 0;
        for (const auto& sm : engine.spec().sharedMemories) {
            if (sm.id == mi.id) {
                width = sm.width;
                depth = sm.depth;
            }
        }
        if (width == 0) {
            throw Error(Err::DanglingReference,
                        "test references unknown shared memory '" + mi.id + "'", mi.pos);
        }
        engine.setSharedImage(mi.id, loadMemFile((base / mi.file).string(), width, depth));
    }
    RtgRunOptions opt;
    opt.maxCycles = t.maxCycles;
    opt.maxReconfigs = t.maxReconfigs;
    RtgResult r = engine.run(opt);

    std::string got;
    int gotExit = 0;
    std::optional<uint64_t> gotCycle;
    switch (r.status) {
    case RtgStatus::Completed:
        got = "finished";
        gotExit = r.lastExit;
        break;
    case RtgStatus::ReconfigLimit: got = "reconfig-limit"; break;
    case RtgStatus::PropagatedFault: {
        const SimResult& last = r.path.back().result;
        got = simStatusName(last.status);
        if (last.status == SimStatus::AssertionFailed || last.status == SimStatus::Fault) {
            gotCycle = last.faultCycle;
        }
        break;
    }
    }
    std::string problem = checkResult(t, got, gotExit, gotCycle);
    if (problem.empty()) {
        for (const auto& g : t.goldens) {
            int width = 0;
            uint64_t depth = 0;
            for (const auto& sm : engine.spec().sharedMemories) {
                if (sm.id == g.id) {
                    width = sm.width;
                    depth = sm.depth;
                }
            }
            if (width == 0) {
                throw Error(Err::DanglingReference,
                            "golden references unknown shared memory '" + g.id + "'", g.pos);
            }
            MemoryImage want = loadMemFile((base / g.file).string(), width, depth);
            MismatchReport rep = compareImages(engine.sharedImage(g.id), want);
            if (!rep.ok()) {
                problem = describeMismatch(g.id, rep);
                break;
            }
        }
    }
    out.passed = problem.empty();
    for (const auto& step : r.path) out.cycles += step.result.cycles;
    out.detail = out.passed
                     ? rtgStatusName(r.status) + std::string(" after ") +
                           std::to_string(r.path.size()) + " activation(s)"
                     : problem + (r.message.empty() ? "" : " (" + r.message + ")");
    return out;
}

}  // namespace detail

inline TestOutcome runSuiteTest(const SuiteTest& t, const std::string& baseDir) {
    auto t0 = std::chrono::steady_clock::now();
    TestOutcome out;
    try {
        std::filesystem::path base(baseDir);
        out = t.isRtg() ? detail::runRtgTest(t, base) : detail::runDatapathTest(t, base);
    } catch (const Error& e) {
        out = {t.name, false, std::string("error: ") + e.what(), 0, 0};
    } catch (const std::exception& e) {
        out = {t.name, false, std::string("error: ") + e.what(), 0, 0};
    }
    out.wallSeconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

inline SuiteOutcome runSuite(const SuiteSpec& suite, const std::string& baseDir, int jobs = 1) {
    SuiteOutcome out;
    out.name = suite.name;
    out.tests.resize(suite.tests.size());
    if (jobs < 1) jobs = 1;
    jobs = std::min<int>(jobs, static_cast<int>(suite.tests.size()) > 0
                                   ? static_cast<int>(suite.tests.size())
                                   : 1);
    if (jobs == 1) {
        for (size_t i = 0; i < suite.tests.size(); ++i) {
            out.tests[i] = runSuiteTest(suite.tests[i], baseDir);
        }
        return out;
    }
    std::atomic<size_t> next{0};
    std::vector<std::thread> workers;
    workers.reserve(static_cast<size_t>(jobs));
    for (int w = 0; w < jobs; ++w) {
        workers.emplace_back([&]() {
            while (true) {
                size_t i = next.fetch_add(1);
                if (i >= suite.tests.size()) return;
                out.tests[i] = runSuiteTest(suite.tests[i], baseDir);
            }
        });
    }
    for (auto& w : workers) w.join();
    return out;
}

inline std::string suiteReportXml(const SuiteOutcome& out) {
    std::string xml = "<report";
    detail::attr(xml, "suite", out.name);
    detail::attr(xml, "passed", static_cast<uint64_t>(out.tests.size() - out.failCount()));
    detail::attr(xml, "failed", static_cast<uint64_t>(out.failCount()));
    xml += ">\n";
    for (const auto& t : out.tests) {
        xml += "  <test";
        detail::attr(xml, "name", t.name);
        detail::attr(xml, "status", t.passed ? "pass" : "fail");
        detail::attr(xml, "cycles", t.cycles);
        char ms[32];
        std::snprintf(ms, sizeof ms, "%.3f", t.wallSeconds * 1000.0);
        detail::attr(xml, "wall-ms", ms);
        detail::attr(xml, "detail", t.detail);
        xml += "/>\n";
    }
    xml += "</report>\n";
    return xml;
}

}  // namespace rsim
