#include "catch_amalgamated.hpp"

#include <string>

#include "rsim/suite.hpp"
#include "support/tempdir.hpp"

using namespace rsim;

namespace {
template <class Fn>
Err codeOf(Fn&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an Error");
    return Err::FileError;  // unreachable
}

SuiteSpec suiteFrom(const char* text) { return parseSuite(parseXml(text)); }
}  // namespace

TEST_CASE("manifest parsing") {
    SuiteSpec s = suiteFrom(R"(<suite name="all">
      <test name="a" datapath="dp.xml" fsm="fsm.xml" max-cycles="500"
            expect="assertion-failed" expect-cycle="11">
        <mem id="m" file="in.mem"/>
        <in name="x" value="42"/>
        <assert file="checks.asserts"/>
        <golden id="m" file="want.mem"/>
      </test>
      <test name="b" rtg="graph.xml" max-reconfig="7" expect-exit="3">
        <shared id="buf" file="seed.mem"/>
      </test>
    </suite>)");
    CHECK(s.name == "all");
    REQUIRE(s.tests.size() == 2);

    const SuiteTest& a = s.tests[0];
    CHECK_FALSE(a.isRtg());
    CHECK(a.maxCycles == 500);
    CHECK(a.expect == "assertion-failed");
    REQUIRE(a.expectCycle.has_value());
    CHECK(*a.expectCycle == 11);
    REQUIRE(a.mems.size() == 1);
    CHECK(a.mems[0].id == "m");
    REQUIRE(a.inputs.size() == 1);
    CHECK(a.inputs[0].second == 42);
    REQUIRE(a.assertFiles.size() == 1);
    REQUIRE(a.goldens.size() == 1);

    const SuiteTest& b = s.tests[1];
    CHECK(b.isRtg());
    CHECK(b.maxReconfigs == 7);
    CHECK(b.expectExit == 3);
    REQUIRE(b.mems.size() == 1);
    CHECK(b.mems[0].id == "buf");
}

TEST_CASE("manifest schema violations") {
    CHECK(codeOf([] { suiteFrom(R"(<suite name="s"><test name="t"/></suite>)"); }) ==
          Err::BadAttribute);  // neither datapath+fsm nor rtg
    CHECK(codeOf([] {
              suiteFrom(R"(<suite name="s"><test name="t" datapath="d.xml"/></suite>)");
          }) == Err::BadAttribute);  // datapath without fsm
    CHECK(codeOf([] {
              suiteFrom(R"(<suite name="s">
                <test name="t" rtg="g.xml" datapath="d.xml" fsm="f.xml"/></suite>)");
          }) == Err::BadAttribute);  // both at once
    CHECK(codeOf([] {
              suiteFrom(R"(<suite name="s"><test name="t" datapath="d" fsm="f" expect="maybe"/></suite>)");
          }) == Err::BadAttribute);
    CHECK(codeOf([] {
              suiteFrom(R"(<suite name="s"><test name="t" datapath="d" fsm="f"/>
                           <test name="t" datapath="d" fsm="f"/></suite>)");
          }) == Err::DuplicateId);
    CHECK(codeOf([] {
              suiteFrom(R"(<suite name="s"><test name="t" rtg="g.xml">
                           <in name="x" value="1"/></test></suite>)");
          }) == Err::UnknownElement);  // <in> is datapath-only
    CHECK(codeOf([] {
              suiteFrom(R"(<suite name="s"><test name="t" datapath="d" fsm="f">
                           <shared id="b" file="x"/></test></suite>)");
          }) == Err::UnknownElement);  // <shared> is rtg-only
}

TEST_CASE("the corpus suite passes end to end") {
    const std::string manifest = std::string(RSIM_CORPUS_DIR) + "/suite.xml";
    SuiteSpec spec = loadSuiteFile(manifest);
    SuiteOutcome out = runSuite(spec, RSIM_CORPUS_DIR, 2);
    CHECK(out.allPassed());
    for (const auto& t : out.tests) {
        INFO(t.name << ": " << t.detail);
        CHECK(t.passed);
        CHECK(t.cycles > 0);
    }
}

TEST_CASE("outcome checking distinguishes failure modes") {
    testutil::TempDir dir;
    dir.write("dp.xml", R"(<datapath name="d">
      <control name="cen" width="1"/>
      <status name="done" width="1" from="sd.out"/>
      <operator id="c1" kind="const" width="4" value="1"/>
      <operator id="c9" kind="const" width="4" value="9"/>
      <operator id="cnt" kind="reg" width="4"/>
      <operator id="inc" kind="add" width="4"/>
      <operator id="sd" kind="eq" width="4"/>
      <net from="cnt.q" to="inc.a"/>
      <net from="c1.out" to="inc.b"/>
      <net from="inc.out" to="cnt.d"/>
      <net from="cen" to="cnt.en"/>
      <net from="cnt.q" to="sd.a"/>
      <net from="c9.out" to="sd.b"/>
    </datapath>)");
    dir.write("fsm.xml", R"(<fsm name="ctl" reset="RUN">
      <input name="done"/>
      <output name="cen" width="1"/>
      <state name="RUN">
        <assign output="cen" value="1"/>
        <transition cond="done == 1" next="HALT"/>
      </state>
      <state name="HALT" final="0"/>
    </fsm>)");
    dir.write("bad.asserts", "always cnt.q <= 5\n");

    // wrong expected exit code
    std::string manifest = dir.write("suite.xml", R"(<suite name="s">
      <test name="wrong_exit" datapath="dp.xml" fsm="fsm.xml" expect-exit="7"/>
      <test name="trips" datapath="dp.xml" fsm="fsm.xml"
            expect="assertion-failed" expect-cycle="6">
        <assert file="bad.asserts"/>
      </test>
      <test name="wrong_cycle" datapath="dp.xml" fsm="fsm.xml"
            expect="assertion-failed" expect-cycle="9">
        <assert file="bad.asserts"/>
      </test>
      <test name="missing_design" datapath="ghost.xml" fsm="fsm.xml"/>
    </suite>)");

    SuiteOutcome out = runSuite(loadSuiteFile(manifest), dir.path().string());
    REQUIRE(out.tests.size() == 4);
    CHECK_FALSE(out.tests[0].passed);
    CHECK(out.tests[0].detail.find("expected exit 7") != std::string::npos);
    CHECK(out.tests[1].passed);  // assertion trips at cycle 6 as demanded
    CHECK_FALSE(out.tests[2].passed);
    CHECK(out.tests[2].detail.find("cycle") != std::string::npos);
    CHECK_FALSE(out.tests[3].passed);
    CHECK(out.tests[3].detail.find("error:") != std::string::npos);
    CHECK(out.failCount() == 3);
    CHECK_FALSE(out.allPassed());
}

TEST_CASE("golden comparison failures name the differing cells") {
    testutil::TempDir dir;
    dir.write("dp.xml", R"(<datapath name="d">
      <control name="wen" width="1"/>
      <operator id="a0" kind="const" width="1"/>
      <operator id="v" kind="const" width="8" value="5"/>
      <operator id="m" kind="mem" width="8" depth="2"/>
      <net from="a0" to="m.addr"/>
      <net from="v" to="m.din"/>
      <net from="wen" to="m.we"/>
    </datapath>)");
    dir.write("fsm.xml", R"(<fsm name="ctl" reset="W">
      <output name="wen" width="1"/>
      <state name="W">
        <assign output="wen" value="1"/>
        <transition next="F"/>
      </state>
      <state name="F" final="0"/>
    </fsm>)");
    dir.write("right.mem", "05 00\n");
    dir.write("wrong.mem", "06 00\n");
    std::string manifest = dir.write("suite.xml", R"(<suite name="s">
      <test name="good" datapath="dp.xml" fsm="fsm.xml">
        <golden id="m" file="right.mem"/>
      </test>
      <test name="bad" datapath="dp.xml" fsm="fsm.xml">
        <golden id="m" file="wrong.mem"/>
      </test>
      <test name="ghost" datapath="dp.xml" fsm="fsm.xml">
        <golden id="nosuch" file="right.mem"/>
      </test>
    </suite>)");

    SuiteOutcome out = runSuite(loadSuiteFile(manifest), dir.path().string());
    REQUIRE(out.tests.size() == 3);
    CHECK(out.tests[0].passed);
    CHECK_FALSE(out.tests[1].passed);
    CHECK(out.tests[1].detail.find("differs from golden") != std::string::npos);
    CHECK(out.tests[1].detail.find("0x") != std::string::npos);
    CHECK_FALSE(out.tests[2].passed);
}

TEST_CASE("report xml carries status, cycles, and timing per test") {
    SuiteOutcome out;
    out.name = "demo";
    out.tests.push_back({"first", true, "finished in 11 cycle(s)", 11, 0.0025});
    out.tests.push_back({"second", false, "expected exit 1, got 0", 4, 0.001});
    std::string xml = suiteReportXml(out);

    XmlNode root = parseXml(xml);
    CHECK(root.tag == "report");
    CHECK(root.findAttr("suite")->value == "demo");
    CHECK(root.findAttr("passed")->value == "1");
    CHECK(root.findAttr("failed")->value == "1");
    REQUIRE(root.children.size() == 2);
    CHECK(root.children[0].findAttr("name")->value == "first");
    CHECK(root.children[0].findAttr("status")->value == "pass");
    CHECK(root.children[0].findAttr("cycles")->value == "11");
    CHECK(root.children[0].findAttr("wall-ms")->value == "2.500");
    CHECK(root.children[1].findAttr("status")->value == "fail");
    CHECK(root.children[1].findAttr("detail")->value == "expected exit 1, got 0");
}

TEST_CASE("parallel and serial runs agree") {
    const std::string manifest = std::string(RSIM_CORPUS_DIR) + "/suite.xml";
    SuiteSpec spec = loadSuiteFile(manifest);
    SuiteOutcome serial = runSuite(spec, RSIM_CORPUS_DIR, 1);
    SuiteOutcome parallel = runSuite(spec, RSIM_CORPUS_DIR, 8);
    REQUIRE(serial.tests.size() == parallel.tests.size());
    for (size_t i = 0; i < serial.tests.size(); ++i) {
        CHECK(serial.tests[i].name == parallel.tests[i].name);
        CHECK(serial.tests[i].passed == parallel.tests[i].passed);
        CHECK(serial.tests[i].cycles == parallel.tests[i].cycles);
        CHECK(serial.tests[i].detail == parallel.tests[i].detail);
    }
}
