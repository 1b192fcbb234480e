#include "catch_amalgamated.hpp"

#include <string>

#include "rsim/dot.hpp"
#include "rsim/frontend.hpp"
#include "support/dot_check.hpp"

using namespace rsim;

TEST_CASE("datapath export: one node per element, one edge per connection") {
    DatapathSpec dp = loadDatapathFile(std::string(RSIM_CORPUS_DIR) + "/counter/datapath.xml");
    std::string text = datapathToDot(dp);
    dotcheck::Graph g = dotcheck::parseDot(text);

    CHECK(g.name == dp.name);
    CHECK(g.nodes.size() == dp.operators.size() + dp.controls.size() + dp.statuses.size());
    CHECK(g.edges.size() == dp.nets.size() + dp.statuses.size());

    // operators are boxes labeled "id : kind [width]"
    for (const auto& o : dp.operators) {
        const dotcheck::Node* n = g.node(o.id);
        REQUIRE(n != nullptr);
        CHECK(n->attrs.at("shape") == "box");
        CHECK(n->attrs.at("label") ==
              o.id + " : " + std::string(opKindName(o.kind)) + " [" + std::to_string(o.width) +
                  "]");
    }
    for (const auto& c : dp.controls) {
        const dotcheck::Node* n = g.node(c.name);
        REQUIRE(n != nullptr);
        CHECK(n->attrs.at("shape") == "house");
        CHECK(n->attrs.at("label") == c.name + " : control [" + std::to_string(c.width) + "]");
    }
    for (const auto& s : dp.statuses) {
        const dotcheck::Node* n = g.node(s.name);
        REQUIRE(n != nullptr);
        CHECK(n->attrs.at("shape") == "invhouse");
    }

    // each net becomes an owner->owner edge labeled with the sink port
    bool sawIncEdge = false;
    for (const auto& e : g.edges) {
        if (e.from == "cnt" && e.to == "inc" && e.attrs.count("label") &&
            e.attrs.at("label") == "a") {
            sawIncEdge = true;
        }
    }
    CHECK(sawIncEdge);

    // status links are plain edges from the driving operator
    bool sawStatusLink = false;
    for (const auto& e : g.edges) {
        if (e.to == dp.statuses[0].name && e.attrs.empty()) sawStatusLink = true;
    }
    CHECK(sawStatusLink);
}

TEST_CASE("fsm export marks reset and final states") {
    FsmSpec fsm = loadFsmFile(std::string(RSIM_CORPUS_DIR) + "/counter/fsm.xml");
    dotcheck::Graph g = dotcheck::parseDot(fsmToDot(fsm));

    CHECK(g.nodes.size() == fsm.states.size());
    size_t transitions = 0;
    for (const auto& st : fsm.states) transitions += st.transitions.size();
    CHECK(g.edges.size() == transitions);

    const dotcheck::Node* reset = g.node(fsm.resetState);
    REQUIRE(reset != nullptr);
    CHECK(reset->attrs.at("shape") == "doublecircle");

    for (const auto& st : fsm.states) {
        const dotcheck::Node* n = g.node(st.name);
        REQUIRE(n != nullptr);
        if (st.isFinal) {
            CHECK(n->attrs.at("label") ==
                  st.name + " : exit " + std::to_string(st.exitCode));
        } else {
            CHECK(n->attrs.at("label") == st.name);
            if (st.name != fsm.resetState) CHECK(n->attrs.at("shape") == "ellipse");
        }
    }
}

TEST_CASE("fsm transition edges carry guard text or else") {
    FsmSpec fsm = parseFsm(parseXml(R"(<fsm name="f" reset="A">
      <input name="x"/>
      <state name="A">
        <transition cond="x == 1" next="B"/>
        <transition next="A"/>
      </state>
      <state name="B" final="2"/>
    </fsm>)"));
    dotcheck::Graph g = dotcheck::parseDot(fsmToDot(fsm));
    REQUIRE(g.edges.size() == 2);
    CHECK(g.edges[0].from == "A");
    CHECK(g.edges[0].to == "B");
    CHECK(g.edges[0].attrs.at("label") == "x == 1");
    CHECK(g.edges[1].to == "A");
    CHECK(g.edges[1].attrs.at("label") == "else");
    CHECK(g.node("B")->attrs.at("label") == "B : exit 2");
}

TEST_CASE("rtg export: bold start, box shared memories, dashed binds") {
    RtgSpec rtg = loadRtgFile(std::string(RSIM_CORPUS_DIR) + "/butterfly/rtg.xml");
    dotcheck::Graph g = dotcheck::parseDot(rtgToDot(rtg));

    CHECK(g.nodes.size() == rtg.configurations.size() + rtg.sharedMemories.size());
    size_t binds = 0;
    for (const auto& sm : rtg.sharedMemories) binds += sm.binds.size();
    CHECK(g.edges.size() == rtg.edges.size() + binds);

    const dotcheck::Node* start = g.node(rtg.start);
    REQUIRE(start != nullptr);
    CHECK(start->attrs.at("style") == "bold");
    for (const auto& c : rtg.configurations) {
        if (c.id != rtg.start) {
            const dotcheck::Node* n = g.node(c.id);
            REQUIRE(n != nullptr);
            CHECK(n->attrs.empty());
        }
    }

    for (const auto& sm : rtg.sharedMemories) {
        const dotcheck::Node* n = g.node(sm.id);
        REQUIRE(n != nullptr);
        CHECK(n->attrs.at("shape") == "box");
        CHECK(n->attrs.at("label") ==
              sm.id + " [" + std::to_string(sm.width) + "x" + std::to_string(sm.depth) + "]");
    }

    bool sawGuard = false, sawBind = false;
    for (const auto& e : g.edges) {
        if (e.from == "rows" && e.to == "cols") {
            CHECK(e.attrs.at("label") == "exit == 0");
            sawGuard = true;
        }
        if (e.from == "img_in" && e.to == "rows") {
            CHECK(e.attrs.at("style") == "dashed");
            CHECK(e.attrs.at("label") == "min");
            sawBind = true;
        }
    }
    CHECK(sawGuard);
    CHECK(sawBind);
}

TEST_CASE("labels with quotes survive quoting") {
    DatapathSpec dp;
    dp.name = "odd \"name\"";
    OperatorDecl od;
    od.id = "k";
    od.kind = OpKind::Const;
    od.width = 4;
    dp.operators.push_back(od);
    dotcheck::Graph g = dotcheck::parseDot(datapathToDot(dp));
    CHECK(g.name == "odd \"name\"");
    REQUIRE(g.nodes.size() == 1);
    CHECK(g.nodes[0].attrs.at("label") == "k : const [4]");
}

TEST_CASE("every corpus design renders parseable dot") {
    const std::string base = RSIM_CORPUS_DIR;
    for (const char* rel : {"/counter/datapath.xml", "/hamming/datapath.xml",
                            "/butterfly/single.xml", "/butterfly/rows.xml",
                            "/butterfly/cols.xml"}) {
        DatapathSpec dp = loadDatapathFile(base + rel);
        CHECK_NOTHROW(dotcheck::parseDot(datapathToDot(dp)));
    }
    for (const char* rel : {"/counter/fsm.xml", "/hamming/fsm.xml",
                            "/butterfly/single_fsm.xml"}) {
        FsmSpec fsm = loadFsmFile(base + rel);
        CHECK_NOTHROW(dotcheck::parseDot(fsmToDot(fsm)));
    }
    CHECK_NOTHROW(dotcheck::parseDot(rtgToDot(loadRtgFile(base + "/butterfly/rtg.xml"))));
}
