#include "catch_amalgamated.hpp"

#include "rsim/memfile.hpp"
#include "support/tempdir.hpp"

using namespace rsim;

TEST_CASE("words load sequentially from zero") {
    MemoryImage img = parseMemText("0 1 a ff", 8, 8);
    CHECK(img.words == std::vector<uint64_t>{0, 1, 0xa, 0xff, 0, 0, 0, 0});
}

TEST_CASE("address directives reposition the cursor") {
    MemoryImage img = parseMemText("@4 de ad @1 7", 8, 8);
    CHECK(img.words == std::vector<uint64_t>{0, 7, 0, 0, 0xde, 0xad, 0, 0});
    // an address exactly at depth is a valid resting point as long as
    // nothing is written there
    CHECK_NOTHROW(parseMemText("@8", 8, 8));
}

TEST_CASE("comments and mixed whitespace are ignored") {
    MemoryImage img = parseMemText("// header\n 1\t2 // tail\n\r\n3", 4, 4);
    CHECK(img.words == std::vector<uint64_t>{1, 2, 3, 0});
}

TEST_CASE("upper-case hex loads, dump is canonical lower-case") {
    MemoryImage img = parseMemText("DE AD BE EF", 8, 4);
    CHECK(img.words == std::vector<uint64_t>{0xde, 0xad, 0xbe, 0xef});
    CHECK(dumpMemText(img) == "de ad be ef\n");
}

TEST_CASE("dump wraps at sixteen words per line and pads to width") {
    MemoryImage img = makeImage(12, 17);
    img.words[0] = 0xabc;
    img.words[16] = 0x5;
    std::string text = dumpMemText(img);
    CHECK(text == "abc 000 000 000 000 000 000 000 000 000 000 000 000 000 000 000\n005\n");
}

TEST_CASE("dump then load round-trips exactly") {
    MemoryImage img = makeImage(7, 100);
    for (uint64_t i = 0; i < img.depth; ++i) img.words[i] = (i * 37 + 5) & 0x7f;
    MemoryImage back = parseMemText(dumpMemText(img), img.width, img.depth);
    CHECK(back.words == img.words);
}

namespace {
void expectLoadError(const char* text, Err code, int width = 8, uint64_t depth = 8) {
    try {
        parseMemText(text, width, depth);
        FAIL("expected a parse error for: " << text);
    } catch (const Error& e) {
        CHECK(e.code() == code);
    }
}
}  // namespace

TEST_CASE("malformed image text is rejected") {
    expectLoadError("zz", Err::BadToken);
    expectLoadError("1g", Err::BadToken);
    expectLoadError("@", Err::BadToken);
    expectLoadError("@xyz", Err::BadToken);
    expectLoadError("@1x", Err::BadToken);
    expectLoadError("100", Err::WordExceedsWidth);                // 0x100 > 8 bits
    expectLoadError("0 0 0 0 0 0 0 0 0", Err::AddressBeyondDepth);
    expectLoadError("@9 1", Err::AddressBeyondDepth);
    expectLoadError("@8 1", Err::AddressBeyondDepth);             // cursor at end
    expectLoadError("11112222333344445", Err::WordExceedsWidth);  // >16 digits
}

TEST_CASE("errors carry position information") {
    try {
        parseMemText("0 1\n2 zz", 8, 8);
        FAIL("expected a parse error");
    } catch (const Error& e) {
        CHECK(e.pos().line == 2);
        CHECK(e.pos().col == 3);
    }
}

TEST_CASE("file round-trip through the filesystem") {
    testutil::TempDir dir;
    MemoryImage img = makeImage(16, 20);
    for (uint64_t i = 0; i < img.depth; ++i) img.words[i] = i * 0x111;
    std::string path = dir.write("image.mem", dumpMemText(img));
    MemoryImage back = loadMemFile(path, 16, 20);
    CHECK(back.words == img.words);

    CHECK_THROWS_AS(loadMemFile((dir.path() / "missing.mem").string(), 8, 8), Error);
}

TEST_CASE("comparison reports mismatches and truncates long lists") {
    MemoryImage a = makeImage(8, 64);
    MemoryImage b = makeImage(8, 64);
    CHECK(compareImages(a, b).ok());

    b.words[3] = 9;
    MismatchReport r = compareImages(a, b);
    CHECK(r.total == 1);
    REQUIRE(r.entries.size() == 1);
    CHECK(r.entries[0].address == 3);
    CHECK(r.entries[0].actual == 0);
    CHECK(r.entries[0].expected == 9);
    CHECK_FALSE(r.truncated());

    for (uint64_t i = 0; i < 40; ++i) b.words[i] = 1;
    MismatchReport big = compareImages(a, b);
    CHECK(big.total == 40);
    CHECK(big.entries.size() == MismatchReport::kMaxEntries);
    CHECK(big.truncated());

    MemoryImage narrow = makeImage(4, 64);
    CHECK_THROWS_AS(compareImages(a, narrow), Error);
}
