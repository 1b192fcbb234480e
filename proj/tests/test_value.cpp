#include "catch_amalgamated.hpp"

#include "rsim/value.hpp"

using namespace rsim;

TEST_CASE("maskFor covers 1..64 bits") {
    CHECK(maskFor(1) == 0x1ull);
    CHECK(maskFor(4) == 0xfull);
    CHECK(maskFor(7) == 0x7full);
    CHECK(maskFor(63) == 0x7fffffffffffffffull);
    CHECK(maskFor(64) == ~0ull);
}

TEST_CASE("fitsWidth") {
    CHECK(fitsWidth(0, 1));
    CHECK(fitsWidth(1, 1));
    CHECK_FALSE(fitsWidth(2, 1));
    CHECK(fitsWidth(255, 8));
    CHECK_FALSE(fitsWidth(256, 8));
    CHECK(fitsWidth(~0ull, 64));
}

TEST_CASE("ceilLog2") {
    CHECK(ceilLog2(1) == 0);
    CHECK(ceilLog2(2) == 1);
    CHECK(ceilLog2(3) == 2);
    CHECK(ceilLog2(4) == 2);
    CHECK(ceilLog2(5) == 3);
    CHECK(ceilLog2(128) == 7);
    CHECK(ceilLog2(129) == 8);
    CHECK(ceilLog2(1ull << 32) == 32);
}

TEST_CASE("toSigned sign-extends at the given width") {
    CHECK(toSigned(0x7f, 8) == 127);
    CHECK(toSigned(0x80, 8) == -128);
    CHECK(toSigned(0xff, 8) == -1);
    CHECK(toSigned(1, 1) == -1);
    CHECK(toSigned(0, 1) == 0);
    CHECK(toSigned(~0ull, 64) == -1);
}

TEST_CASE("hexWord pads to the hex width of the signal") {
    CHECK(hexWord(0, 1) == "0");
    CHECK(hexWord(10, 4) == "a");
    CHECK(hexWord(10, 5) == "0a");
    CHECK(hexWord(0x1a, 7) == "1a");
    CHECK(hexWord(0xbeef, 16) == "beef");
    CHECK(hexWord(1, 64) == "0000000000000001");
}

TEST_CASE("parseNumber handles decimal and hex") {
    CHECK(parseNumber("0") == 0ull);
    CHECK(parseNumber("42") == 42ull);
    CHECK(parseNumber("0x2a") == 42ull);
    CHECK(parseNumber("0X2A") == 42ull);
    CHECK(parseNumber("18446744073709551615") == ~0ull);
    CHECK(parseNumber("0xffffffffffffffff") == ~0ull);
}

TEST_CASE("parseNumber rejects junk and overflow") {
    CHECK_FALSE(parseNumber(""));
    CHECK_FALSE(parseNumber("x"));
    CHECK_FALSE(parseNumber("12a"));
    CHECK_FALSE(parseNumber("0x"));
    CHECK_FALSE(parseNumber("0xg"));
    CHECK_FALSE(parseNumber("-1"));
    CHECK_FALSE(parseNumber("18446744073709551616"));
    CHECK_FALSE(parseNumber("0x10000000000000000"));
}
