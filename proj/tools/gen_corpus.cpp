// Regenerates the committed stimulus and golden files under designs/ from the
// reference models. Run from the repository root (or pass the designs dir).

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "rsim/memfile.hpp"
#include "support/oracles.hpp"

namespace fs = std::filesystem;

namespace {

const oracle::Image16 kButterflyInput = {
    12, 7, 250, 3, 0, 255, 8, 8, 100, 50, 25, 12, 1, 2, 3, 4,
};

void writeImage(const fs::path& path, const rsim::MemoryImage& img) {
    rsim::dumpMemFile(path.string(), img);
    std::printf("wrote %s\n", path.string().c_str());
}

void writeText(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
    std::printf("wrote %s\n", path.string().c_str());
}

}  // namespace

int main(int argc, char** argv) {
    fs::path root = argc > 1 ? argv[1] : "designs";
    fs::create_directories(root / "hamming");
    fs::create_directories(root / "butterfly");
    fs::create_directories(root / "counter");

    // hamming: every 7-bit word as input, corrected data nibble as golden
    rsim::MemoryImage hin = rsim::makeImage(7, 128);
    rsim::MemoryImage hout = rsim::makeImage(7, 128);
    for (uint64_t w = 0; w < 128; ++w) {
        hin.words[w] = w;
        hout.words[w] = oracle::hammingDecode(static_cast<uint32_t>(w));
    }
    writeImage(root / "hamming" / "input.mem", hin);
    writeImage(root / "hamming" / "golden.mem", hout);

    // butterfly: fixed 4x4 image of byte values, row then column pass
    rsim::MemoryImage bin = rsim::makeImage(16, 16);
    rsim::MemoryImage bout = rsim::makeImage(16, 16);
    oracle::Image16 expect = oracle::butterflyFull(kButterflyInput);
    for (size_t i = 0; i < 16; ++i) {
        bin.words[i] = kButterflyInput[i];
        bout.words[i] = expect[i];
    }
    writeImage(root / "butterfly" / "input.mem", bin);
    writeImage(root / "butterfly" / "golden.mem", bout);

    // counter: expected trace of the terminating counter design
    std::string trace = "cycle,cnt.q,sdone.out\n";
    for (uint64_t cycle = 0; cycle <= 10; ++cycle) {
        trace += std::to_string(cycle) + "," + rsim::hexWord(cycle, 4) + "," +
                 (cycle == 9 ? "1" : "0") + "\n";
    }
    writeText(root / "counter" / "golden_trace.csv", trace);
    return 0;
}
