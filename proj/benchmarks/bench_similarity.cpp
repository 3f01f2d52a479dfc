#include <benchmark/benchmark.h>

#include <cstdint>
#include <string>
#include <vector>

#include "confaudit/similarity.hpp"

namespace {

// Deterministic sentence soup: same shape as real reflections, no RNG state
// shared between benchmark registrations.
std::vector<std::string> make_texts(std::size_t count, std::size_t words) {
    const char* bank[] = {"go",    "to",   "the",   "shelf",  "take",  "mug",
                          "put",   "cool", "clean", "drawer", "heat",  "look",
                          "plan",  "next", "trial", "failed", "again", "open",
                          "close", "turn", "light", "desk",   "lamp",  "safe"};
    const std::size_t bank_size = sizeof(bank) / sizeof(bank[0]);
    std::vector<std::string> texts;
    std::uint64_t state = 0x12345678u;
    for (std::size_t i = 0; i < count; ++i) {
        std::string text;
        for (std::size_t w = 0; w < words; ++w) {
            state = state * 6364136223846793005ULL + 1442695040888963407ULL;
            if (!text.empty()) text += ' ';
            text += bank[(state >> 33) % bank_size];
        }
        texts.push_back(confaudit::normalize(text));
    }
    return texts;
}

void BM_RatcliffObershelp(benchmark::State& state) {
    auto texts = make_texts(64, static_cast<std::size_t>(state.range(0)));
    std::size_t i = 0;
    for (auto _ : state) {
        const std::string& a = texts[i % texts.size()];
        const std::string& b = texts[(i + 1) % texts.size()];
        benchmark::DoNotOptimize(confaudit::ratcliff_obershelp(a, b));
        ++i;
    }
}
BENCHMARK(BM_RatcliffObershelp)->Arg(8)->Arg(32)->Arg(128);

void BM_Normalize(benchmark::State& state) {
    auto texts = make_texts(8, 64);
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(confaudit::normalize(texts[i % texts.size()]));
        ++i;
    }
}
BENCHMARK(BM_Normalize);

} // namespace

BENCHMARK_MAIN();
