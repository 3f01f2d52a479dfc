#pragma once

// Independent reference implementations used to cross-check the library.
// These are deliberately naive (quadratic scans, textbook formulas) and
// share no code with core/ beyond the public headers' contracts.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <string>
#include <string_view>
#include <vector>

namespace oracle {

// Longest common contiguous block by exhaustive scan; first (i, j) in
// lexicographic order wins ties, matching the documented tie rule.
inline std::size_t longest_block(std::string_view a, std::string_view b,
                                 std::size_t& ai, std::size_t& bi) {
    std::size_t best = 0;
    ai = bi = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) {
            std::size_t k = 0;
            while (i + k < a.size() && j + k < b.size() && a[i + k] == b[j + k]) ++k;
            if (k > best) {
                best = k;
                ai = i;
                bi = j;
            }
        }
    }
    return best;
}

inline std::size_t matched_chars(std::string_view a, std::string_view b) {
    std::size_t ai = 0, bi = 0;
    std::size_t len = longest_block(a, b, ai, bi);
    if (len == 0) return 0;
    return len + matched_chars(a.substr(0, ai), b.substr(0, bi)) +
           matched_chars(a.substr(ai + len), b.substr(bi + len));
}

// Reference gestalt score with the same canonical argument order as the
// library: the lexicographically smaller string plays the role of a.
inline double similarity(std::string_view a, std::string_view b) {
    if (b < a) std::swap(a, b);
    if (a.empty() && b.empty()) return 1.0;
    return 2.0 * static_cast<double>(matched_chars(a, b)) /
           static_cast<double>(a.size() + b.size());
}

// Reference repetition rate: index i >= 1 counts when any earlier
// reflection reaches the threshold. Inputs must already be normalized.
inline double rrr(const std::vector<std::string>& memory, double threshold) {
    if (memory.size() <= 1) return 0.0;
    std::size_t repeated = 0;
    for (std::size_t i = 1; i < memory.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            if (similarity(memory[i], memory[j]) >= threshold) {
                ++repeated;
                break;
            }
        }
    }
    return static_cast<double>(repeated) / static_cast<double>(memory.size() - 1);
}

inline std::vector<double> average_ranks(const std::vector<double>& xs) {
    std::vector<std::size_t> order(xs.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t l, std::size_t r) { return xs[l] < xs[r]; });
    std::vector<double> ranks(xs.size(), 0.0);
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i;
        while (j + 1 < order.size() && xs[order[j + 1]] == xs[order[i]]) ++j;
        double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
        i = j + 1;
    }
    return ranks;
}

inline double pearson(const std::vector<double>& xs, const std::vector<double>& ys) {
    double n = static_cast<double>(xs.size());
    double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
    double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
    double cov = 0.0, vx = 0.0, vy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        cov += (xs[i] - mx) * (ys[i] - my);
        vx += (xs[i] - mx) * (xs[i] - mx);
        vy += (ys[i] - my) * (ys[i] - my);
    }
    return cov / std::sqrt(vx * vy);
}

inline double spearman(const std::vector<double>& xs, const std::vector<double>& ys) {
    return pearson(average_ranks(xs), average_ranks(ys));
}

// Portable deterministic generator for test data; modulo sampling keeps
// sequences identical across standard libraries.
struct Rng {
    std::uint64_t state;

    explicit Rng(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        state += 0x9E3779B97F4A7C15ull;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    std::size_t below(std::size_t n) { return static_cast<std::size_t>(next() % n); }

    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

} // namespace oracle
