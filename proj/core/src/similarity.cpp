#include "confaudit/similarity.hpp"

#include <algorithm>
#include <cstdint>
#include <vector>

#include "confaudit/errors.hpp"

namespace confaudit {

namespace {

bool is_space(unsigned char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

struct Match {
    std::size_t a_begin = 0;
    std::size_t b_begin = 0;
    std::size_t length = 0;
};

// Dynamic scan over one a-row at a time. Updating only on a strictly
// longer run keeps the earliest start in a, then in b, on ties.
Match longest_match(std::string_view a, std::size_t alo, std::size_t ahi,
                    std::string_view b, std::size_t blo, std::size_t bhi,
                    std::vector<std::uint32_t>& prev, std::vector<std::uint32_t>& cur) {
    Match best{alo, blo, 0};
    std::fill(prev.begin() + static_cast<std::ptrdiff_t>(blo),
              prev.begin() + static_cast<std::ptrdiff_t>(bhi), 0u);
    for (std::size_t i = alo; i < ahi; ++i) {
        for (std::size_t j = blo; j < bhi; ++j) {
            if (a[i] != b[j]) {
                cur[j] = 0;
                continue;
            }
            std::uint32_t k = (j > blo ? prev[j - 1] : 0u) + 1u;
            cur[j] = k;
            if (k > best.length) {
                best = {i - k + 1, j - k + 1, k};
            }
        }
        std::swap(prev, cur);
    }
    return best;
}

std::size_t matched_total(std::string_view a, std::size_t alo, std::size_t ahi,
                          std::string_view b, std::size_t blo, std::size_t bhi,
                          std::vector<std::uint32_t>& prev, std::vector<std::uint32_t>& cur) {
    if (alo >= ahi || blo >= bhi) return 0;
    Match m = longest_match(a, alo, ahi, b, blo, bhi, prev, cur);
    if (m.length == 0) return 0;
    return m.length +
           matched_total(a, alo, m.a_begin, b, blo, m.b_begin, prev, cur) +
           matched_total(a, m.a_begin + m.length, ahi, b, m.b_begin + m.length, bhi, prev, cur);
}

} // namespace

std::string normalize(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    bool pending_space = false;
    for (char ch : text) {
        unsigned char c = static_cast<unsigned char>(ch);
        if (is_space(c)) {
            if (!out.empty()) pending_space = true;
            continue;
        }
        if (pending_space) {
            out.push_back(' ');
            pending_space = false;
        }
        if (c >= 'A' && c <= 'Z') c = static_cast<unsigned char>(c + 32);
        out.push_back(static_cast<char>(c));
    }
    return out;
}

double ratcliff_obershelp(std::string_view a, std::string_view b) {
    if (normalize(a) != a) throw NotNormalized(std::string(a.substr(0, 40)));
    if (normalize(b) != b) throw NotNormalized(std::string(b.substr(0, 40)));
    if (b < a) std::swap(a, b);
    if (a.empty() && b.empty()) return 1.0;

    std::vector<std::uint32_t> prev(b.size(), 0), cur(b.size(), 0);
    std::size_t total = matched_total(a, 0, a.size(), b, 0, b.size(), prev, cur);
    return 2.0 * static_cast<double>(total) / static_cast<double>(a.size() + b.size());
}

} // namespace confaudit
