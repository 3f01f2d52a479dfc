#include "confaudit/confab.hpp"

#include <algorithm>
#include <charconv>

#include "confaudit/errors.hpp"

namespace confaudit {

namespace {

bool is_alnum(unsigned char c) {
    return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

char lower(unsigned char c) {
    return static_cast<char>(c >= 'A' && c <= 'Z' ? c + 32 : c);
}

// Words are maximal alphanumeric runs; everything else is a boundary.
std::vector<std::string> words(std::string_view text) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : text) {
        unsigned char c = static_cast<unsigned char>(ch);
        if (is_alnum(c)) {
            cur.push_back(lower(c));
        } else if (!cur.empty()) {
            out.push_back(std::move(cur));
            cur.clear();
        }
    }
    if (!cur.empty()) out.push_back(std::move(cur));
    return out;
}

// "SoapBar" -> {"soap", "bar"}; "TVStand" -> {"tv", "stand"}; digits glue
// to the preceding word. Single-token names split to themselves.
std::vector<std::string> camel_split(std::string_view name) {
    std::vector<std::string> parts;
    std::string cur;
    for (std::size_t i = 0; i < name.size(); ++i) {
        unsigned char c = static_cast<unsigned char>(name[i]);
        bool upper = c >= 'A' && c <= 'Z';
        if (upper && !cur.empty()) {
            unsigned char prev = static_cast<unsigned char>(name[i - 1]);
            bool prev_lower_or_digit = (prev >= 'a' && prev <= 'z') || (prev >= '0' && prev <= '9');
            bool next_lower = i + 1 < name.size() &&
                              static_cast<unsigned char>(name[i + 1]) >= 'a' &&
                              static_cast<unsigned char>(name[i + 1]) <= 'z';
            if (prev_lower_or_digit || ((prev >= 'A' && prev <= 'Z') && next_lower)) {
                parts.push_back(cur);
                cur.clear();
            }
        }
        if (is_alnum(c)) cur.push_back(lower(c));
    }
    if (!cur.empty()) parts.push_back(cur);
    return parts;
}

bool contains_sequence(const std::vector<std::string>& haystack,
                       const std::vector<std::string>& needle) {
    if (needle.empty() || haystack.size() < needle.size()) return false;
    for (std::size_t i = 0; i + needle.size() <= haystack.size(); ++i) {
        bool all = true;
        for (std::size_t j = 0; j < needle.size(); ++j) {
            if (haystack[i + j] != needle[j]) {
                all = false;
                break;
            }
        }
        if (all) return true;
    }
    return false;
}

} // namespace

std::string TaskSpec::to_name() const {
    std::string out = task_type;
    out += '-';
    out += object;
    out += '-';
    out += object2 ? *object2 : "None";
    out += '-';
    out += receptacle;
    out += '-';
    out += std::to_string(variant);
    return out;
}

TaskSpec parse_gamefile(std::string_view name) {
    // Task types contain underscores but never '-', so splitting the last
    // four fields off the right is unambiguous.
    std::vector<std::string_view> tail;
    std::string_view rest = name;
    for (int i = 0; i < 4; ++i) {
        std::size_t pos = rest.rfind('-');
        if (pos == std::string_view::npos) throw MalformedGamefile(std::string(name));
        tail.push_back(rest.substr(pos + 1));
        rest = rest.substr(0, pos);
    }

    std::string_view variant_field = tail[0];
    std::string_view receptacle = tail[1];
    std::string_view object2 = tail[2];
    std::string_view object = tail[3];

    if (rest.empty() || object.empty() || receptacle.empty()) {
        throw MalformedGamefile(std::string(name));
    }

    int variant = 0;
    auto [end, ec] = std::from_chars(variant_field.data(),
                                     variant_field.data() + variant_field.size(), variant);
    if (ec != std::errc{} || end != variant_field.data() + variant_field.size() ||
        std::to_string(variant) != variant_field) {
        throw MalformedGamefile(std::string(name));
    }

    TaskSpec spec;
    spec.task_type = std::string(rest);
    spec.object = std::string(object);
    if (object2 != "None") spec.object2 = std::string(object2);
    spec.receptacle = std::string(receptacle);
    spec.variant = variant;
    return spec;
}

bool mentions_object(std::string_view reflection_text, std::string_view object_name) {
    std::vector<std::string> text_words = words(reflection_text);
    if (text_words.empty()) return false;

    std::vector<std::string> raw = words(object_name);
    if (!raw.empty() && contains_sequence(text_words, raw)) return true;

    std::vector<std::string> split = camel_split(object_name);
    if (split.size() > 1 && contains_sequence(text_words, split)) return true;
    return false;
}

MentionReport mention_report(const EnvironmentRun& run, const TaskSpec& spec) {
    MentionReport report;
    report.total = static_cast<int>(run.reflections.size());
    report.per_reflection.reserve(run.reflections.size());
    for (const Reflection& r : run.reflections) {
        bool hit = mentions_object(r.text, spec.object);
        report.per_reflection.push_back(hit);
        if (hit) ++report.mentioned;
    }
    return report;
}

ConfabPattern classify_pattern(const EnvironmentRun& run, const TaskSpec& spec) {
    if (run.reflections.empty()) throw EmptyMemory(run.env_id);
    for (const Reflection& r : run.reflections) {
        if (mentions_object(r.text, spec.object)) return ConfabPattern::NotConfabulated;
    }
    if (spec.receptacle.empty()) return ConfabPattern::Indeterminate;
    for (const Reflection& r : run.reflections) {
        if (mentions_object(r.text, spec.receptacle)) {
            return ConfabPattern::ObjectSubstitutionOnly;
        }
    }
    return ConfabPattern::FullTaskSubstitution;
}

std::string to_token(ConfabPattern p) {
    switch (p) {
    case ConfabPattern::FullTaskSubstitution: return "FullTaskSubstitution";
    case ConfabPattern::ObjectSubstitutionOnly: return "ObjectSubstitutionOnly";
    case ConfabPattern::NotConfabulated: return "NotConfabulated";
    case ConfabPattern::Indeterminate: return "Indeterminate";
    }
    return "Indeterminate";
}

} // namespace confaudit
