#pragma once

// Core value types shared by every other header: clue records, answer
// enumerations ("(8,4)" style length patterns), candidate answers and the
// derivations that explain them.

#include <cctype>
#include <compare>
#include <cstddef>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cryptic {

/// Raised when text fails to parse (enumerations, answers, file records).
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

inline bool is_ascii_letter(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

inline char to_lower_ascii(char c) {
    return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

// ---------------------------------------------------------------------------
// Enumeration

/// Separator printed between adjacent parts of an enumeration.
enum class Separator { space, hyphen };

/// Length pattern of an answer: "(5)" one 5-letter word, "(8,4)" two words,
/// "(3-2)" a hyphenated form. `separators[i]` sits between parts i and i+1.
struct Enumeration {
    std::vector<int> parts;
    std::vector<Separator> separators;

    int total_letters() const {
        int total = 0;
        for (int p : parts) total += p;
        return total;
    }

    bool operator==(const Enumeration&) const = default;
};

/// Parse "(8,4)" / "( 8 , 4 )" / "(3-2)". Digits and the separators ','
/// and '-' only; internal spaces are ignored. Errors name the offending
/// character and position.
inline Enumeration parse_enumeration(std::string_view text) {
    Enumeration out;
    std::size_t i = 0;
    const std::size_t n = text.size();
    auto fail = [&](const std::string& msg) -> void {
        std::ostringstream os;
        os << "bad enumeration \"" << std::string(text) << "\": " << msg;
        throw ParseError(os.str());
    };
    auto skip_spaces = [&] {
        while (i < n && text[i] == ' ') ++i;
    };
    skip_spaces();
    if (i >= n || text[i] != '(') fail("expected '('");
    ++i;
    bool expect_number = true;
    while (true) {
        skip_spaces();
        if (i >= n) fail("missing ')'");
        const char c = text[i];
        if (expect_number) {
            if (!std::isdigit(static_cast<unsigned char>(c))) {
                std::ostringstream os;
                os << "expected digit, got '" << c << "' at offset " << i;
                fail(os.str());
            }
            long value = 0;
            while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) {
                value = value * 10 + (text[i] - '0');
                if (value > 100000) fail("part length out of range");
                ++i;
            }
            if (value == 0) fail("zero-length part");
            out.parts.push_back(static_cast<int>(value));
            expect_number = false;
        } else if (c == ')') {
            ++i;
            break;
        } else if (c == ',' || c == '-') {
            out.separators.push_back(c == ',' ? Separator::space : Separator::hyphen);
            ++i;
            expect_number = true;
        } else {
            std::ostringstream os;
            os << "expected ',', '-' or ')', got '" << c << "' at offset " << i;
            fail(os.str());
        }
    }
    skip_spaces();
    if (i != n) {
        std::ostringstream os;
        os << "trailing character '" << text[i] << "' at offset " << i;
        fail(os.str());
    }
    return out;
}

/// Canonical text form: no internal spaces, e.g. "(8,4)" or "(3-2)".
inline std::string render_enumeration(const Enumeration& e) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < e.parts.size(); ++i) {
        if (i > 0) os << (e.separators[i - 1] == Separator::space ? ',' : '-');
        os << e.parts[i];
    }
    os << ')';
    return os.str();
}

// ---------------------------------------------------------------------------
// Answers

/// Canonical answer form: lower-case ASCII letters and single spaces.
/// Hyphens become spaces, every other non-letter is dropped, whitespace is
/// collapsed. Throws ParseError if nothing is left.
inline std::string normalize_answer(std::string_view raw) {
    std::string out;
    out.reserve(raw.size());
    bool pending_space = false;
    for (char ch : raw) {
        char c = to_lower_ascii(ch);
        if (c == '-' || c == ' ' || c == '\t' || c == '\n' || c == '\r') {
            if (!out.empty()) pending_space = true;
            continue;
        }
        if (c < 'a' || c > 'z') continue;
        if (pending_space) {
            out.push_back(' ');
            pending_space = false;
        }
        out.push_back(c);
    }
    if (out.empty()) {
        std::ostringstream os;
        os << "answer \"" << std::string(raw) << "\" normalizes to nothing";
        throw ParseError(os.str());
    }
    return out;
}

/// Enumeration implied by a normalized answer ("space rock" -> (5,4)).
/// All separators are spaces; hyphenation is not recoverable from the
/// normalized form.
inline Enumeration enumeration_of(std::string_view normalized_answer) {
    Enumeration e;
    int run = 0;
    for (char c : normalized_answer) {
        if (c == ' ') {
            if (run > 0) {
                e.parts.push_back(run);
                e.separators.push_back(Separator::space);
                run = 0;
            }
        } else {
            ++run;
        }
    }
    if (run > 0) e.parts.push_back(run);
    if (e.parts.empty()) throw ParseError("empty answer has no enumeration");
    while (e.separators.size() + 1 > e.parts.size()) e.separators.pop_back();
    return e;
}

/// True when a normalized answer's word lengths line up with the pattern.
/// Word boundaries must match part boundaries; "(8,4)" wants exactly two
/// words of 8 and 4 letters, not any 12-letter string.
inline bool matches_enumeration(std::string_view normalized_answer, const Enumeration& e) {
    std::vector<int> lengths;
    int run = 0;
    for (char c : normalized_answer) {
        if (c == ' ') {
            if (run > 0) lengths.push_back(run);
            run = 0;
        } else if (c >= 'a' && c <= 'z') {
            ++run;
        } else {
            return false;  // not in normalized form
        }
    }
    if (run > 0) lengths.push_back(run);
    if (lengths.size() != e.parts.size()) return false;
    for (std::size_t i = 0; i < lengths.size(); ++i)
        if (lengths[i] != e.parts[i]) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Clue types and derivations

enum class ClueType {
    anagram,
    initialism,
    hidden,
    reversal,
    insertion,
    substring_initial,
    substring_middle,
    substring_final,
    double_definition,
    definition_only,
};

inline const char* to_string(ClueType t) {
    switch (t) {
        case ClueType::anagram: return "anagram";
        case ClueType::initialism: return "initialism";
        case ClueType::hidden: return "hidden";
        case ClueType::reversal: return "reversal";
        case ClueType::insertion: return "insertion";
        case ClueType::substring_initial: return "substring_initial";
        case ClueType::substring_middle: return "substring_middle";
        case ClueType::substring_final: return "substring_final";
        case ClueType::double_definition: return "double_definition";
        case ClueType::definition_only: return "definition_only";
    }
    return "unknown";
}

inline std::optional<ClueType> clue_type_from_string(std::string_view s) {
    static const std::pair<std::string_view, ClueType> table[] = {
        {"anagram", ClueType::anagram},
        {"initialism", ClueType::initialism},
        {"hidden", ClueType::hidden},
        {"reversal", ClueType::reversal},
        {"insertion", ClueType::insertion},
        {"substring_initial", ClueType::substring_initial},
        {"substring_middle", ClueType::substring_middle},
        {"substring_final", ClueType::substring_final},
        {"double_definition", ClueType::double_definition},
        {"definition_only", ClueType::definition_only},
    };
    for (const auto& [name, t] : table)
        if (name == s) return t;
    return std::nullopt;
}

/// Half-open character range into a clue's text.
struct Span {
    std::size_t begin = 0;
    std::size_t end = 0;
    bool operator==(const Span&) const = default;
};

/// How a candidate was produced: which reading of the clue, which spans
/// played definition and indicator, and the intermediate strings consumed
/// by the transformation.
struct Derivation {
    ClueType clue_type = ClueType::definition_only;
    Span definition_span;
    std::optional<Span> indicator_span;
    std::vector<std::string> inputs;
    bool operator==(const Derivation&) const = default;
};

struct CandidateAnswer {
    std::string text;  // normalized form
    double score = 0.0;
    std::optional<Derivation> derivation;
    bool operator==(const CandidateAnswer&) const = default;
};

/// Ranking order used everywhere: score descending, then text ascending so
/// equal-scoring candidates always appear in a reproducible order.
inline bool candidate_before(const CandidateAnswer& a, const CandidateAnswer& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.text < b.text;
}

// ---------------------------------------------------------------------------
// Clues

/// Identifies a clue within a corpus.
struct ClueKey {
    std::string puzzle_id;
    std::string clue_id;
    auto operator<=>(const ClueKey&) const = default;
};

struct ClueKeyHash {
    std::size_t operator()(const ClueKey& k) const {
        std::hash<std::string> h;
        return h(k.puzzle_id) * 1000003u ^ h(k.clue_id);
    }
};

struct Clue {
    std::string puzzle_id;
    std::string clue_id;
    std::string clue_text;  // surface text without the trailing enumeration
    Enumeration enumeration;
    std::string answer;  // normalized; may be empty for unlabeled clues
    std::string date;    // ISO-8601 or empty
    bool operator==(const Clue&) const = default;

    ClueKey key() const { return ClueKey{puzzle_id, clue_id}; }
};

// ---------------------------------------------------------------------------
// Tokenization

/// A clue-text token: lower-cased letters only, with the character span it
/// came from. "everything's" yields "everythings".
struct Token {
    std::string text;
    std::size_t begin = 0;
    std::size_t end = 0;
    bool operator==(const Token&) const = default;
};

/// Split on whitespace, strip every non-letter, lower-case. Chunks with no
/// letters (pure punctuation) disappear.
inline std::vector<Token> tokenize(std::string_view text) {
    std::vector<Token> out;
    std::size_t i = 0;
    const std::size_t n = text.size();
    while (i < n) {
        while (i < n && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        if (i >= n) break;
        const std::size_t begin = i;
        std::string word;
        while (i < n && !std::isspace(static_cast<unsigned char>(text[i]))) {
            if (is_ascii_letter(text[i])) word.push_back(to_lower_ascii(text[i]));
            ++i;
        }
        if (!word.empty()) out.push_back(Token{std::move(word), begin, i});
    }
    return out;
}

/// Letters of a string with spaces (and anything else) removed.
inline std::string letters_of(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s)
        if (is_ascii_letter(c)) out.push_back(to_lower_ascii(c));
    return out;
}

}  // namespace cryptic
