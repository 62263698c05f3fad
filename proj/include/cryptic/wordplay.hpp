#pragma once

// Wordplay transformations: the letter-level operations cryptic clues are
// built from. Each returns every lexicon word reachable from its inputs,
// so callers filter against the answer pattern.

#include "cryptic/core.hpp"
#include "cryptic/lexicon.hpp"
#include "cryptic/rng.hpp"

#include <array>
#include <chrono>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace cryptic {

/// Cooperative cutoff for long searches. Passed by pointer; null means no
/// limit.
struct Deadline {
    std::chrono::steady_clock::time_point at;

    static Deadline after(std::chrono::milliseconds budget) {
        return Deadline{std::chrono::steady_clock::now() + budget};
    }
    bool expired() const { return std::chrono::steady_clock::now() >= at; }
};

// ---------------------------------------------------------------------------
// Anagrams

/// Every way to rearrange the letters of `fodder` into words matching
/// `target`, one lexicon word per part. The unchanged arrangement (output
/// letters identical to the fodder's letter sequence) is excluded: a
/// cryptic anagram must change something. Multi-part targets are filled
/// left to right. A deadline makes the search return what it has found so
/// far.
inline std::set<std::string> anagram_solutions(std::string_view fodder,
                                               const Enumeration& target,
                                               const Lexicon& lex,
                                               const Deadline* deadline = nullptr) {
    std::set<std::string> out;
    const std::string input_letters = letters_of(fodder);
    if (static_cast<int>(input_letters.size()) != target.total_letters()) return out;

    std::array<int, 26> pool{};
    for (char c : input_letters) ++pool[static_cast<unsigned char>(c) - 'a'];

    const auto take = [&](const std::string& w) -> bool {
        for (std::size_t i = 0; i < w.size(); ++i) {
            if (--pool[w[i] - 'a'] < 0) {
                for (std::size_t j = 0; j <= i; ++j) ++pool[w[j] - 'a'];
                return false;
            }
        }
        return true;
    };
    const auto give = [&](const std::string& w) {
        for (char c : w) ++pool[c - 'a'];
    };

    std::vector<std::string> stack;
    const std::function<void(std::size_t)> rec = [&](std::size_t part) {
        if (deadline && deadline->expired()) return;
        if (part + 1 == target.parts.size()) {
            std::string sig;
            for (int c = 0; c < 26; ++c)
                sig.append(static_cast<std::size_t>(pool[c]), static_cast<char>('a' + c));
            for (const auto& w : lex.words_with_signature(sig)) {
                std::string joined;
                for (const auto& s : stack) {
                    joined += s;
                    joined.push_back(' ');
                }
                joined += w;
                if (letters_of(joined) != input_letters) out.insert(std::move(joined));
            }
            return;
        }
        for (const auto& w : lex.words_of_length(
                 static_cast<std::size_t>(target.parts[part]))) {
            if (deadline && deadline->expired()) return;
            if (!take(w)) continue;
            stack.push_back(w);
            rec(part + 1);
            stack.pop_back();
            give(w);
        }
    };
    if (!target.parts.empty()) rec(0);
    return out;
}

// ---------------------------------------------------------------------------
// Initialisms

/// First letters of the given words, in order. Throws on an empty list or
/// an empty word.
inline std::string initialism(const std::vector<std::string>& words) {
    if (words.empty()) throw std::invalid_argument("initialism: no words");
    std::string out;
    out.reserve(words.size());
    for (const auto& w : words) {
        if (w.empty()) throw std::invalid_argument("initialism: empty word");
        out.push_back(to_lower_ascii(w.front()));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Hidden words

/// A lexicon word found as a run of consecutive letters inside a phrase,
/// ignoring spaces. Spans index the phrase's space-stripped letters and
/// its tokens.
struct HiddenHit {
    std::string word;
    std::size_t letter_begin = 0;
    std::size_t letter_end = 0;
    std::size_t token_begin = 0;  // half-open token range the letters touch
    std::size_t token_end = 0;
    auto operator<=>(const HiddenHit&) const = default;
};

/// All hidden words of exactly `target_len` letters. A window that lines
/// up exactly with one whole word of the phrase is not "hidden" and is
/// excluded; anything crossing a word boundary, or strictly inside a
/// longer word, counts. Lengths below 2 find nothing.
inline std::vector<HiddenHit> hidden_words(std::string_view phrase,
                                           std::size_t target_len,
                                           const Lexicon& lex) {
    std::vector<HiddenHit> out;
    if (target_len < 2) return out;
    const auto tokens = tokenize(phrase);
    std::string letters;
    std::vector<std::size_t> owner;  // letter index -> token index
    std::vector<std::size_t> token_start(tokens.size(), 0);
    for (std::size_t t = 0; t < tokens.size(); ++t) {
        token_start[t] = letters.size();
        for (char c : tokens[t].text) {
            letters.push_back(c);
            owner.push_back(t);
        }
    }
    if (letters.size() < target_len) return out;
    for (std::size_t s = 0; s + target_len <= letters.size(); ++s) {
        const std::size_t e = s + target_len;
        const std::string window = letters.substr(s, target_len);
        if (!lex.contains(window)) continue;
        const std::size_t t0 = owner[s], t1 = owner[e - 1];
        // exactly one whole word -> not hidden
        if (t0 == t1 && token_start[t0] == s && tokens[t0].text.size() == target_len)
            continue;
        out.push_back(HiddenHit{window, s, e, t0, t1 + 1});
    }
    return out;
}

// ---------------------------------------------------------------------------
// Reversals

/// The word read backwards, if that is itself a lexicon word. Palindromes
/// qualify.
inline std::optional<std::string> reversal(std::string_view word, const Lexicon& lex) {
    std::string rev(word.rbegin(), word.rend());
    if (lex.contains(rev)) return rev;
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Substrings

enum class SubstringKind { initial, middle, final };

/// Lexicon words obtained by shortening `word`: a proper prefix (initial),
/// a proper suffix (final), or a strictly interior run (middle, dropping
/// at least one letter from each end). The word itself never qualifies.
inline std::set<std::string> substrings(std::string_view word, SubstringKind kind,
                                        const Lexicon& lex) {
    std::set<std::string> out;
    const std::string w = letters_of(word);
    const std::size_t n = w.size();
    if (n < 2) return out;
    auto try_add = [&](std::size_t pos, std::size_t len) {
        const std::string sub = w.substr(pos, len);
        if (lex.contains(sub)) out.insert(sub);
    };
    switch (kind) {
        case SubstringKind::initial:
            for (std::size_t len = 1; len < n; ++len) try_add(0, len);
            break;
        case SubstringKind::final:
            for (std::size_t len = 1; len < n; ++len) try_add(n - len, len);
            break;
        case SubstringKind::middle:
            for (std::size_t pos = 1; pos < n; ++pos)
                for (std::size_t len = 1; pos + len <= n - 1; ++len) try_add(pos, len);
            break;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Insertions

/// Lexicon words formed by splicing `inner` into a strictly interior
/// position of `outer` (after 1..len-1 leading letters). Prepending or
/// appending is not an insertion; an empty inner part yields nothing.
inline std::set<std::string> insertions(std::string_view outer, std::string_view inner,
                                        const Lexicon& lex) {
    std::set<std::string> out;
    if (inner.empty() || outer.size() < 2) return out;
    for (std::size_t pos = 1; pos < outer.size(); ++pos) {
        std::string w;
        w.reserve(outer.size() + inner.size());
        w.append(outer.substr(0, pos));
        w.append(inner);
        w.append(outer.substr(pos));
        if (lex.contains(w)) out.insert(std::move(w));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Indicator detection

struct IndicatorHit {
    std::size_t begin = 0;  // half-open token range
    std::size_t end = 0;
    ClueType type = ClueType::definition_only;
    auto operator<=>(const IndicatorHit&) const = default;
};

/// Scan tokens left to right for indicator phrases, preferring the longest
/// match at each position; matches never overlap. A phrase tagged with
/// several types yields one hit per type over the same span.
inline std::vector<IndicatorHit> detect_indicators(const std::vector<std::string>& tokens,
                                                   const IndicatorTable& table) {
    std::vector<IndicatorHit> out;
    const std::size_t n = tokens.size();
    std::size_t i = 0;
    while (i < n) {
        const std::size_t cap = std::min(table.max_phrase_tokens(), n - i);
        std::size_t advance = 1;
        for (std::size_t len = cap; len >= 1; --len) {
            std::string phrase;
            for (std::size_t k = 0; k < len; ++k) {
                if (k) phrase.push_back(' ');
                phrase += tokens[i + k];
            }
            if (const auto* tags = table.lookup(phrase)) {
                for (ClueType t : *tags) out.push_back(IndicatorHit{i, i + len, t});
                advance = len;
                break;
            }
            if (len == 1) break;
        }
        i += advance;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Scrambling

/// A seeded non-identity permutation of the letters of `word` (spaces
/// dropped first). Throws when no non-identity permutation exists, i.e.
/// fewer than two distinct letters.
inline std::string scramble(std::string_view word, std::uint64_t seed) {
    const std::string letters = letters_of(word);
    bool has_two_distinct = false;
    for (char c : letters)
        if (c != letters.front()) {
            has_two_distinct = true;
            break;
        }
    if (!has_two_distinct)
        throw std::invalid_argument("scramble: \"" + std::string(word) +
                                    "\" has no distinct letters to permute");
    Rng rng(seed);
    std::string s = letters;
    do {
        rng.shuffle(s);
    } while (s == letters);
    return s;
}

}  // namespace cryptic
