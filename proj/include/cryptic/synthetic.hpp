#pragma once

// Generators for benchmark inputs: clues assembled inside-out from a
// lexicon so the intended answer is reachable by construction, and random
// corpora for exercising the dataset pipeline at scale.

#include "cryptic/core.hpp"
#include "cryptic/lexicon.hpp"
#include "cryptic/rng.hpp"
#include "cryptic/solvers.hpp"
#include "cryptic/wordplay.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace cryptic {

namespace detail {

/// Tokens that must not appear as filler inside generated wordplay:
/// anything that could start an indicator match, and the connectives the
/// solver strips.
inline std::set<std::string> reserved_tokens(const IndicatorTable& indicators) {
    std::set<std::string> out = linking_words();
    for (ClueType type :
         {ClueType::anagram, ClueType::initialism, ClueType::hidden,
          ClueType::reversal, ClueType::insertion, ClueType::substring_initial,
          ClueType::substring_middle, ClueType::substring_final}) {
        for (const auto& phrase : indicators.phrases_for(type)) {
            const auto space = phrase.find(' ');
            out.insert(space == std::string::npos ? phrase
                                                  : phrase.substr(0, space));
        }
    }
    return out;
}

inline std::size_t phrase_tokens(const std::string& phrase) {
    return static_cast<std::size_t>(
               std::count(phrase.begin(), phrase.end(), ' ')) +
           1;
}

/// Definition phrases for an answer: its synonyms and direct hypernyms,
/// at most three tokens. Phrases whose reverse lookup stays small are
/// preferred so the answer faces little competition at the top.
inline std::vector<std::string> definition_phrases(const std::string& answer,
                                                   const Lexicon& lex) {
    std::set<std::string> options;
    for (const auto& w : lex.neighbors(answer, Relation::synonym))
        options.insert(w);
    for (const auto& w : lex.neighbors(answer, Relation::hypernym))
        options.insert(w);
    std::vector<std::string> narrow, wide;
    for (const auto& d : options) {
        if (phrase_tokens(d) > 3) continue;
        if (reverse_lookup(d, lex, 1, 1, false).size() <= 8)
            narrow.push_back(d);
        else
            wide.push_back(d);
    }
    return narrow.empty() ? wide : narrow;
}

inline bool two_distinct_letters(const std::string& w) {
    for (char c : w)
        if (c != w.front()) return true;
    return false;
}

inline std::string capitalize(std::string s) {
    if (!s.empty() && s[0] >= 'a' && s[0] <= 'z')
        s[0] = static_cast<char>(s[0] - 'a' + 'A');
    return s;
}

}  // namespace detail

/// Build `count` solvable clues of one type. Answers, definitions and
/// indicators are drawn per clue from derive_seed(seed, i). The clue is
/// assembled around the answer, so running a solver over the result
/// measures the solver, not the generator. Supported types: anagram,
/// initialism, hidden, reversal, double_definition.
inline std::vector<Clue> make_synthetic_clues(ClueType type, std::size_t count,
                                              const Lexicon& lex,
                                              const IndicatorTable& indicators,
                                              std::uint64_t seed) {
    const auto reserved = detail::reserved_tokens(indicators);

    // answers usable for any type: single dictionary words with at least
    // one definition phrase
    std::map<std::string, std::vector<std::string>> defs;
    for (const auto& w : lex.nodes()) {
        if (w.find(' ') != std::string::npos) continue;
        if (w.size() < 2) continue;
        auto d = detail::definition_phrases(w, lex);
        if (!d.empty()) defs.emplace(w, std::move(d));
    }

    // per-letter filler words for initialisms
    std::map<char, std::vector<std::string>> by_initial;
    if (type == ClueType::initialism) {
        for (const auto& w : lex.nodes()) {
            if (w.find(' ') != std::string::npos) continue;
            if (reserved.count(w)) continue;
            by_initial[w.front()].push_back(w);
        }
    }

    std::vector<std::string> pool;
    for (const auto& [answer, d] : defs) {
        switch (type) {
            case ClueType::anagram:
                if (detail::two_distinct_letters(answer)) pool.push_back(answer);
                break;
            case ClueType::initialism: {
                bool ok = true;
                for (char c : answer)
                    if (!by_initial.count(c)) ok = false;
                if (ok) pool.push_back(answer);
                break;
            }
            case ClueType::hidden:
                pool.push_back(answer);
                break;
            case ClueType::reversal: {
                const std::string rev(answer.rbegin(), answer.rend());
                if (rev != answer && lex.contains(rev) && !reserved.count(rev))
                    pool.push_back(answer);
                break;
            }
            case ClueType::double_definition:
                if (d.size() >= 2) pool.push_back(answer);
                break;
            default:
                throw std::invalid_argument("cannot synthesize clue type " +
                                            std::string(to_string(type)));
        }
    }
    if (pool.empty())
        throw std::invalid_argument("lexicon cannot support synthetic " +
                                    std::string(to_string(type)) + " clues");
    const auto& indicator_phrases = indicators.phrases_for(type);
    if (type != ClueType::double_definition && indicator_phrases.empty())
        throw std::invalid_argument("no indicator phrases for " + std::string(to_string(type)));

    std::vector<Clue> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        Rng rng(derive_seed(seed, i));
        const std::string& answer = pool[rng.below(pool.size())];
        const auto& options = defs.at(answer);
        const std::string& def = options[rng.below(options.size())];

        std::string text;
        switch (type) {
            case ClueType::anagram: {
                const std::string& ind =
                    indicator_phrases[rng.below(indicator_phrases.size())];
                // avoid fodder that could itself start an indicator match
                std::string fodder = scramble(answer, rng.next());
                for (int attempt = 0; attempt < 16 && reserved.count(fodder);
                     ++attempt)
                    fodder = scramble(answer, rng.next());
                text = ind + " " + fodder + " " + def;
                break;
            }
            case ClueType::initialism: {
                const std::string& ind =
                    indicator_phrases[rng.below(indicator_phrases.size())];
                std::string words;
                for (char c : answer) {
                    const auto& starters = by_initial.at(c);
                    words += starters[rng.below(starters.size())];
                    words.push_back(' ');
                }
                text = words + ind + " " + def;
                break;
            }
            case ClueType::hidden: {
                const std::string& ind =
                    indicator_phrases[rng.below(indicator_phrases.size())];
                // split the answer over two carriers padded with letters
                // that cannot form or extend indicator words
                static const std::string padding = "xzqjv";
                const std::size_t cut = 1 + rng.below(answer.size() - 1);
                auto pad = [&] {
                    std::string p;
                    const std::size_t len = 1 + rng.below(3);
                    for (std::size_t k = 0; k < len; ++k)
                        p.push_back(padding[rng.below(padding.size())]);
                    return p;
                };
                const std::string carrier1 = pad() + answer.substr(0, cut);
                const std::string carrier2 = answer.substr(cut) + pad();
                text = def + " " + ind + " " + carrier1 + " " + carrier2;
                break;
            }
            case ClueType::reversal: {
                const std::string& ind =
                    indicator_phrases[rng.below(indicator_phrases.size())];
                text = ind + " " + std::string(answer.rbegin(), answer.rend()) +
                       " " + def;
                break;
            }
            case ClueType::double_definition: {
                std::vector<std::string> rest;
                for (const auto& d : options)
                    if (d != def) rest.push_back(d);
                const std::string& second = rest[rng.below(rest.size())];
                text = def + " " + second;
                break;
            }
            default:
                break;
        }

        Clue clue;
        clue.puzzle_id = "syn-" + std::string(to_string(type));
        clue.clue_id = std::to_string(i);
        clue.clue_text = detail::capitalize(std::move(text));
        clue.enumeration = enumeration_of(answer);
        clue.answer = answer;
        out.push_back(std::move(clue));
    }
    return out;
}

/// A deterministic corpus of nonsense clues for pipeline-scale tests.
/// Answers come from a shared pool about a fifth the corpus size, so
/// splits have meaningful groups; every clue carries one token unique to
/// it, so retrieval over the corpus is unambiguous.
inline std::vector<Clue> make_random_corpus(std::size_t count,
                                            std::uint64_t seed) {
    if (count == 0) return {};
    auto random_word = [](Rng& rng, std::size_t min_len, std::size_t max_len) {
        const std::size_t len = min_len + rng.below(max_len - min_len + 1);
        std::string w;
        for (std::size_t i = 0; i < len; ++i)
            w.push_back(static_cast<char>('a' + rng.below(26)));
        return w;
    };

    Rng pool_rng(derive_seed(seed, count));
    const std::size_t pool_size = std::max<std::size_t>(3, count / 5);
    std::vector<std::string> answers;
    answers.reserve(pool_size);
    for (std::size_t i = 0; i < pool_size; ++i) {
        std::string a = random_word(pool_rng, 3, 9);
        if (pool_rng.below(6) == 0) a += " " + random_word(pool_rng, 3, 6);
        answers.push_back(std::move(a));
    }

    std::vector<Clue> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        Rng rng(derive_seed(seed, i));
        const std::string& answer = answers[rng.below(answers.size())];

        std::string text;
        const std::size_t words = 3 + rng.below(5);
        for (std::size_t w = 0; w < words; ++w)
            text += random_word(rng, 2, 7) + " ";
        // unique marker token, letters only
        std::string marker = "q";
        for (std::size_t v = i + 1; v > 0; v /= 26)
            marker.push_back(static_cast<char>('a' + v % 26));
        text += marker;

        Clue clue;
        clue.puzzle_id = "p" + std::to_string(i / 30);
        clue.clue_id = "c" + std::to_string(i % 30);
        clue.clue_text = std::move(text);
        clue.enumeration = enumeration_of(answer);
        clue.answer = answer;
        if (rng.below(3) != 0) {
            clue.date = "20" + std::to_string(19 + rng.below(3)) + "-0" +
                        std::to_string(1 + rng.below(9)) + "-1" +
                        std::to_string(rng.below(10));
        }
        out.push_back(std::move(clue));
    }
    return out;
}

}  // namespace cryptic
