#pragma once

// Synthetic pre-training material built from ordinary (non-cryptic)
// clue/answer pairs: task-labelled seq2seq lines that teach definition
// matching and letter descrambling separately, a quota mixer that
// combines them, and wordplay probe sets that measure whether a model
// actually permutes letters or merely copies them.

#include "cryptic/core.hpp"
#include "cryptic/lexicon.hpp"
#include "cryptic/rng.hpp"
#include "cryptic/wordplay.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace cryptic {

// ---------------------------------------------------------------------------
// Source pairs

/// One ordinary crossword definition with its answer.
struct AcwPair {
    std::string clue;
    std::string answer;
    bool operator==(const AcwPair&) const = default;
};

struct AcwCleanReport {
    std::size_t input_count = 0;
    std::size_t retained = 0;
    std::size_t fill_in_blank = 0;
    std::size_t bad_answer = 0;
    std::size_t exact_duplicate = 0;

    bool consistent() const {
        return retained + fill_in_blank + bad_answer + exact_duplicate ==
               input_count;
    }
};

struct AcwCleanResult {
    std::vector<AcwPair> pairs;  // answers normalized, input order
    AcwCleanReport report;
};

namespace detail {

/// Fill-in-the-blank clues ("___ Lanka") train copying, not definition
/// matching. Any underscore or a run of three dashes counts; en and em
/// dashes fold to '-' first.
inline bool references_blank(const std::string& clue) {
    std::string folded;
    folded.reserve(clue.size());
    for (std::size_t i = 0; i < clue.size(); ++i) {
        // U+2013 is \xe2\x80\x93, U+2014 is \xe2\x80\x94
        if (i + 2 < clue.size() && clue[i] == '\xe2' && clue[i + 1] == '\x80' &&
            (clue[i + 2] == '\x93' || clue[i + 2] == '\x94')) {
            folded.push_back('-');
            i += 2;
        } else {
            folded.push_back(clue[i]);
        }
    }
    return folded.find('_') != std::string::npos ||
           folded.find("---") != std::string::npos;
}

}  // namespace detail

/// Drop fill-in-the-blank clues, pairs whose answer has no letters, and
/// exact repeats of an earlier (clue, normalized answer) pair. Survivors
/// keep input order and carry normalized answers.
inline AcwCleanResult clean_acw(const std::vector<AcwPair>& pairs) {
    AcwCleanResult out;
    out.report.input_count = pairs.size();
    std::set<std::pair<std::string, std::string>> seen;
    for (const auto& p : pairs) {
        if (detail::references_blank(p.clue)) {
            ++out.report.fill_in_blank;
            continue;
        }
        std::string norm;
        try {
            norm = normalize_answer(p.answer);
        } catch (const ParseError&) {
            ++out.report.bad_answer;
            continue;
        }
        if (!seen.emplace(p.clue, norm).second) {
            ++out.report.exact_duplicate;
            continue;
        }
        out.pairs.push_back(AcwPair{p.clue, std::move(norm)});
        ++out.report.retained;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Task-labelled lines

/// Every generator emits "<task>: <input> <pattern> => <answer>" where
/// `pattern` is the true enumeration of the normalized answer, so a model
/// always sees the target shape.

enum class CurriculumTask { phrase, descramble, descramble_word, anagram };

inline std::string to_string(CurriculumTask t) {
    switch (t) {
        case CurriculumTask::phrase: return "phrase";
        case CurriculumTask::descramble: return "descramble";
        case CurriculumTask::descramble_word: return "descramble word";
        case CurriculumTask::anagram: return "anagram";
    }
    throw std::invalid_argument("unknown curriculum task");
}

inline std::optional<CurriculumTask> curriculum_task_from_string(
    const std::string& s) {
    if (s == "phrase") return CurriculumTask::phrase;
    if (s == "descramble" || s == "descramble-word" || s == "descramble word") {
        return s == "descramble" ? CurriculumTask::descramble
                                 : CurriculumTask::descramble_word;
    }
    if (s == "anagram") return CurriculumTask::anagram;
    return std::nullopt;
}

/// "phrase: <clue> (<pattern>) => <answer>": plain definition matching.
inline std::string gen_phrase(const AcwPair& pair) {
    if (pair.clue.empty()) throw std::invalid_argument("phrase task: empty clue");
    const std::string answer = normalize_answer(pair.answer);
    return "phrase: " + pair.clue + " " +
           render_enumeration(enumeration_of(answer)) + " => " + answer;
}

/// "descramble: <letters> <clue> (<pattern>) => <answer>" or the same with
/// the scrambled letters after the clue; the coin flip and the shuffle both
/// come from `seed`.
inline std::string gen_descramble(const AcwPair& pair, std::uint64_t seed) {
    if (pair.clue.empty())
        throw std::invalid_argument("descramble task: empty clue");
    const std::string answer = normalize_answer(pair.answer);
    Rng rng(seed);
    const bool prepend = rng.coin();
    const std::string scrambled = scramble(answer, rng.next());
    const std::string input =
        prepend ? scrambled + " " + pair.clue : pair.clue + " " + scrambled;
    return "descramble: " + input + " " +
           render_enumeration(enumeration_of(answer)) + " => " + answer;
}

/// "descramble word: <letters> (<pattern>) => <answer>": pure unscrambling,
/// no definition present.
inline std::string gen_descramble_word(const AcwPair& pair, std::uint64_t seed) {
    const std::string answer = normalize_answer(pair.answer);
    Rng rng(seed);
    const std::string scrambled = scramble(answer, rng.next());
    return "descramble word: " + scrambled + " " +
           render_enumeration(enumeration_of(answer)) + " => " + answer;
}

/// "anagram: <indicator> <partner word> (<pattern>) => <answer>" where the
/// partner is a real word spelled with exactly the answer's letters. Returns
/// nothing when the lexicon has no such partner.
inline std::optional<std::string> gen_anagram(
    const AcwPair& pair, const Lexicon& lex,
    const std::vector<std::string>& indicator_phrases, std::uint64_t seed) {
    if (indicator_phrases.empty())
        throw std::invalid_argument("anagram task: no indicator phrases");
    const std::string answer = normalize_answer(pair.answer);
    const auto& family = lex.words_with_signature(anagram_signature(answer));
    std::vector<std::string> partners;
    for (const auto& w : family)
        if (w != answer) partners.push_back(w);
    if (partners.empty()) return std::nullopt;
    Rng rng(seed);
    const std::string& partner = partners[rng.below(partners.size())];
    const std::string& indicator =
        indicator_phrases[rng.below(indicator_phrases.size())];
    return "anagram: " + indicator + " " + partner + " " +
           render_enumeration(enumeration_of(answer)) + " => " + answer;
}

// ---------------------------------------------------------------------------
// Batch generation

struct GenReport {
    std::size_t input_count = 0;
    std::size_t generated = 0;
    std::size_t skipped_empty_clue = 0;
    std::size_t skipped_bad_answer = 0;
    std::size_t skipped_unscramblable = 0;
    std::size_t skipped_no_partner = 0;

    bool consistent() const {
        return generated + skipped_empty_clue + skipped_bad_answer +
                   skipped_unscramblable + skipped_no_partner ==
               input_count;
    }
};

struct GenResult {
    std::vector<std::string> lines;
    GenReport report;
};

/// Run one task over a pair list. Item i draws its randomness from
/// derive_seed(seed, i) alone, so one item's output never depends on what
/// the other items are. The anagram task needs `lex` and a non-empty
/// indicator list.
inline GenResult gen_dataset(const std::vector<AcwPair>& pairs,
                             CurriculumTask task, std::uint64_t seed,
                             const Lexicon* lex = nullptr,
                             const std::vector<std::string>* indicator_phrases =
                                 nullptr) {
    if (task == CurriculumTask::anagram) {
        if (lex == nullptr)
            throw std::invalid_argument("anagram task: lexicon required");
        if (indicator_phrases == nullptr || indicator_phrases->empty())
            throw std::invalid_argument("anagram task: no indicator phrases");
    }
    GenResult out;
    out.report.input_count = pairs.size();
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const auto& pair = pairs[i];
        const std::uint64_t item_seed = derive_seed(seed, i);

        std::string answer;
        try {
            answer = normalize_answer(pair.answer);
        } catch (const ParseError&) {
            ++out.report.skipped_bad_answer;
            continue;
        }
        const bool needs_clue = task == CurriculumTask::phrase ||
                                task == CurriculumTask::descramble;
        if (needs_clue && pair.clue.empty()) {
            ++out.report.skipped_empty_clue;
            continue;
        }
        const bool needs_scramble = task == CurriculumTask::descramble ||
                                    task == CurriculumTask::descramble_word;
        if (needs_scramble) {
            const std::string letters = letters_of(answer);
            bool two_distinct = false;
            for (char c : letters)
                if (c != letters.front()) two_distinct = true;
            if (!two_distinct) {
                ++out.report.skipped_unscramblable;
                continue;
            }
        }

        switch (task) {
            case CurriculumTask::phrase:
                out.lines.push_back(gen_phrase(pair));
                break;
            case CurriculumTask::descramble:
                out.lines.push_back(gen_descramble(pair, item_seed));
                break;
            case CurriculumTask::descramble_word:
                out.lines.push_back(gen_descramble_word(pair, item_seed));
                break;
            case CurriculumTask::anagram: {
                auto line = gen_anagram(pair, *lex, *indicator_phrases, item_seed);
                if (!line) {
                    ++out.report.skipped_no_partner;
                    continue;
                }
                out.lines.push_back(std::move(*line));
                break;
            }
        }
        ++out.report.generated;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Mixing

/// Combine datasets into one training file of exactly `total` lines.
/// Quotas follow the weights by largest remainder (ties to the earlier
/// dataset), dataset i is sampled with derive_seed(seed, i), and the
/// combined lines are shuffled once with derive_seed(seed, n). Without
/// replacement a quota larger than its dataset is an error.
inline std::vector<std::string> mix(
    const std::vector<std::vector<std::string>>& datasets,
    const std::vector<double>& weights, std::size_t total, std::uint64_t seed,
    bool with_replacement = false) {
    if (datasets.size() != weights.size())
        throw std::invalid_argument("mix: one weight per dataset");
    if (datasets.empty()) throw std::invalid_argument("mix: no datasets");
    double weight_sum = 0;
    for (double w : weights) {
        if (!(w > 0)) throw std::invalid_argument("mix: weights must be positive");
        weight_sum += w;
    }

    // largest-remainder quotas
    const std::size_t n = datasets.size();
    std::vector<std::size_t> quota(n);
    std::vector<std::pair<double, std::size_t>> remainders;  // (-frac, index)
    std::size_t assigned = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double exact = static_cast<double>(total) * weights[i] / weight_sum;
        quota[i] = static_cast<std::size_t>(std::floor(exact));
        assigned += quota[i];
        remainders.emplace_back(-(exact - std::floor(exact)), i);
    }
    std::sort(remainders.begin(), remainders.end());
    for (std::size_t i = 0; assigned < total; ++i, ++assigned)
        ++quota[remainders[i % n].second];

    std::vector<std::string> combined;
    combined.reserve(total);
    for (std::size_t i = 0; i < n; ++i) {
        if (quota[i] == 0) continue;
        Rng rng(derive_seed(seed, i));
        if (with_replacement) {
            for (std::size_t k = 0; k < quota[i]; ++k) {
                if (datasets[i].empty())
                    throw std::invalid_argument("mix: empty dataset with quota");
                combined.push_back(datasets[i][rng.below(datasets[i].size())]);
            }
        } else {
            if (quota[i] > datasets[i].size())
                throw std::invalid_argument(
                    "mix: quota " + std::to_string(quota[i]) + " exceeds dataset " +
                    std::to_string(i) + " size " +
                    std::to_string(datasets[i].size()));
            auto picked = rng.sample(datasets[i], quota[i]);
            for (auto& line : picked) combined.push_back(std::move(line));
        }
    }
    Rng shuffler(derive_seed(seed, n));
    shuffler.shuffle(combined);
    return combined;
}

// ---------------------------------------------------------------------------
// Wordplay probes

/// What the probe feeds the model: the answer's letters scrambled, or the
/// answer verbatim (a copy control), each optionally alongside the clue.
enum class ProbeVariant {
    scramble_only,
    scramble_with_phrase,
    copy_only,
    copy_with_phrase,
};

inline std::string to_string(ProbeVariant v) {
    switch (v) {
        case ProbeVariant::scramble_only: return "scramble-only";
        case ProbeVariant::scramble_with_phrase: return "scramble-with-phrase";
        case ProbeVariant::copy_only: return "copy-only";
        case ProbeVariant::copy_with_phrase: return "copy-with-phrase";
    }
    throw std::invalid_argument("unknown probe variant");
}

enum class ProbeSplit { random, answer_disjoint };

struct ProbeSet {
    std::vector<std::string> train, dev, test;

    std::size_t size() const { return train.size() + dev.size() + test.size(); }
};

/// Build 60/20/20 probe files from single-word answers. Scramble variants
/// need at least two distinct letters; other pairs are dropped silently.
/// The answer-disjoint split keeps every answer inside one subset so test
/// performance cannot come from memorized strings.
inline ProbeSet gen_wordplay_probe(const std::vector<AcwPair>& pairs,
                                   ProbeVariant variant, ProbeSplit split,
                                   std::uint64_t seed) {
    const bool scrambled = variant == ProbeVariant::scramble_only ||
                           variant == ProbeVariant::scramble_with_phrase;
    const bool with_phrase = variant == ProbeVariant::scramble_with_phrase ||
                             variant == ProbeVariant::copy_with_phrase;

    struct Item {
        std::string line;
        std::string answer;
    };
    std::vector<Item> items;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        std::string answer;
        try {
            answer = normalize_answer(pairs[i].answer);
        } catch (const ParseError&) {
            continue;
        }
        if (answer.find(' ') != std::string::npos) continue;
        std::string token;
        if (scrambled) {
            bool two_distinct = false;
            for (char c : answer)
                if (c != answer.front()) two_distinct = true;
            if (!two_distinct) continue;
            token = scramble(answer, derive_seed(seed, i));
        } else {
            token = answer;
        }
        std::string line = token;
        if (with_phrase) line += " | " + pairs[i].clue;
        line += " => " + answer;
        items.push_back(Item{std::move(line), std::move(answer)});
    }

    const std::size_t n = items.size();
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;

    Rng rng(derive_seed(seed, pairs.size()));
    ProbeSet out;
    auto place = [&](const Item& item, std::size_t rank, std::size_t of) {
        const auto t1 = static_cast<std::size_t>(std::llround(0.6 * static_cast<double>(of)));
        const auto t2 = static_cast<std::size_t>(std::llround(0.8 * static_cast<double>(of)));
        if (rank < t1) out.train.push_back(item.line);
        else if (rank < t2) out.dev.push_back(item.line);
        else out.test.push_back(item.line);
    };

    if (split == ProbeSplit::random) {
        rng.shuffle(order);
        for (std::size_t rank = 0; rank < n; ++rank)
            place(items[order[rank]], rank, n);
    } else {
        // group by answer, shuffle groups, then deal groups out greedily
        std::map<std::string, std::vector<std::size_t>> by_answer;
        std::vector<std::string> group_order;
        for (std::size_t i = 0; i < n; ++i) {
            auto [it, fresh] = by_answer.try_emplace(items[i].answer);
            if (fresh) group_order.push_back(items[i].answer);
            it->second.push_back(i);
        }
        rng.shuffle(group_order);
        const auto t1 = static_cast<double>(n) * 0.6;
        const auto t2 = static_cast<double>(n) * 0.8;
        std::size_t placed = 0;
        for (const auto& answer : group_order) {
            const auto& members = by_answer[answer];
            auto* dst = &out.train;
            if (static_cast<double>(placed) >= t2) dst = &out.test;
            else if (static_cast<double>(placed) >= t1) dst = &out.dev;
            for (std::size_t i : members) dst->push_back(items[i].line);
            placed += members.size();
        }
    }
    return out;
}

}  // namespace cryptic
