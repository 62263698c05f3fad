#pragma once

// Scores candidate lists against gold answers: headline top-1/top-10
// accuracy over length-filtered deduplicated candidates, shallow
// diagnostics over the first few raw candidates, train-overlap
// segmentation, and text/JSON/CSV report rendering.

#include "cryptic/core.hpp"
#include "cryptic/corpus.hpp"
#include "cryptic/lexicon.hpp"
#include "cryptic/solvers.hpp"

#include <json.hpp>

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace cryptic {

// ---------------------------------------------------------------------------
// Evaluation

struct PerClueRecord {
    ClueKey key;
    std::string gold;                // normalized answer being sought
    std::size_t filtered_rank = 0;   // 1-based rank after filtering; 0 = absent
    bool top1 = false;
    bool top10 = false;
    std::size_t sampled = 0;         // raw candidates inspected for diagnostics
    bool sample_contains = false;
    double sample_correct_length = 0.0;
    double sample_correct_word_count = 0.0;

    bool operator==(const PerClueRecord&) const = default;
};

struct EvalResult {
    std::size_t clue_count = 0;
    double top1 = 0.0;
    double top10 = 0.0;
    double sample_contains = 0.0;
    double sample_correct_length = 0.0;
    double sample_correct_word_count = 0.0;
    std::vector<PerClueRecord> per_clue;  // gold order
};

namespace detail {

inline std::optional<std::string> try_normalize(const std::string& s) {
    try {
        return normalize_answer(s);
    } catch (const ParseError&) {
        return std::nullopt;
    }
}

inline std::size_t word_count(const std::string& normalized) {
    if (normalized.empty()) return 0;
    return static_cast<std::size_t>(
               std::count(normalized.begin(), normalized.end(), ' ')) +
           1;
}

}  // namespace detail

/// Score candidate lists against gold clues. Each gold clue must have
/// exactly one candidate set and vice versa. The headline ranking
/// normalizes candidate texts, keeps the first occurrence of each, and
/// drops those whose letter count cannot fill the clue's pattern; top-1
/// and top-10 read off that list. Diagnostics look at the first
/// `sample_size` candidates exactly as the solver emitted them: does the
/// answer appear at all, and what fraction have the right letter count
/// and the right number of words.
inline EvalResult evaluate(const std::vector<Clue>& gold,
                           const std::vector<CandidateSet>& candidates,
                           std::size_t sample_size = 10) {
    if (gold.empty()) throw std::invalid_argument("evaluate: no gold clues");

    std::map<ClueKey, const std::vector<CandidateAnswer>*> by_key;
    for (const auto& set : candidates) {
        if (!by_key.emplace(set.key, &set.candidates).second)
            throw std::invalid_argument("evaluate: duplicate candidates for " +
                                        set.key.puzzle_id + "/" + set.key.clue_id);
    }
    std::set<ClueKey> gold_keys;
    for (const auto& clue : gold) {
        if (!gold_keys.insert(clue.key()).second)
            throw std::invalid_argument("evaluate: duplicate gold clue " +
                                        clue.puzzle_id + "/" + clue.clue_id);
        if (!by_key.count(clue.key()))
            throw std::invalid_argument("evaluate: no candidates for " +
                                        clue.puzzle_id + "/" + clue.clue_id);
    }
    for (const auto& [key, unused] : by_key)
        if (!gold_keys.count(key))
            throw std::invalid_argument("evaluate: candidates for unknown clue " +
                                        key.puzzle_id + "/" + key.clue_id);

    EvalResult result;
    result.clue_count = gold.size();
    for (const auto& clue : gold) {
        const auto& raw = *by_key.at(clue.key());
        PerClueRecord rec;
        rec.key = clue.key();
        rec.gold = clue.answer;
        const auto total =
            static_cast<std::size_t>(clue.enumeration.total_letters());

        // headline: normalize, dedup keeping the first, filter by length
        std::unordered_set<std::string> seen;
        std::size_t rank = 0;
        for (const auto& c : raw) {
            const auto norm = detail::try_normalize(c.text);
            if (!norm) continue;
            if (!seen.insert(*norm).second) continue;
            if (letters_of(*norm).size() != total) continue;
            ++rank;
            if (*norm == clue.answer) {
                rec.filtered_rank = rank;
                break;
            }
        }
        rec.top1 = rec.filtered_rank == 1;
        rec.top10 = rec.filtered_rank >= 1 && rec.filtered_rank <= 10;

        // diagnostics: the first sample_size candidates, unfiltered
        rec.sampled = std::min(sample_size, raw.size());
        std::size_t right_length = 0, right_words = 0;
        for (std::size_t i = 0; i < rec.sampled; ++i) {
            const auto norm = detail::try_normalize(raw[i].text);
            if (!norm) continue;
            if (*norm == clue.answer) rec.sample_contains = true;
            if (letters_of(*norm).size() == total) ++right_length;
            if (detail::word_count(*norm) == clue.enumeration.parts.size())
                ++right_words;
        }
        if (rec.sampled > 0) {
            rec.sample_correct_length =
                static_cast<double>(right_length) / static_cast<double>(rec.sampled);
            rec.sample_correct_word_count =
                static_cast<double>(right_words) / static_cast<double>(rec.sampled);
        }

        result.top1 += rec.top1 ? 1.0 : 0.0;
        result.top10 += rec.top10 ? 1.0 : 0.0;
        result.sample_contains += rec.sample_contains ? 1.0 : 0.0;
        result.sample_correct_length += rec.sample_correct_length;
        result.sample_correct_word_count += rec.sample_correct_word_count;
        result.per_clue.push_back(std::move(rec));
    }
    const auto n = static_cast<double>(result.clue_count);
    result.top1 /= n;
    result.top10 /= n;
    result.sample_contains /= n;
    result.sample_correct_length /= n;
    result.sample_correct_word_count /= n;
    return result;
}

// ---------------------------------------------------------------------------
// Train-overlap segmentation

struct EvalSlice {
    std::size_t clue_count = 0;
    double top1 = 0.0;
    double top10 = 0.0;
};

struct OverlapSegments {
    EvalSlice seen;    // answer (or its plural class) occurs in train
    EvalSlice unseen;
};

/// Split evaluated clues by whether their answer leaks from the training
/// subset. With `plural_equivalence` a singular/plural variant in train
/// counts as leakage too. Every evaluated clue must be assigned to dev or
/// test; every corpus clue must be assigned somewhere.
inline OverlapSegments segment_by_train_overlap(const EvalResult& result,
                                                const std::vector<Clue>& corpus,
                                                const SplitAssignment& assignment,
                                                bool plural_equivalence) {
    std::set<std::string> train_answers;
    std::set<std::string> train_classes;
    for (const auto& clue : corpus) {
        const auto subset = assignment.subset_of(clue.key());
        if (!subset)
            throw std::invalid_argument("segment: clue not in split: " +
                                        clue.puzzle_id + "/" + clue.clue_id);
        if (*subset != Subset::train) continue;
        train_answers.insert(clue.answer);
        train_classes.insert(plural_class(clue.answer));
    }

    OverlapSegments out;
    auto add = [](EvalSlice& slice, const PerClueRecord& rec) {
        ++slice.clue_count;
        slice.top1 += rec.top1 ? 1.0 : 0.0;
        slice.top10 += rec.top10 ? 1.0 : 0.0;
    };
    for (const auto& rec : result.per_clue) {
        const auto subset = assignment.subset_of(rec.key);
        if (!subset || *subset == Subset::train)
            throw std::invalid_argument(
                "segment: evaluated clue not in dev or test: " +
                rec.key.puzzle_id + "/" + rec.key.clue_id);
        const bool leaked =
            train_answers.count(rec.gold) ||
            (plural_equivalence && train_classes.count(plural_class(rec.gold)));
        add(leaked ? out.seen : out.unseen, rec);
    }
    for (EvalSlice* slice : {&out.seen, &out.unseen}) {
        if (slice->clue_count == 0) continue;
        slice->top1 /= static_cast<double>(slice->clue_count);
        slice->top10 /= static_cast<double>(slice->clue_count);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Reports

enum class ReportFormat { text, json, csv };

namespace detail {

inline std::string percent(double fraction) {
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(1);
    os << fraction * 100.0 << '%';
    return os.str();
}

inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out.push_back(c);
    }
    out.push_back('"');
    return out;
}

}  // namespace detail

/// Render an evaluation. Text gives the headline block, CSV a per-clue
/// table, JSON everything; parse_report_json inverts the JSON form.
inline std::string render_report(const EvalResult& result, ReportFormat format) {
    switch (format) {
        case ReportFormat::text: {
            std::ostringstream os;
            os << "Clues evaluated: " << result.clue_count << '\n'
               << "Top correct: " << detail::percent(result.top1) << '\n'
               << "Top 10 contains: " << detail::percent(result.top10) << '\n'
               << "Sample contains answer: " << detail::percent(result.sample_contains)
               << '\n'
               << "Sample correct length: "
               << detail::percent(result.sample_correct_length) << '\n'
               << "Sample correct word count: "
               << detail::percent(result.sample_correct_word_count) << '\n';
            return os.str();
        }
        case ReportFormat::json: {
            nlohmann::ordered_json j;
            j["clue_count"] = result.clue_count;
            j["top1"] = result.top1;
            j["top10"] = result.top10;
            j["sample_contains"] = result.sample_contains;
            j["sample_correct_length"] = result.sample_correct_length;
            j["sample_correct_word_count"] = result.sample_correct_word_count;
            auto arr = nlohmann::ordered_json::array();
            for (const auto& rec : result.per_clue) {
                nlohmann::ordered_json r;
                r["puzzle_id"] = rec.key.puzzle_id;
                r["clue_id"] = rec.key.clue_id;
                r["gold"] = rec.gold;
                r["rank"] = rec.filtered_rank;
                r["top1"] = rec.top1;
                r["top10"] = rec.top10;
                r["sampled"] = rec.sampled;
                r["sample_contains"] = rec.sample_contains;
                r["sample_correct_length"] = rec.sample_correct_length;
                r["sample_correct_word_count"] = rec.sample_correct_word_count;
                arr.push_back(std::move(r));
            }
            j["per_clue"] = std::move(arr);
            return j.dump(2) + "\n";
        }
        case ReportFormat::csv: {
            std::ostringstream os;
            os << "puzzle_id,clue_id,gold,rank,top1,top10,sampled,sample_contains,"
                  "sample_correct_length,sample_correct_word_count\n";
            for (const auto& rec : result.per_clue) {
                os << detail::csv_field(rec.key.puzzle_id) << ','
                   << detail::csv_field(rec.key.clue_id) << ','
                   << detail::csv_field(rec.gold) << ',' << rec.filtered_rank << ','
                   << (rec.top1 ? 1 : 0) << ',' << (rec.top10 ? 1 : 0) << ','
                   << rec.sampled << ',' << (rec.sample_contains ? 1 : 0) << ','
                   << rec.sample_correct_length << ','
                   << rec.sample_correct_word_count << '\n';
            }
            return os.str();
        }
    }
    throw std::invalid_argument("unknown report format");
}

inline EvalResult parse_report_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_discarded() || !j.is_object() || !j.contains("per_clue"))
        throw ParseError("not an evaluation report");
    EvalResult result;
    result.clue_count = j.at("clue_count").get<std::size_t>();
    result.top1 = j.at("top1").get<double>();
    result.top10 = j.at("top10").get<double>();
    result.sample_contains = j.at("sample_contains").get<double>();
    result.sample_correct_length = j.at("sample_correct_length").get<double>();
    result.sample_correct_word_count =
        j.at("sample_correct_word_count").get<double>();
    for (const auto& r : j.at("per_clue")) {
        PerClueRecord rec;
        rec.key = ClueKey{r.at("puzzle_id").get<std::string>(),
                          r.at("clue_id").get<std::string>()};
        rec.gold = r.at("gold").get<std::string>();
        rec.filtered_rank = r.at("rank").get<std::size_t>();
        rec.top1 = r.at("top1").get<bool>();
        rec.top10 = r.at("top10").get<bool>();
        rec.sampled = r.at("sampled").get<std::size_t>();
        rec.sample_contains = r.at("sample_contains").get<bool>();
        rec.sample_correct_length = r.at("sample_correct_length").get<double>();
        rec.sample_correct_word_count =
            r.at("sample_correct_word_count").get<double>();
        result.per_clue.push_back(std::move(rec));
    }
    return result;
}

}  // namespace cryptic
