#pragma once

// Corpus handling: reading and writing clue collections as JSON lines,
// the cleaning pipeline that strips unusable records, and train/dev/test
// splitting with leakage-aware grouping policies.

#include "cryptic/core.hpp"
#include "cryptic/lexicon.hpp"
#include "cryptic/rng.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <regex>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

namespace cryptic {

// ---------------------------------------------------------------------------
// Raw records and JSONL parsing

/// One line of an input corpus file, exactly as supplied.
struct RawClueRecord {
    std::string puzzle_id;
    std::string clue_id;
    std::string clue;    // surface text, enumeration still attached
    std::string answer;  // not yet normalized
    std::string date;    // optional, ISO-8601 expected
    bool operator==(const RawClueRecord&) const = default;
};

struct RawParse {
    std::vector<RawClueRecord> records;
    std::vector<std::string> errors;  // "line N: why", malformed lines skipped
};

/// Parse JSON-lines input: one object per line with string fields
/// puzzle_id, clue_id, clue, answer and optional date. Bad lines are
/// reported, never fatal.
inline RawParse read_raw_jsonl(std::istream& in) {
    RawParse out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.is_object()) {
            out.errors.push_back("line " + std::to_string(lineno) + ": not a JSON object");
            continue;
        }
        RawClueRecord rec;
        bool ok = true;
        auto get = [&](const char* field, std::string& dst, bool required) {
            auto it = j.find(field);
            if (it == j.end()) {
                if (required) {
                    out.errors.push_back("line " + std::to_string(lineno) +
                                         ": missing field \"" + field + "\"");
                    ok = false;
                }
                return;
            }
            if (!it->is_string()) {
                out.errors.push_back("line " + std::to_string(lineno) + ": field \"" +
                                     field + "\" is not a string");
                ok = false;
                return;
            }
            dst = it->get<std::string>();
        };
        get("puzzle_id", rec.puzzle_id, true);
        get("clue_id", rec.clue_id, true);
        get("clue", rec.clue, true);
        get("answer", rec.answer, true);
        get("date", rec.date, false);
        if (ok) out.records.push_back(std::move(rec));
    }
    return out;
}

inline RawParse read_raw_jsonl_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw LoadError("cannot open corpus file: " + path);
    return read_raw_jsonl(in);
}

/// Write cleaned clues in the same schema as raw input: the canonical
/// enumeration is re-attached to the clue text, the answer is the
/// normalized form. Cleaning its own output is therefore a no-op.
inline void write_clues_jsonl(std::ostream& os, const std::vector<Clue>& clues) {
    for (const auto& c : clues) {
        nlohmann::ordered_json j;
        j["puzzle_id"] = c.puzzle_id;
        j["clue_id"] = c.clue_id;
        j["clue"] = c.clue_text + " " + render_enumeration(c.enumeration);
        j["answer"] = c.answer;
        if (!c.date.empty()) j["date"] = c.date;
        os << j.dump() << '\n';
    }
}

inline void write_clues_jsonl_file(const std::string& path,
                                   const std::vector<Clue>& clues) {
    std::ofstream os(path);
    if (!os) throw LoadError("cannot write corpus file: " + path);
    write_clues_jsonl(os, clues);
}

// ---------------------------------------------------------------------------
// Record-level parsing shared by clean() and strict loading

namespace detail {

/// Split "clue text (8,4)" into text and enumeration. The enumeration is
/// whatever follows the last '('.
inline std::pair<std::string, Enumeration> split_trailing_enumeration(
    const std::string& clue) {
    const auto open = clue.rfind('(');
    if (open == std::string::npos)
        throw ParseError("clue \"" + clue + "\" has no enumeration");
    const Enumeration e = parse_enumeration(std::string_view(clue).substr(open));
    std::string text = clue.substr(0, open);
    while (!text.empty() &&
           std::isspace(static_cast<unsigned char>(text.back())))
        text.pop_back();
    if (text.empty()) throw ParseError("clue \"" + clue + "\" has no text");
    return {std::move(text), e};
}

inline const std::regex& cross_reference_pattern() {
    // "See 12", "12 across", "4 down": the clue depends on another entry.
    static const std::regex re(
        R"((^|[^a-z0-9])(\d+\s+(across|down)|see\s+\d+)([^a-z0-9]|$))",
        std::regex::icase);
    return re;
}

inline const std::regex& html_entity_pattern() {
    static const std::regex re(R"(&(#[0-9]+|[a-zA-Z]+);)");
    return re;
}

/// Case-folded, whitespace-collapsed view of clue text for duplicate keys.
inline std::string fold_for_dup(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    bool pending = false;
    for (char ch : text) {
        const char c = to_lower_ascii(ch);
        if (std::isspace(static_cast<unsigned char>(c))) {
            pending = !out.empty();
            continue;
        }
        if (pending) {
            out.push_back(' ');
            pending = false;
        }
        out.push_back(c);
    }
    return out;
}

/// Strict conversion of one raw record; throws ParseError on any defect.
inline Clue parse_record(const RawClueRecord& rec) {
    if (rec.puzzle_id.empty()) throw ParseError("empty puzzle_id");
    if (rec.clue_id.empty()) throw ParseError("empty clue_id");
    if (rec.clue.empty()) throw ParseError("empty clue");
    if (rec.answer.empty()) throw ParseError("empty answer");
    if (std::regex_search(rec.clue, html_entity_pattern()))
        throw ParseError("clue \"" + rec.clue + "\" contains an unparsed HTML entity");
    auto [text, enumeration] = split_trailing_enumeration(rec.clue);
    Clue c;
    c.puzzle_id = rec.puzzle_id;
    c.clue_id = rec.clue_id;
    c.clue_text = std::move(text);
    c.enumeration = enumeration;
    c.answer = normalize_answer(rec.answer);
    c.date = rec.date;
    if (!matches_enumeration(c.answer, c.enumeration))
        throw ParseError("answer \"" + c.answer + "\" does not fit " +
                         render_enumeration(c.enumeration));
    return c;
}

}  // namespace detail

/// Strictly load an already-cleaned JSONL corpus. Lines that fail the
/// cleaned-data invariants are reported as errors and skipped.
struct LoadedClues {
    std::vector<Clue> clues;
    std::vector<std::string> errors;
};

inline LoadedClues load_clues(std::istream& in) {
    LoadedClues out;
    RawParse raw = read_raw_jsonl(in);
    out.errors = std::move(raw.errors);
    std::size_t index = 0;
    for (const auto& rec : raw.records) {
        ++index;
        try {
            out.clues.push_back(detail::parse_record(rec));
        } catch (const ParseError& e) {
            out.errors.push_back("record " + std::to_string(index) + " (" +
                                 rec.puzzle_id + "/" + rec.clue_id + "): " + e.what());
        }
    }
    return out;
}

inline LoadedClues load_clues_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw LoadError("cannot open corpus file: " + path);
    return load_clues(in);
}

// ---------------------------------------------------------------------------
// Cleaning

/// Why a record was dropped, in the order the rules run.
enum class RemovalReason { cross_reference, ill_formatted, exact_duplicate };

struct CleanReport {
    std::size_t input_count = 0;
    std::size_t retained = 0;
    std::size_t cross_reference = 0;
    std::size_t ill_formatted = 0;
    std::size_t exact_duplicate = 0;
    std::vector<std::string> errors;  // one entry per ill-formatted record

    /// Every input is retained or counted under exactly one removal rule.
    bool consistent() const {
        return retained + cross_reference + ill_formatted + exact_duplicate ==
               input_count;
    }
};

struct CleanResult {
    std::vector<Clue> clues;  // input order
    CleanReport report;
};

/// The cleaning pipeline. Rules run per record in a fixed order: clues
/// referencing other grid entries go first, then records that fail to
/// parse (missing fields, bad enumeration, HTML entities, answer/pattern
/// mismatch), and finally exact duplicates of an earlier-dated survivor
/// (same folded clue text and normalized answer).
inline CleanResult clean(const std::vector<RawClueRecord>& records) {
    CleanResult out;
    out.report.input_count = records.size();

    struct Kept {
        Clue clue;
        std::string dup_key;
        std::size_t index;
    };
    std::vector<Kept> kept;
    std::size_t index = 0;
    for (const auto& rec : records) {
        ++index;
        if (std::regex_search(rec.clue, detail::cross_reference_pattern())) {
            ++out.report.cross_reference;
            continue;
        }
        Clue c;
        try {
            c = detail::parse_record(rec);
        } catch (const ParseError& e) {
            ++out.report.ill_formatted;
            out.report.errors.push_back("record " + std::to_string(index) + " (" +
                                        rec.puzzle_id + "/" + rec.clue_id +
                                        "): " + e.what());
            continue;
        }
        kept.push_back(Kept{std::move(c), detail::fold_for_dup(rec.clue), index - 1});
    }

    // Duplicate resolution: keep the earliest-dated copy, breaking ties by
    // input position. Undated records count as latest.
    std::unordered_map<std::string, std::size_t> best;  // dup key -> kept index
    auto order_key = [](const Kept& k) {
        return std::make_pair(k.clue.date.empty() ? "9999-12-31" : k.clue.date,
                              k.index);
    };
    for (std::size_t i = 0; i < kept.size(); ++i) {
        const std::string key = kept[i].dup_key + '\x1f' + kept[i].clue.answer;
        auto [it, inserted] = best.try_emplace(key, i);
        if (!inserted && order_key(kept[i]) < order_key(kept[it->second]))
            it->second = i;
    }
    std::vector<bool> keep_flag(kept.size(), false);
    for (const auto& [key, i] : best) keep_flag[i] = true;
    for (std::size_t i = 0; i < kept.size(); ++i) {
        if (keep_flag[i]) out.clues.push_back(std::move(kept[i].clue));
        else ++out.report.exact_duplicate;
    }
    out.report.retained = out.clues.size();
    return out;
}

// ---------------------------------------------------------------------------
// Splitting

enum class SplitPolicy { naive, disjoint, word_initial_disjoint };
enum class Subset { train, dev, test };

inline const char* to_string(SplitPolicy p) {
    switch (p) {
        case SplitPolicy::naive: return "naive";
        case SplitPolicy::disjoint: return "disjoint";
        case SplitPolicy::word_initial_disjoint: return "word_initial";
    }
    return "unknown";
}

inline const char* to_string(Subset s) {
    switch (s) {
        case Subset::train: return "train";
        case Subset::dev: return "dev";
        case Subset::test: return "test";
    }
    return "unknown";
}

inline std::optional<SplitPolicy> split_policy_from_string(std::string_view s) {
    if (s == "naive") return SplitPolicy::naive;
    if (s == "disjoint") return SplitPolicy::disjoint;
    if (s == "word_initial") return SplitPolicy::word_initial_disjoint;
    return std::nullopt;
}

inline std::optional<Subset> subset_from_string(std::string_view s) {
    if (s == "train") return Subset::train;
    if (s == "dev") return Subset::dev;
    if (s == "test") return Subset::test;
    return std::nullopt;
}

struct Fractions {
    double train = 0.6;
    double dev = 0.2;
    double test = 0.2;
};

struct SplitAssignment {
    SplitPolicy policy = SplitPolicy::naive;
    std::uint64_t seed = 0;
    Fractions fractions;
    std::vector<std::pair<ClueKey, Subset>> entries;  // input order

    std::optional<Subset> subset_of(const ClueKey& key) const {
        build_index();
        auto it = index_.find(key);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    std::size_t count(Subset s) const {
        std::size_t n = 0;
        for (const auto& [k, v] : entries)
            if (v == s) ++n;
        return n;
    }

private:
    void build_index() const {
        if (index_.size() == entries.size()) return;
        index_.clear();
        for (const auto& [k, v] : entries) index_.emplace(k, v);
    }
    mutable std::unordered_map<ClueKey, Subset, ClueKeyHash> index_;
};

namespace detail {

/// First two letters of the answer with spaces removed; one-letter answers
/// group by their single letter.
inline std::string word_initial_key(const std::string& answer) {
    const std::string letters = letters_of(answer);
    return letters.substr(0, std::min<std::size_t>(2, letters.size()));
}

inline void check_fractions(const Fractions& f) {
    if (f.train < 0 || f.dev < 0 || f.test < 0)
        throw std::invalid_argument("split: negative fraction");
    const double sum = f.train + f.dev + f.test;
    if (std::abs(sum - 1.0) > 1e-9)
        throw std::invalid_argument("split: fractions sum to " + std::to_string(sum) +
                                    ", expected 1");
}

}  // namespace detail

/// Assign clues to train/dev/test. `naive` permutes clues uniformly;
/// `disjoint` keeps every answer inside one subset; `word_initial_disjoint`
/// keeps every two-letter answer prefix inside one subset (so inflected
/// and related forms cannot leak across). Grouped policies shuffle the
/// groups and fill train, then dev, then test to their clue-count targets,
/// overshooting by at most one group each. Same seed, same assignment.
inline SplitAssignment split(const std::vector<Clue>& clues, SplitPolicy policy,
                             std::uint64_t seed, const Fractions& fractions = {}) {
    detail::check_fractions(fractions);
    if (clues.empty()) throw std::invalid_argument("split: no clues");

    const std::size_t n = clues.size();
    SplitAssignment out;
    out.policy = policy;
    out.seed = seed;
    out.fractions = fractions;

    std::vector<Subset> assigned(n, Subset::train);
    Rng rng(seed);

    if (policy == SplitPolicy::naive) {
        std::vector<std::size_t> order(n);
        for (std::size_t i = 0; i < n; ++i) order[i] = i;
        rng.shuffle(order);
        const auto n_train = static_cast<std::size_t>(
            std::llround(fractions.train * static_cast<double>(n)));
        const auto n_train_dev = static_cast<std::size_t>(std::llround(
            (fractions.train + fractions.dev) * static_cast<double>(n)));
        for (std::size_t pos = 0; pos < n; ++pos) {
            Subset s = pos < n_train ? Subset::train
                       : pos < n_train_dev ? Subset::dev
                                           : Subset::test;
            assigned[order[pos]] = s;
        }
    } else {
        // group clues, first-seen order, then shuffle groups
        std::unordered_map<std::string, std::size_t> group_of;
        std::vector<std::vector<std::size_t>> groups;
        for (std::size_t i = 0; i < n; ++i) {
            const std::string key = policy == SplitPolicy::disjoint
                                        ? clues[i].answer
                                        : detail::word_initial_key(clues[i].answer);
            auto [it, inserted] = group_of.try_emplace(key, groups.size());
            if (inserted) groups.emplace_back();
            groups[it->second].push_back(i);
        }
        if (groups.size() < 3)
            throw std::invalid_argument(
                "split: need at least 3 disjoint groups, found " +
                std::to_string(groups.size()));
        rng.shuffle(groups);
        const double t1 = fractions.train * static_cast<double>(n);
        const double t2 = (fractions.train + fractions.dev) * static_cast<double>(n);
        std::size_t filled = 0;
        for (const auto& g : groups) {
            Subset s = static_cast<double>(filled) < t1   ? Subset::train
                       : static_cast<double>(filled) < t2 ? Subset::dev
                                                          : Subset::test;
            for (std::size_t i : g) assigned[i] = s;
            filled += g.size();
        }
    }

    out.entries.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        out.entries.emplace_back(clues[i].key(), assigned[i]);
    return out;
}

// ---------------------------------------------------------------------------
// Split JSONL

inline void write_split_jsonl(std::ostream& os, const SplitAssignment& a) {
    for (const auto& [key, subset] : a.entries) {
        nlohmann::ordered_json j;
        j["puzzle_id"] = key.puzzle_id;
        j["clue_id"] = key.clue_id;
        j["subset"] = to_string(subset);
        os << j.dump() << '\n';
    }
}

inline void write_split_jsonl_file(const std::string& path, const SplitAssignment& a) {
    std::ofstream os(path);
    if (!os) throw LoadError("cannot write split file: " + path);
    write_split_jsonl(os, a);
}

/// Read subset assignments. Policy, seed and fractions are not stored in
/// the JSONL (the run manifest records them); defaults are left in place.
inline SplitAssignment read_split_jsonl(std::istream& in) {
    SplitAssignment out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.is_object() || !j.contains("puzzle_id") ||
            !j.contains("clue_id") || !j.contains("subset"))
            throw LoadError("split line " + std::to_string(lineno) +
                            ": expected {puzzle_id, clue_id, subset}");
        const auto subset = subset_from_string(j["subset"].get<std::string>());
        if (!subset)
            throw LoadError("split line " + std::to_string(lineno) +
                            ": unknown subset \"" + j["subset"].get<std::string>() +
                            "\"");
        out.entries.emplace_back(
            ClueKey{j["puzzle_id"].get<std::string>(), j["clue_id"].get<std::string>()},
            *subset);
    }
    return out;
}

inline SplitAssignment read_split_jsonl_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw LoadError("cannot open split file: " + path);
    return read_split_jsonl(in);
}

// ---------------------------------------------------------------------------
// Answer statistics and leakage audit

struct AnswerStats {
    std::size_t clue_count = 0;
    std::size_t unique_answers = 0;
    std::size_t unique_plural_classes = 0;
    double mean_clues_per_answer = 0.0;
};

inline AnswerStats answer_stats(const std::vector<Clue>& clues) {
    if (clues.empty()) throw std::invalid_argument("answer_stats: no clues");
    std::set<std::string> answers, classes;
    for (const auto& c : clues) {
        answers.insert(c.answer);
        classes.insert(plural_class(c.answer));
    }
    AnswerStats s;
    s.clue_count = clues.size();
    s.unique_answers = answers.size();
    s.unique_plural_classes = classes.size();
    s.mean_clues_per_answer =
        static_cast<double>(clues.size()) / static_cast<double>(answers.size());
    return s;
}

struct OverlapPart {
    std::size_t clue_count = 0;
    double answer_in_train = 0.0;        // exact-match fraction
    double plural_class_in_train = 0.0;  // fraction matching up to plural form
};

struct OverlapReport {
    OverlapPart dev;
    OverlapPart test;
};

/// How much of dev/test leaks from train: the fraction of clues whose
/// answer (exactly, or up to the plural class) also answers some train
/// clue. Every clue must be present in the assignment.
inline OverlapReport audit_overlap(const std::vector<Clue>& clues,
                                   const SplitAssignment& assignment) {
    std::set<std::string> train_answers, train_classes;
    for (const auto& c : clues) {
        const auto s = assignment.subset_of(c.key());
        if (!s)
            throw std::invalid_argument("audit_overlap: clue " + c.puzzle_id + "/" +
                                        c.clue_id + " missing from split");
        if (*s == Subset::train) {
            train_answers.insert(c.answer);
            train_classes.insert(plural_class(c.answer));
        }
    }
    OverlapReport report;
    std::size_t dev_hit = 0, dev_class_hit = 0, test_hit = 0, test_class_hit = 0;
    for (const auto& c : clues) {
        const auto s = *assignment.subset_of(c.key());
        if (s == Subset::train) continue;
        const bool exact = train_answers.count(c.answer) != 0;
        const bool cls = train_classes.count(plural_class(c.answer)) != 0;
        if (s == Subset::dev) {
            ++report.dev.clue_count;
            dev_hit += exact;
            dev_class_hit += cls;
        } else {
            ++report.test.clue_count;
            test_hit += exact;
            test_class_hit += cls;
        }
    }
    auto frac = [](std::size_t num, std::size_t den) {
        return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
    };
    report.dev.answer_in_train = frac(dev_hit, report.dev.clue_count);
    report.dev.plural_class_in_train = frac(dev_class_hit, report.dev.clue_count);
    report.test.answer_in_train = frac(test_hit, report.test.clue_count);
    report.test.plural_class_in_train = frac(test_class_hit, report.test.clue_count);
    return report;
}

}  // namespace cryptic
