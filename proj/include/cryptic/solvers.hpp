#pragma once

// The three non-neural solvers:
//   - rule-based transformation search over definition/indicator readings
//   - reverse-dictionary lookup from the clue's edge tokens
//   - k-nearest-neighbour retrieval over bag-of-words clue vectors
// plus the candidate-list and seq2seq text formats they exchange.

#include "cryptic/core.hpp"
#include "cryptic/corpus.hpp"
#include "cryptic/lexicon.hpp"
#include "cryptic/wordplay.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

namespace cryptic {

// ---------------------------------------------------------------------------
// Linking words

/// Connectives that glue wordplay to definition ("makes", "for", "a") and
/// never carry fodder. Kept disjoint from every indicator phrase; tests
/// enforce this against the bundled table.
inline const std::set<std::string>& linking_words() {
    static const std::set<std::string> words = {
        "a",         "an",        "and",      "are",      "as",
        "be",        "becomes",   "becoming", "been",     "being",
        "by",        "causes",    "causing",  "creates",  "creating",
        "did",       "does",      "doing",    "done",     "for",
        "from",      "gave",      "gets",     "getting",  "gives",
        "giving",    "got",       "had",      "has",      "have",
        "having",    "is",        "it",       "its",      "made",
        "makes",     "making",    "maybe",    "might",    "must",
        "of",        "or",        "perhaps",  "possibly", "produces",
        "producing", "provides",  "providing", "resulting", "results",
        "shall",     "should",    "so",       "that",     "the",
        "these",     "this",      "those",    "to",       "was",
        "were",      "will",      "with",     "would",    "yielding",
        "yields",
    };
    return words;
}

// ---------------------------------------------------------------------------
// Rule-based solver

struct SolverConfig {
    std::size_t max_candidates = 100;
    std::chrono::milliseconds timeout{120000};
    std::size_t definition_max_tokens = 3;
    double definition_weight = 1.0;
    double type_weight = 0.1;
    // reverse-lookup reach when scoring a definition reading
    int lookup_hypo_depth = 1;
    int lookup_hyper_depth = 1;
};

struct SolveResult {
    std::vector<CandidateAnswer> candidates;
    bool timed_out = false;
};

namespace detail {

class CandidatePool {
public:
    /// Keep the best-scoring derivation per candidate text. Equal scores
    /// keep the earliest derivation found.
    void offer(std::string text, double score, Derivation derivation) {
        auto it = best_.find(text);
        if (it == best_.end()) {
            best_.emplace(std::move(text), std::make_pair(score, std::move(derivation)));
        } else if (score > it->second.first) {
            it->second = {score, std::move(derivation)};
        }
    }

    std::vector<CandidateAnswer> ranked(std::size_t limit) const {
        std::vector<CandidateAnswer> out;
        out.reserve(best_.size());
        for (const auto& [text, sd] : best_)
            out.push_back(CandidateAnswer{text, sd.first, sd.second});
        std::sort(out.begin(), out.end(), candidate_before);
        if (out.size() > limit) out.resize(limit);
        return out;
    }

private:
    std::unordered_map<std::string, std::pair<double, Derivation>> best_;
};

/// Similarity of a candidate to a definition reading: 1 when the lookup
/// set contains it, otherwise the letter-overlap fraction of the
/// candidate's letters.
inline double definition_similarity(const std::string& candidate,
                                    const std::string& def_phrase,
                                    const std::set<std::string>& def_lookup) {
    if (def_lookup.count(candidate)) return 1.0;
    const std::size_t len = letters_of(candidate).size();
    if (len == 0) return 0.0;
    return static_cast<double>(char_overlap_score(candidate, def_phrase)) /
           static_cast<double>(len);
}

}  // namespace detail

/// Transformation search. Every prefix/suffix of up to
/// `definition_max_tokens` tokens is tried as the definition; linking
/// words adjacent to it are peeled off the remaining fodder; indicator
/// phrases in the fodder choose which wordplay operations run on the rest.
/// Double definitions try every two-phrase split of the whole clue.
/// Candidates score definition_weight * similarity + type_weight, are
/// deduplicated best-first, ranked score-descending (ties alphabetical)
/// and cut to max_candidates. The timeout returns partial results with
/// `timed_out` set.
inline SolveResult solve_rule_based(const Clue& clue, const Lexicon& lex,
                                    const IndicatorTable& indicators,
                                    const SolverConfig& config = {}) {
    SolveResult result;
    const auto tokens = tokenize(clue.clue_text);
    const std::size_t n = tokens.size();
    if (n == 0) return result;

    const Deadline deadline = Deadline::after(config.timeout);
    const int total = clue.enumeration.total_letters();
    const bool single_part = clue.enumeration.parts.size() == 1;
    detail::CandidatePool pool;

    auto expired = [&] {
        if (deadline.expired()) {
            result.timed_out = true;
            return true;
        }
        return false;
    };

    auto lookup = [&](const std::string& phrase) {
        return reverse_lookup(phrase, lex, config.lookup_hypo_depth,
                              config.lookup_hyper_depth, false);
    };

    const auto join_tokens = [&](std::size_t begin, std::size_t end) {
        std::string out;
        for (std::size_t i = begin; i < end; ++i) {
            if (!out.empty()) out.push_back(' ');
            out += tokens[i].text;
        }
        return out;
    };
    const auto char_span = [&](std::size_t begin, std::size_t end) {
        return Span{tokens[begin].begin, tokens[end - 1].end};
    };

    // --- double definitions: cheap, so they run before the heavy passes
    for (std::size_t k = 1; k < n && !expired(); ++k) {
        const std::string left = join_tokens(0, k);
        const std::string right = join_tokens(k, n);
        const auto left_set = lookup(left);
        if (left_set.empty()) continue;
        const auto right_set = lookup(right);
        if (right_set.empty()) continue;
        for (const auto& w : left_set) {
            if (!right_set.count(w)) continue;
            if (!matches_enumeration(w, clue.enumeration)) continue;
            Derivation d;
            d.clue_type = ClueType::double_definition;
            d.definition_span = char_span(0, k);
            d.inputs = {left, right};
            pool.offer(w, config.definition_weight + config.type_weight,
                       std::move(d));
        }
    }

    // --- definition + wordplay readings
    struct Reading {
        std::string def_phrase;
        Span def_span;
        std::size_t fodder_begin, fodder_end;  // token range
    };
    std::vector<Reading> readings;
    const std::size_t max_def = std::min(config.definition_max_tokens, n - 1);
    for (std::size_t len = 1; len <= max_def; ++len) {
        readings.push_back(
            Reading{join_tokens(0, len), char_span(0, len), len, n});
        readings.push_back(
            Reading{join_tokens(n - len, n), char_span(n - len, n), 0, n - len});
    }

    for (const auto& reading : readings) {
        if (expired()) break;
        const bool def_is_prefix = reading.fodder_end == n;
        const auto def_lookup = lookup(reading.def_phrase);
        auto offer = [&](std::string text, ClueType type,
                         std::optional<Span> indicator_span,
                         std::vector<std::string> inputs) {
            if (!matches_enumeration(text, clue.enumeration)) return;
            const double sim =
                detail::definition_similarity(text, reading.def_phrase, def_lookup);
            Derivation d;
            d.clue_type = type;
            d.definition_span = reading.def_span;
            d.indicator_span = indicator_span;
            d.inputs = std::move(inputs);
            pool.offer(std::move(text),
                       config.definition_weight * sim + config.type_weight,
                       std::move(d));
        };

        auto process = [&](std::size_t fb, std::size_t fe) {
            std::vector<std::string> fodder_texts;
            for (std::size_t i = fb; i < fe; ++i)
                fodder_texts.push_back(tokens[i].text);
            const auto hits = detect_indicators(fodder_texts, indicators);

            for (const auto& hit : hits) {
                if (expired()) break;
                // fodder tokens left after removing the indicator span
                std::vector<std::size_t> rest;
                for (std::size_t i = fb; i < fe; ++i)
                    if (i - fb < hit.begin || i - fb >= hit.end) rest.push_back(i);
                if (rest.empty()) continue;
                const Span ind_span = char_span(fb + hit.begin, fb + hit.end);

                switch (hit.type) {
                    case ClueType::anagram: {
                        std::string fodder;
                        for (std::size_t i : rest) fodder += tokens[i].text;
                        if (static_cast<int>(fodder.size()) != total) break;
                        for (const auto& w : anagram_solutions(
                                 fodder, clue.enumeration, lex, &deadline))
                            offer(w, ClueType::anagram, ind_span, {fodder});
                        if (deadline.expired()) result.timed_out = true;
                        break;
                    }
                    case ClueType::initialism: {
                        if (rest.size() != static_cast<std::size_t>(total)) break;
                        std::vector<std::string> words;
                        for (std::size_t i : rest) words.push_back(tokens[i].text);
                        std::string s = initialism(words);
                        // shape the letters into the answer pattern; every
                        // part must be a lexicon word
                        std::string shaped;
                        std::size_t off = 0;
                        bool ok = true;
                        for (int part : clue.enumeration.parts) {
                            const std::string piece =
                                s.substr(off, static_cast<std::size_t>(part));
                            if (!lex.contains(piece)) {
                                ok = false;
                                break;
                            }
                            if (!shaped.empty()) shaped.push_back(' ');
                            shaped += piece;
                            off += static_cast<std::size_t>(part);
                        }
                        if (ok) offer(shaped, ClueType::initialism, ind_span, {s});
                        break;
                    }
                    case ClueType::hidden: {
                        if (!single_part) break;
                        std::string phrase;
                        for (std::size_t i : rest) {
                            if (!phrase.empty()) phrase.push_back(' ');
                            phrase += tokens[i].text;
                        }
                        for (const auto& h : hidden_words(
                                 phrase, static_cast<std::size_t>(total), lex))
                            offer(h.word, ClueType::hidden, ind_span, {phrase});
                        break;
                    }
                    case ClueType::reversal: {
                        if (!single_part) break;
                        for (std::size_t i : rest) {
                            const auto& w = tokens[i].text;
                            if (static_cast<int>(w.size()) != total) continue;
                            if (auto rev = reversal(w, lex))
                                offer(*rev, ClueType::reversal, ind_span, {w});
                        }
                        break;
                    }
                    case ClueType::insertion: {
                        if (!single_part) break;
                        for (std::size_t i : rest) {
                            for (std::size_t j : rest) {
                                if (i == j) continue;
                                const auto& outer = tokens[i].text;
                                const auto& inner = tokens[j].text;
                                if (static_cast<int>(outer.size() + inner.size()) !=
                                    total)
                                    continue;
                                for (const auto& w : insertions(outer, inner, lex))
                                    offer(w, ClueType::insertion, ind_span,
                                          {outer, inner});
                            }
                        }
                        break;
                    }
                    case ClueType::substring_initial:
                    case ClueType::substring_middle:
                    case ClueType::substring_final: {
                        if (!single_part) break;
                        const SubstringKind kind =
                            hit.type == ClueType::substring_initial
                                ? SubstringKind::initial
                            : hit.type == ClueType::substring_middle
                                ? SubstringKind::middle
                                : SubstringKind::final;
                        for (std::size_t i : rest) {
                            const auto& w = tokens[i].text;
                            if (static_cast<int>(w.size()) <= total) continue;
                            for (const auto& sub : substrings(w, kind, lex))
                                if (static_cast<int>(sub.size()) == total)
                                    offer(sub, hit.type, ind_span, {w});
                        }
                        break;
                    }
                    default:
                        break;
                }
            }
        };

        // Work on the fodder as-is, then peel connectives one at a time off
        // the edge touching the definition and look again: "makes a <def>"
        // needs two peels, while an indicator like "beginnings of" must be
        // seen whole before its trailing "of" looks like glue.
        std::size_t fb = reading.fodder_begin, fe = reading.fodder_end;
        while (fb < fe && !result.timed_out) {
            process(fb, fe);
            const std::string& edge = tokens[def_is_prefix ? fb : fe - 1].text;
            if (!linking_words().count(edge)) break;
            if (def_is_prefix) ++fb;
            else --fe;
        }
        if (result.timed_out) break;
    }

    result.candidates = pool.ranked(config.max_candidates);
    return result;
}

// ---------------------------------------------------------------------------
// Reverse-dictionary solver

/// Baseline: hope one edge token is the definition. Looks up synonyms and
/// depth-1 hyponyms of the clue's first and last tokens (no hypernyms, no
/// inflections), keeps words whose space-free length matches the pattern,
/// and ranks by letter overlap with the whole clue text.
inline std::vector<CandidateAnswer> solve_reverse_dictionary(const Clue& clue,
                                                             const Lexicon& lex) {
    const auto tokens = tokenize(clue.clue_text);
    if (tokens.empty()) return {};
    const auto total = static_cast<std::size_t>(clue.enumeration.total_letters());

    std::string joined;
    for (const auto& t : tokens) {
        if (!joined.empty()) joined.push_back(' ');
        joined += t.text;
    }

    std::map<std::string, Span> found;  // candidate -> definition span
    auto probe = [&](const Token& t) {
        for (const auto& w : reverse_lookup(t.text, lex, 1, 0, false))
            if (letters_of(w).size() == total)
                found.try_emplace(w, Span{t.begin, t.end});
    };
    probe(tokens.front());
    if (tokens.size() > 1) probe(tokens.back());

    std::vector<CandidateAnswer> out;
    out.reserve(found.size());
    for (const auto& [w, span] : found) {
        Derivation d;
        d.clue_type = ClueType::definition_only;
        d.definition_span = span;
        d.inputs = {w};
        out.push_back(CandidateAnswer{
            w, static_cast<double>(char_overlap_score(w, joined)), std::move(d)});
    }
    std::sort(out.begin(), out.end(), candidate_before);
    return out;
}

// ---------------------------------------------------------------------------
// KNN solver

/// Nearest-neighbour retrieval over clue bag-of-words count vectors with
/// Euclidean distance. Optionally appends the rendered enumeration as an
/// extra vocabulary token, mirroring training text that carries lengths.
class KnnModel {
public:
    static KnnModel fit(const std::vector<Clue>& train, bool include_lengths) {
        if (train.empty()) throw std::invalid_argument("knn: empty training set");
        KnnModel m;
        m.include_lengths_ = include_lengths;
        for (const auto& clue : train) {
            Row row;
            row.counts = m.vectorize(clue, /*grow_vocab=*/true);
            row.norm2 = norm2(row.counts);
            m.rows_.push_back(std::move(row));
            m.answers_.push_back(clue.answer);
        }
        if (m.vocab_.empty()) throw std::invalid_argument("knn: empty vocabulary");
        return m;
    }

    /// Up to k distinct answers, nearest first. Query tokens outside the
    /// fitted vocabulary are dropped, as a fitted count-vectorizer would.
    /// Distance ties resolve to the earliest training clue. Scores are
    /// negated distances so larger is better.
    std::vector<CandidateAnswer> predict(const Clue& query, std::size_t k = 10) const {
        const auto q = vectorize_const(query);
        const long long qn = norm2(q);

        std::vector<std::pair<long long, std::size_t>> order;  // (dist^2, row)
        order.reserve(rows_.size());
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            const long long d2 = qn + rows_[r].norm2 - 2 * dot(q, rows_[r].counts);
            order.emplace_back(d2, r);
        }
        std::sort(order.begin(), order.end());

        std::vector<CandidateAnswer> out;
        std::set<std::string> seen;
        for (const auto& [d2, r] : order) {
            if (out.size() >= k) break;
            if (!seen.insert(answers_[r]).second) continue;
            out.push_back(CandidateAnswer{
                answers_[r], -std::sqrt(static_cast<double>(d2)), std::nullopt});
        }
        return out;
    }

    std::size_t train_size() const { return rows_.size(); }
    std::size_t vocabulary_size() const { return vocab_.size(); }
    bool include_lengths() const { return include_lengths_; }

private:
    using Counts = std::vector<std::pair<std::size_t, int>>;  // (token id, count)
    struct Row {
        Counts counts;
        long long norm2 = 0;
    };

    std::vector<std::string> clue_tokens(const Clue& clue) const {
        std::vector<std::string> toks;
        for (const auto& t : tokenize(clue.clue_text)) toks.push_back(t.text);
        if (include_lengths_) toks.push_back(render_enumeration(clue.enumeration));
        return toks;
    }

    Counts vectorize(const Clue& clue, bool grow_vocab) {
        std::map<std::size_t, int> acc;
        for (const auto& tok : clue_tokens(clue)) {
            auto it = vocab_.find(tok);
            if (it == vocab_.end()) {
                if (!grow_vocab) continue;
                it = vocab_.emplace(tok, vocab_.size()).first;
            }
            ++acc[it->second];
        }
        return Counts(acc.begin(), acc.end());
    }

    Counts vectorize_const(const Clue& clue) const {
        std::map<std::size_t, int> acc;
        for (const auto& tok : clue_tokens(clue)) {
            auto it = vocab_.find(tok);
            if (it != vocab_.end()) ++acc[it->second];
        }
        return Counts(acc.begin(), acc.end());
    }

    static long long norm2(const Counts& c) {
        long long out = 0;
        for (const auto& [id, n] : c) out += static_cast<long long>(n) * n;
        return out;
    }

    static long long dot(const Counts& a, const Counts& b) {
        long long out = 0;
        std::size_t i = 0, j = 0;
        while (i < a.size() && j < b.size()) {
            if (a[i].first < b[j].first) ++i;
            else if (a[i].first > b[j].first) ++j;
            else out += static_cast<long long>(a[i++].second) * b[j++].second;
        }
        return out;
    }

    std::unordered_map<std::string, std::size_t> vocab_;
    std::vector<Row> rows_;
    std::vector<std::string> answers_;
    bool include_lengths_ = false;
};

// ---------------------------------------------------------------------------
// seq2seq text format

struct Seq2SeqExample {
    std::string clue_text;
    std::optional<Enumeration> enumeration;
    std::string answer;
    bool operator==(const Seq2SeqExample&) const = default;
};

/// "<clue text> (<pattern>) => <answer>"; the pattern is omitted when
/// `with_lengths` is off.
inline std::string seq2seq_line(const Clue& clue, bool with_lengths) {
    std::string out = clue.clue_text;
    if (with_lengths) {
        out += ' ';
        out += render_enumeration(clue.enumeration);
    }
    out += " => ";
    out += clue.answer;
    return out;
}

inline std::vector<std::string> export_seq2seq(const std::vector<Clue>& clues,
                                               bool with_lengths) {
    std::vector<std::string> out;
    out.reserve(clues.size());
    for (const auto& c : clues) out.push_back(seq2seq_line(c, with_lengths));
    return out;
}

/// Invert seq2seq_line. The answer is whatever follows the last " => ";
/// a trailing "(...)" on the input side is parsed back into a pattern.
inline Seq2SeqExample parse_seq2seq_line(const std::string& line) {
    const auto sep = line.rfind(" => ");
    if (sep == std::string::npos)
        throw ParseError("seq2seq line without \" => \": " + line);
    Seq2SeqExample out;
    out.answer = line.substr(sep + 4);
    std::string input = line.substr(0, sep);
    const auto open = input.rfind('(');
    if (open != std::string::npos && input.back() == ')') {
        out.enumeration = parse_enumeration(std::string_view(input).substr(open));
        input = input.substr(0, open);
        while (!input.empty() && input.back() == ' ') input.pop_back();
    }
    if (input.empty()) throw ParseError("seq2seq line without input: " + line);
    out.clue_text = std::move(input);
    return out;
}

// ---------------------------------------------------------------------------
// Candidate list JSONL

struct CandidateSet {
    ClueKey key;
    std::vector<CandidateAnswer> candidates;
    bool operator==(const CandidateSet&) const = default;
};

inline void write_candidates_jsonl(std::ostream& os,
                                   const std::vector<CandidateSet>& sets) {
    for (const auto& set : sets) {
        nlohmann::ordered_json j;
        j["puzzle_id"] = set.key.puzzle_id;
        j["clue_id"] = set.key.clue_id;
        auto arr = nlohmann::ordered_json::array();
        for (const auto& c : set.candidates) {
            nlohmann::ordered_json cj;
            cj["text"] = c.text;
            cj["score"] = c.score;
            if (c.derivation) {
                cj["type"] = to_string(c.derivation->clue_type);
                cj["definition"] = {c.derivation->definition_span.begin,
                                    c.derivation->definition_span.end};
                if (c.derivation->indicator_span)
                    cj["indicator"] = {c.derivation->indicator_span->begin,
                                       c.derivation->indicator_span->end};
                if (!c.derivation->inputs.empty()) cj["inputs"] = c.derivation->inputs;
            }
            arr.push_back(std::move(cj));
        }
        j["candidates"] = std::move(arr);
        os << j.dump() << '\n';
    }
}

inline void write_candidates_jsonl_file(const std::string& path,
                                        const std::vector<CandidateSet>& sets) {
    std::ofstream os(path);
    if (!os) throw LoadError("cannot write candidates file: " + path);
    write_candidates_jsonl(os, sets);
}

struct CandidateImport {
    std::vector<CandidateSet> sets;
    std::vector<std::string> errors;
};

/// Read candidate lists. Malformed lines and repeated clue ids are
/// reported as errors and skipped.
inline CandidateImport import_candidates(std::istream& in) {
    CandidateImport out;
    std::set<ClueKey> seen;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        auto bad = [&](const std::string& why) {
            out.errors.push_back("line " + std::to_string(lineno) + ": " + why);
        };
        nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.is_object()) {
            bad("not a JSON object");
            continue;
        }
        if (!j.contains("puzzle_id") || !j["puzzle_id"].is_string() ||
            !j.contains("clue_id") || !j["clue_id"].is_string() ||
            !j.contains("candidates") || !j["candidates"].is_array()) {
            bad("expected {puzzle_id, clue_id, candidates[]}");
            continue;
        }
        CandidateSet set;
        set.key = ClueKey{j["puzzle_id"].get<std::string>(),
                          j["clue_id"].get<std::string>()};
        if (!seen.insert(set.key).second) {
            bad("duplicate clue " + set.key.puzzle_id + "/" + set.key.clue_id);
            continue;
        }
        bool ok = true;
        for (const auto& cj : j["candidates"]) {
            if (!cj.is_object() || !cj.contains("text") || !cj["text"].is_string()) {
                bad("candidate without text");
                ok = false;
                break;
            }
            CandidateAnswer c;
            c.text = cj["text"].get<std::string>();
            if (cj.contains("score") && cj["score"].is_number())
                c.score = cj["score"].get<double>();
            if (cj.contains("type") && cj["type"].is_string()) {
                if (auto t = clue_type_from_string(cj["type"].get<std::string>())) {
                    Derivation d;
                    d.clue_type = *t;
                    if (cj.contains("definition") && cj["definition"].is_array() &&
                        cj["definition"].size() == 2) {
                        d.definition_span = Span{cj["definition"][0].get<std::size_t>(),
                                                 cj["definition"][1].get<std::size_t>()};
                    }
                    if (cj.contains("indicator") && cj["indicator"].is_array() &&
                        cj["indicator"].size() == 2) {
                        d.indicator_span = Span{cj["indicator"][0].get<std::size_t>(),
                                                cj["indicator"][1].get<std::size_t>()};
                    }
                    if (cj.contains("inputs") && cj["inputs"].is_array())
                        for (const auto& s : cj["inputs"])
                            if (s.is_string()) d.inputs.push_back(s.get<std::string>());
                    c.derivation = std::move(d);
                }
            }
            set.candidates.push_back(std::move(c));
        }
        if (ok) out.sets.push_back(std::move(set));
    }
    return out;
}

inline CandidateImport import_candidates_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw LoadError("cannot open candidates file: " + path);
    return import_candidates(in);
}

}  // namespace cryptic
