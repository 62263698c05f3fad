#pragma once

// Word knowledge: a small thesaurus graph (synonym / hypernym / hyponym
// edges over words and short phrases), rule-based inflections, and the
// indicator table that tags wordplay-signalling phrases.

#include "cryptic/core.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace cryptic {

enum class Relation { synonym, hypernym, hyponym };

/// Raised for malformed data files; messages carry the line number.
class LoadError : public std::runtime_error {
public:
    explicit LoadError(const std::string& what) : std::runtime_error(what) {}
};

// ---------------------------------------------------------------------------
// Character-count overlap

/// Size of the letter multiset intersection of two strings. Spaces and
/// anything else that is not a letter contribute nothing. Symmetric and
/// bounded by the letter count of either argument.
inline int char_overlap_score(std::string_view a, std::string_view b) {
    std::array<int, 26> ca{}, cb{};
    for (char c : a)
        if (is_ascii_letter(c)) ++ca[to_lower_ascii(c) - 'a'];
    for (char c : b)
        if (is_ascii_letter(c)) ++cb[to_lower_ascii(c) - 'a'];
    int total = 0;
    for (int i = 0; i < 26; ++i) total += std::min(ca[i], cb[i]);
    return total;
}

/// Sorted-letter signature used to group anagrams ("plate" -> "aelpt").
inline std::string anagram_signature(std::string_view word) {
    std::string sig = letters_of(word);
    std::sort(sig.begin(), sig.end());
    return sig;
}

// ---------------------------------------------------------------------------
// Inflections

namespace detail {

// Irregular plural forms. Both directions are consulted.
inline const std::vector<std::pair<std::string, std::string>>& irregular_plurals() {
    static const std::vector<std::pair<std::string, std::string>> table = {
        {"abacus", "abaci"},       {"alumnus", "alumni"},
        {"analysis", "analyses"},  {"appendix", "appendices"},
        {"axis", "axes"},          {"bacterium", "bacteria"},
        {"basis", "bases"},        {"cactus", "cacti"},
        {"calf", "calves"},        {"child", "children"},
        {"crisis", "crises"},      {"criterion", "criteria"},
        {"datum", "data"},         {"die", "dice"},
        {"elf", "elves"},          {"focus", "foci"},
        {"foot", "feet"},          {"fungus", "fungi"},
        {"goose", "geese"},        {"half", "halves"},
        {"hero", "heroes"},        {"hypothesis", "hypotheses"},
        {"index", "indices"},      {"knife", "knives"},
        {"larva", "larvae"},       {"leaf", "leaves"},
        {"life", "lives"},         {"loaf", "loaves"},
        {"louse", "lice"},         {"man", "men"},
        {"matrix", "matrices"},    {"medium", "media"},
        {"mouse", "mice"},         {"nucleus", "nuclei"},
        {"oasis", "oases"},        {"ox", "oxen"},
        {"person", "people"},      {"phenomenon", "phenomena"},
        {"potato", "potatoes"},    {"radius", "radii"},
        {"shelf", "shelves"},      {"stimulus", "stimuli"},
        {"syllabus", "syllabi"},   {"thesis", "theses"},
        {"thief", "thieves"},      {"tomato", "tomatoes"},
        {"tooth", "teeth"},        {"vertex", "vertices"},
        {"wife", "wives"},         {"wolf", "wolves"},
        {"woman", "women"},
    };
    return table;
}

inline const std::unordered_map<std::string, std::string>& plural_to_singular() {
    static const std::unordered_map<std::string, std::string> m = [] {
        std::unordered_map<std::string, std::string> out;
        for (const auto& [s, p] : irregular_plurals()) out[p] = s;
        return out;
    }();
    return m;
}

inline const std::unordered_set<std::string>& irregular_singulars() {
    static const std::unordered_set<std::string> s = [] {
        std::unordered_set<std::string> out;
        for (const auto& [sg, pl] : irregular_plurals()) out.insert(sg);
        return out;
    }();
    return s;
}

inline bool is_vowel(char c) {
    return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u';
}

// Final consonant-vowel-consonant shape that doubles before a vowel suffix
// ("stop" -> "stopped"). Restricted to short words; longer words usually
// have unstressed final syllables.
inline bool doubles_final(const std::string& w) {
    if (w.size() < 3 || w.size() > 4) return false;
    const char a = w[w.size() - 3], b = w[w.size() - 2], c = w[w.size() - 1];
    if (is_vowel(a) || !is_vowel(b) || is_vowel(c)) return false;
    return c != 'w' && c != 'x' && c != 'y';
}

inline bool ends_with(const std::string& w, std::string_view suffix) {
    return w.size() >= suffix.size() &&
           w.compare(w.size() - suffix.size(), suffix.size(), suffix) == 0;
}

}  // namespace detail

/// Regular plural / third-person-s form; irregulars come from a fixed table.
inline std::string pluralize(const std::string& word) {
    for (const auto& [sg, pl] : detail::irregular_plurals())
        if (word == sg) return pl;
    using detail::ends_with;
    if (ends_with(word, "s") || ends_with(word, "x") || ends_with(word, "z") ||
        ends_with(word, "ch") || ends_with(word, "sh"))
        return word + "es";
    if (word.size() >= 2 && word.back() == 'y' && !detail::is_vowel(word[word.size() - 2]))
        return word.substr(0, word.size() - 1) + "ies";
    return word + "s";
}

/// Rule-based inflected forms of a single lower-case word. Always contains
/// the input itself. Not exhaustive; it covers plural/3rd-person -s, -ed,
/// -ing, -er/-est with e-drop, y->i and final-consonant doubling, plus a
/// fixed irregular-plural table ("abacus" -> "abaci").
inline std::set<std::string> inflections(const std::string& word) {
    if (word.empty()) throw std::invalid_argument("inflections: empty word");
    std::set<std::string> out{word};
    if (word.size() < 2) return out;
    using detail::ends_with;
    out.insert(pluralize(word));

    const bool e_final = word.back() == 'e';
    const bool cons_y = word.size() >= 2 && word.back() == 'y' &&
                        !detail::is_vowel(word[word.size() - 2]);
    const std::string stem_e = e_final ? word.substr(0, word.size() - 1) : word;
    const std::string stem_y = cons_y ? word.substr(0, word.size() - 1) : word;
    const std::string doubled =
        detail::doubles_final(word) ? word + word.back() : word;

    // past / participle
    if (e_final) out.insert(word + "d");
    else if (cons_y) out.insert(stem_y + "ied");
    else out.insert(doubled + "ed");
    // gerund
    if (e_final && !ends_with(word, "ee")) out.insert(stem_e + "ing");
    else out.insert(doubled + "ing");
    // comparative / superlative
    if (e_final) {
        out.insert(word + "r");
        out.insert(word + "st");
    } else if (cons_y) {
        out.insert(stem_y + "ier");
        out.insert(stem_y + "iest");
    } else {
        out.insert(doubled + "er");
        out.insert(doubled + "est");
    }
    return out;
}

/// Collapse a plural (or s-form) to a base form. Idempotent:
/// plural_normalize(plural_normalize(w)) == plural_normalize(w).
inline std::string plural_normalize(const std::string& word) {
    using detail::ends_with;
    const auto& p2s = detail::plural_to_singular();
    if (auto it = p2s.find(word); it != p2s.end()) return it->second;
    if (detail::irregular_singulars().count(word)) return word;
    if (word.size() < 3 || word.back() != 's') return word;
    if (ends_with(word, "ss") || ends_with(word, "us") || ends_with(word, "is"))
        return word;
    if (ends_with(word, "ies") && word.size() >= 5)
        return word.substr(0, word.size() - 3) + "y";
    for (const char* suf : {"sses", "shes", "ches", "xes", "zzes"})
        if (ends_with(word, suf)) return word.substr(0, word.size() - 2);
    return word.substr(0, word.size() - 1);
}

/// Plural-normalize the final word of a (possibly multiword) answer, so
/// "light years" and "light year" fall in one equivalence class.
inline std::string plural_class(const std::string& normalized_answer) {
    const auto pos = normalized_answer.rfind(' ');
    if (pos == std::string::npos) return plural_normalize(normalized_answer);
    return normalized_answer.substr(0, pos + 1) +
           plural_normalize(normalized_answer.substr(pos + 1));
}

// ---------------------------------------------------------------------------
// Lexicon

/// Thesaurus graph over lower-case words and short phrases. Nodes carry
/// synonym edges (symmetric) and hypernym/hyponym edges (mutually inverse;
/// loading one direction materializes the other). Also indexes single
/// words by length and by sorted-letter signature for wordplay search.
class Lexicon {
public:
    using Edge = std::tuple<std::string, Relation, std::string>;

    /// Build from in-memory data. `edges` read as: {a, hypernym, b} states
    /// that b is a hypernym of a (a IS-A b); {a, synonym, b} is symmetric.
    static Lexicon from_data(const std::vector<std::string>& words,
                             const std::vector<Edge>& edges) {
        Lexicon lex;
        for (const auto& w : words) lex.add_word(normalize_answer(w));
        for (const auto& [a, rel, b] : edges) lex.add_edge(normalize_answer(a), rel,
                                                           normalize_answer(b));
        lex.finalize();
        if (lex.words_.empty()) throw LoadError("lexicon: empty word list");
        return lex;
    }

    /// Load `wordlist_path` (one word per line) and `thesaurus_path`
    /// (word<TAB>rel<TAB>word, rel in {syn, hyper, hypo}).
    static Lexicon load(const std::string& wordlist_path,
                        const std::string& thesaurus_path) {
        Lexicon lex;
        {
            std::ifstream in(wordlist_path);
            if (!in) throw LoadError("cannot open wordlist: " + wordlist_path);
            std::string line;
            std::size_t lineno = 0;
            while (std::getline(in, line)) {
                ++lineno;
                while (!line.empty() && (line.back() == '\r' || line.back() == '\n'))
                    line.pop_back();
                if (line.empty()) continue;
                try {
                    lex.add_word(normalize_answer(line));
                } catch (const ParseError& e) {
                    throw LoadError(wordlist_path + ":" + std::to_string(lineno) +
                                    ": " + e.what());
                }
            }
        }
        if (lex.words_.empty()) throw LoadError("lexicon: empty word list");
        {
            std::ifstream in(thesaurus_path);
            if (!in) throw LoadError("cannot open thesaurus: " + thesaurus_path);
            std::string line;
            std::size_t lineno = 0;
            while (std::getline(in, line)) {
                ++lineno;
                while (!line.empty() && (line.back() == '\r' || line.back() == '\n'))
                    line.pop_back();
                if (line.empty()) continue;
                const auto t1 = line.find('\t');
                const auto t2 = t1 == std::string::npos ? t1 : line.find('\t', t1 + 1);
                if (t2 == std::string::npos)
                    throw LoadError(thesaurus_path + ":" + std::to_string(lineno) +
                                    ": expected word<TAB>rel<TAB>word");
                const std::string a = line.substr(0, t1);
                const std::string rel = line.substr(t1 + 1, t2 - t1 - 1);
                const std::string b = line.substr(t2 + 1);
                Relation r;
                if (rel == "syn") r = Relation::synonym;
                else if (rel == "hyper") r = Relation::hypernym;
                else if (rel == "hypo") r = Relation::hyponym;
                else
                    throw LoadError(thesaurus_path + ":" + std::to_string(lineno) +
                                    ": unknown relation \"" + rel + "\"");
                try {
                    lex.add_edge(normalize_answer(a), r, normalize_answer(b));
                } catch (const ParseError& e) {
                    throw LoadError(thesaurus_path + ":" + std::to_string(lineno) +
                                    ": " + e.what());
                }
            }
        }
        lex.finalize();
        return lex;
    }

    bool contains(std::string_view w) const {
        return words_.count(std::string(w)) != 0;
    }

    std::size_t size() const { return words_.size(); }

    /// All nodes in sorted order (single words and phrases).
    const std::vector<std::string>& nodes() const { return sorted_words_; }

    /// Single words (no spaces) of exactly `n` letters, sorted.
    const std::vector<std::string>& words_of_length(std::size_t n) const {
        static const std::vector<std::string> empty;
        auto it = by_length_.find(n);
        return it == by_length_.end() ? empty : it->second;
    }

    /// Single words sharing a sorted-letter signature, sorted.
    const std::vector<std::string>& words_with_signature(const std::string& sig) const {
        static const std::vector<std::string> empty;
        auto it = by_signature_.find(sig);
        return it == by_signature_.end() ? empty : it->second;
    }

    /// Neighbors of `w` under one relation, sorted and deduplicated.
    /// Unknown nodes have no neighbors.
    const std::vector<std::string>& neighbors(std::string_view w, Relation r) const {
        static const std::vector<std::string> empty;
        auto it = graph_.find(std::string(w));
        if (it == graph_.end()) return empty;
        return it->second[static_cast<std::size_t>(r)];
    }

private:
    void add_word(const std::string& w) { words_.insert(w); }

    void add_edge(const std::string& a, Relation r, const std::string& b) {
        words_.insert(a);
        words_.insert(b);
        switch (r) {
            case Relation::synonym:
                adj(a, Relation::synonym).push_back(b);
                adj(b, Relation::synonym).push_back(a);
                break;
            case Relation::hypernym:  // b is a hypernym of a
                adj(a, Relation::hypernym).push_back(b);
                adj(b, Relation::hyponym).push_back(a);
                break;
            case Relation::hyponym:  // b is a hyponym of a
                adj(a, Relation::hyponym).push_back(b);
                adj(b, Relation::hypernym).push_back(a);
                break;
        }
    }

    std::vector<std::string>& adj(const std::string& w, Relation r) {
        return graph_[w][static_cast<std::size_t>(r)];
    }

    void finalize() {
        for (auto& [w, lists] : graph_) {
            for (auto& list : lists) {
                std::sort(list.begin(), list.end());
                list.erase(std::unique(list.begin(), list.end()), list.end());
            }
        }
        sorted_words_.assign(words_.begin(), words_.end());
        std::sort(sorted_words_.begin(), sorted_words_.end());
        for (const auto& w : sorted_words_) {
            if (w.find(' ') != std::string::npos) continue;
            by_length_[w.size()].push_back(w);
            by_signature_[anagram_signature(w)].push_back(w);
        }
    }

    std::unordered_set<std::string> words_;
    std::vector<std::string> sorted_words_;
    std::unordered_map<std::string, std::array<std::vector<std::string>, 3>> graph_;
    std::unordered_map<std::size_t, std::vector<std::string>> by_length_;
    std::unordered_map<std::string, std::vector<std::string>> by_signature_;
};

// ---------------------------------------------------------------------------
// Reverse dictionary lookup

/// Words reachable from `phrase` in the thesaurus graph: direct synonyms,
/// hyponyms to `hypo_depth`, hypernyms to `hyper_depth`. The query itself
/// is excluded. When `include_inflections` is set, each hit also
/// contributes its rule-based inflected forms (last word for phrases).
/// Unknown phrases yield the empty set. Result grows monotonically with
/// either depth.
inline std::set<std::string> reverse_lookup(const std::string& phrase,
                                            const Lexicon& lex, int hypo_depth,
                                            int hyper_depth,
                                            bool include_inflections = false) {
    std::set<std::string> out;
    if (!lex.contains(phrase)) return out;
    for (const auto& s : lex.neighbors(phrase, Relation::synonym)) out.insert(s);

    auto walk = [&](Relation rel, int depth) {
        std::vector<std::string> frontier{phrase};
        std::set<std::string> visited{phrase};
        for (int d = 0; d < depth && !frontier.empty(); ++d) {
            std::vector<std::string> next;
            for (const auto& node : frontier) {
                for (const auto& nb : lex.neighbors(node, rel)) {
                    if (visited.insert(nb).second) {
                        out.insert(nb);
                        next.push_back(nb);
                    }
                }
            }
            frontier = std::move(next);
        }
    };
    walk(Relation::hyponym, hypo_depth);
    walk(Relation::hypernym, hyper_depth);
    out.erase(phrase);

    if (include_inflections) {
        std::set<std::string> inflected;
        for (const auto& w : out) {
            const auto pos = w.rfind(' ');
            if (pos == std::string::npos) {
                for (const auto& f : inflections(w)) inflected.insert(f);
            } else {
                const std::string head = w.substr(0, pos + 1);
                for (const auto& f : inflections(w.substr(pos + 1)))
                    inflected.insert(head + f);
            }
        }
        out.merge(inflected);
        out.erase(phrase);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Indicator table

/// Maps indicator phrases ("confused", "at first") to the wordplay types
/// they signal. Phrases are stored as space-joined normalized tokens.
class IndicatorTable {
public:
    static IndicatorTable from_data(
        const std::vector<std::pair<std::string, std::vector<ClueType>>>& rows) {
        IndicatorTable t;
        for (const auto& [phrase, types] : rows) t.add(phrase, types);
        return t;
    }

    /// Load phrase<TAB>type[,type...] rows.
    static IndicatorTable load(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw LoadError("cannot open indicator table: " + path);
        IndicatorTable t;
        std::string line;
        std::size_t lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            while (!line.empty() && (line.back() == '\r' || line.back() == '\n'))
                line.pop_back();
            if (line.empty()) continue;
            const auto tab = line.find('\t');
            if (tab == std::string::npos)
                throw LoadError(path + ":" + std::to_string(lineno) +
                                ": expected phrase<TAB>types");
            const std::string phrase = line.substr(0, tab);
            std::vector<ClueType> types;
            std::string rest = line.substr(tab + 1);
            std::size_t pos = 0;
            while (pos <= rest.size()) {
                auto comma = rest.find(',', pos);
                if (comma == std::string::npos) comma = rest.size();
                const std::string name = rest.substr(pos, comma - pos);
                const auto t2 = clue_type_from_string(name);
                if (!t2)
                    throw LoadError(path + ":" + std::to_string(lineno) +
                                    ": unknown clue type \"" + name + "\"");
                types.push_back(*t2);
                pos = comma + 1;
                if (comma == rest.size()) break;
            }
            t.add(phrase, types);
        }
        return t;
    }

    /// Types signalled by a normalized phrase, or null when it is not an
    /// indicator.
    const std::set<ClueType>* lookup(const std::string& phrase) const {
        auto it = map_.find(phrase);
        return it == map_.end() ? nullptr : &it->second;
    }

    std::size_t max_phrase_tokens() const { return max_tokens_; }
    std::size_t size() const { return map_.size(); }

    /// All phrases carrying a given tag, sorted.
    std::vector<std::string> phrases_for(ClueType t) const {
        std::vector<std::string> out;
        for (const auto& [phrase, types] : map_)
            if (types.count(t)) out.push_back(phrase);
        std::sort(out.begin(), out.end());
        return out;
    }

private:
    void add(const std::string& phrase, const std::vector<ClueType>& types) {
        const auto toks = tokenize(phrase);
        if (toks.empty())
            throw LoadError("indicator phrase \"" + phrase + "\" has no words");
        std::string key;
        for (const auto& t : toks) {
            if (!key.empty()) key.push_back(' ');
            key += t.text;
        }
        auto& set = map_[key];
        for (ClueType t : types) set.insert(t);
        max_tokens_ = std::max(max_tokens_, toks.size());
    }

    std::map<std::string, std::set<ClueType>> map_;
    std::size_t max_tokens_ = 0;
};

}  // namespace cryptic
