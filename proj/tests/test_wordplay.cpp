#include <catch2/catch_amalgamated.hpp>

#include "cryptic/wordplay.hpp"
#include "oracles.hpp"

#include <thread>

using namespace cryptic;

namespace {

const std::string kDataDir = CRYPTIC_DATA_DIR;

const Lexicon& bundled() {
    static const Lexicon lex =
        Lexicon::load(kDataDir + "/wordlist.txt", kDataDir + "/thesaurus.tsv");
    return lex;
}

const IndicatorTable& bundled_indicators() {
    static const IndicatorTable t = IndicatorTable::load(kDataDir + "/indicators.tsv");
    return t;
}

std::vector<std::string> single_words(const Lexicon& lex) {
    std::vector<std::string> out;
    for (const auto& w : lex.nodes())
        if (w.find(' ') == std::string::npos) out.push_back(w);
    return out;
}

std::set<std::string> project_words(const std::vector<HiddenHit>& hits) {
    std::set<std::string> out;
    for (const auto& h : hits) out.insert(h.word);
    return out;
}

}  // namespace

TEST_CASE("anagram_solutions finds the frozen plate family") {
    const auto& lex = bundled();
    const auto target = parse_enumeration("(5)");
    CHECK(anagram_solutions("plate", target, lex) ==
          (std::set<std::string>{"leapt", "petal", "pleat"}));
    // the identity arrangement is excluded even though "plate" is a word
    CHECK(anagram_solutions("stop", parse_enumeration("(4)"), lex) ==
          (std::set<std::string>{"opts", "post", "pots", "spot", "tops"}));
    // scrambled fodder still reaches the whole family
    CHECK(anagram_solutions("tealp", target, lex) ==
          (std::set<std::string>{"leapt", "petal", "plate", "pleat"}));
    // wrong total: nothing
    CHECK(anagram_solutions("plate", parse_enumeration("(6)"), lex).empty());
}

TEST_CASE("anagram_solutions matches the permutation oracle") {
    const auto& lex = bundled();
    const auto vocab = single_words(lex);
    // single-part probes
    for (const char* fodder : {"plate", "stop", "night", "silent", "bret", "tin"}) {
        const auto target = enumeration_of(std::string(letters_of(fodder).size(), 'x'));
        CHECK(anagram_solutions(fodder, target, lex) ==
              oracle::anagrams(fodder, target, vocab));
    }
    // multi-part probes over random short word pairs
    Rng rng(314159);
    const auto& l3 = lex.words_of_length(3);
    const auto& l4 = lex.words_of_length(4);
    REQUIRE(!l3.empty());
    REQUIRE(!l4.empty());
    for (int iter = 0; iter < 40; ++iter) {
        const std::string a = l3[rng.below(l3.size())];
        const std::string b = l4[rng.below(l4.size())];
        std::string fodder = a + b;
        rng.shuffle(fodder);
        for (const char* pattern : {"(3,4)", "(4,3)", "(7)"}) {
            const auto target = parse_enumeration(pattern);
            CHECK(anagram_solutions(fodder, target, lex) ==
                  oracle::anagrams(fodder, target, vocab));
        }
    }
}

TEST_CASE("anagram_solutions splits fodder into multiword answers") {
    const auto lex = Lexicon::from_data(
        {"cat", "act", "tin", "nit", "acttin"},
        {});
    const auto hits = anagram_solutions("tinact", parse_enumeration("(3,3)"), lex);
    // "tin act" is absent: its letters read exactly as the fodder's
    CHECK(hits == (std::set<std::string>{"act nit", "act tin", "cat nit", "cat tin",
                                         "nit act", "nit cat", "tin cat"}));
    // identity exclusion applies to the whole letter sequence
    CHECK(anagram_solutions("tin cat", parse_enumeration("(3,3)"), lex)
              .count("tin cat") == 0);
    CHECK(anagram_solutions("tin cat", parse_enumeration("(3,3)"), lex)
              .count("cat tin") == 1);
}

TEST_CASE("anagram_solutions honors a deadline with partial results") {
    // a lexicon dense enough that four-part search cannot finish instantly
    std::vector<std::string> words;
    for (char a = 'a'; a <= 'h'; ++a)
        for (char b = 'a'; b <= 'h'; ++b)
            for (char c = 'a'; c <= 'h'; ++c) words.push_back(std::string{a, b, c});
    const auto lex = Lexicon::from_data(words, {});
    const auto target = parse_enumeration("(3,3,3,3,3)");
    const std::string fodder = "abcdefghabcdefg";

    const auto deadline = Deadline::after(std::chrono::milliseconds(50));
    const auto partial = anagram_solutions(fodder, target, lex, &deadline);
    // without a deadline this search space is astronomically larger
    const auto deadline2 = Deadline::after(std::chrono::milliseconds(400));
    const auto more = anagram_solutions(fodder, target, lex, &deadline2);
    CHECK(partial.size() <= more.size());
    CHECK(!more.empty());
    // everything found is a genuine anagram
    for (const auto& s : partial) {
        auto letters = letters_of(s);
        std::string want = fodder;
        std::sort(letters.begin(), letters.end());
        std::sort(want.begin(), want.end());
        CHECK(letters == want);
    }
}

TEST_CASE("initialism takes first letters in order") {
    CHECK(initialism({"but", "everythings", "really", "trivial"}) == "bert");
    CHECK(initialism({"a"}) == "a");
    CHECK_THROWS_AS(initialism({}), std::invalid_argument);
    CHECK_THROWS_AS(initialism({"ok", ""}), std::invalid_argument);
}

TEST_CASE("hidden_words finds runs across word boundaries only") {
    const auto& lex = bundled();
    const auto hits = hidden_words("somber text", 4, lex);
    // "bert" spans the boundary; "text" aligns with a whole word and is out
    CHECK(project_words(hits) == std::set<std::string>{"bert"});
    REQUIRE(hits.size() == 1);
    CHECK(hits[0].letter_begin == 3);
    CHECK(hits[0].letter_end == 7);
    CHECK(hits[0].token_begin == 0);
    CHECK(hits[0].token_end == 2);

    // strictly inside one longer word still counts
    const auto inner = hidden_words("melons", 5, lex);
    CHECK(project_words(inner).count("melon") == 1);
    // a window equal to the whole (only) word does not
    CHECK(hidden_words("melon", 5, lex).empty());
    // too short a target finds nothing
    CHECK(hidden_words("somber text", 1, lex).empty());
}

TEST_CASE("hidden_words matches the substring oracle") {
    const auto& lex = bundled();
    const auto vocab = single_words(lex);
    Rng rng(2718);
    const auto& pool = lex.words_of_length(5);
    for (int iter = 0; iter < 60; ++iter) {
        std::string phrase = pool[rng.below(pool.size())];
        phrase += ' ';
        phrase += pool[rng.below(pool.size())];
        phrase += ' ';
        phrase += pool[rng.below(pool.size())];
        for (std::size_t len : {3u, 4u, 5u, 6u}) {
            CHECK(project_words(hidden_words(phrase, len, lex)) ==
                  oracle::hidden(phrase, len, vocab));
        }
    }
}

TEST_CASE("reversal returns lexicon words only") {
    const auto& lex = bundled();
    auto r = reversal("stop", lex);
    REQUIRE(r.has_value());
    CHECK(*r == "pots");
    CHECK(reversal("pots", lex) == std::optional<std::string>("stop"));
    CHECK_FALSE(reversal("xyzzy", lex).has_value());
    // palindromes reverse to themselves
    CHECK(reversal("level", lex) == std::optional<std::string>("level"));
}

TEST_CASE("substrings cut from the declared end") {
    const auto& lex = bundled();
    CHECK(substrings("university", SubstringKind::initial, lex) ==
          std::set<std::string>{"uni"});
    CHECK(substrings("starts", SubstringKind::final, lex) ==
          std::set<std::string>{"arts"});
    // middle pieces drop at least one letter from both ends
    const auto toy =
        Lexicon::from_data({"splates", "plate", "late", "splat", "lates", "ates"}, {});
    const auto mid = substrings("splates", SubstringKind::middle, toy);
    CHECK(mid == (std::set<std::string>{"late", "plate"}));
    // single letters produce nothing
    CHECK(substrings("a", SubstringKind::initial, lex).empty());
}

TEST_CASE("substrings match the positional oracle") {
    const auto& lex = bundled();
    const auto vocab = single_words(lex);
    Rng rng(555);
    const auto& pool = lex.words_of_length(7);
    for (int iter = 0; iter < 50; ++iter) {
        const std::string w = pool[rng.below(pool.size())];
        CHECK(substrings(w, SubstringKind::initial, lex) ==
              oracle::substrings(w, oracle::Cut::initial, vocab));
        CHECK(substrings(w, SubstringKind::final, lex) ==
              oracle::substrings(w, oracle::Cut::final, vocab));
        CHECK(substrings(w, SubstringKind::middle, lex) ==
              oracle::substrings(w, oracle::Cut::middle, vocab));
    }
}

TEST_CASE("insertions splice into interior positions only") {
    const auto& lex = bundled();
    // r into bet: b(r)et gives "bret" (not a word), be(r)t gives "bert"
    CHECK(insertions("bet", "r", lex) == std::set<std::string>{"bert"});
    // with a lexicon that knows both, both interior splices surface
    const auto toy = Lexicon::from_data({"bret", "bert"}, {});
    CHECK(insertions("bet", "r", toy) == (std::set<std::string>{"bert", "bret"}));
    // prepending/appending positions are never used
    const auto toy2 = Lexicon::from_data({"xab", "abx", "axb"}, {});
    CHECK(insertions("ab", "x", toy2) == std::set<std::string>{"axb"});
    CHECK(insertions("ab", "", toy2).empty());
    CHECK(insertions("a", "x", toy2).empty());
}

TEST_CASE("detect_indicators prefers longest matches and never overlaps") {
    const auto& table = bundled_indicators();
    auto toks = [](std::string_view text) {
        std::vector<std::string> out;
        for (const auto& t : tokenize(text)) out.push_back(t.text);
        return out;
    };

    auto hits = detect_indicators(toks("confused bret makes a language model"), table);
    REQUIRE(hits.size() == 1);
    CHECK(hits[0] == IndicatorHit{0, 1, ClueType::anagram});

    // "mixed up" wins over plain "mixed"
    hits = detect_indicators(toks("mixed up letters"), table);
    REQUIRE(hits.size() == 1);
    CHECK(hits[0].begin == 0);
    CHECK(hits[0].end == 2);
    CHECK(hits[0].type == ClueType::anagram);

    // a phrase with several tags yields one hit per tag over the same span
    hits = detect_indicators(toks("model in somber text"), table);
    REQUIRE(hits.size() == 2);
    CHECK(hits[0].begin == 1);
    CHECK(hits[0].end == 2);
    CHECK(hits[1].begin == 1);
    CHECK(hits[1].end == 2);
    std::set<ClueType> types{hits[0].type, hits[1].type};
    CHECK(types == (std::set<ClueType>{ClueType::hidden, ClueType::insertion}));

    // two separate indicators in one clue
    hits = detect_indicators(toks("drunk at first light"), table);
    REQUIRE(hits.size() == 2);
    CHECK(hits[0] == IndicatorHit{0, 1, ClueType::anagram});
    CHECK(hits[1] == IndicatorHit{1, 3, ClueType::initialism});

    CHECK(detect_indicators(toks("zebra crossing ahead"), table).empty());
    CHECK(detect_indicators({}, table).empty());
}

TEST_CASE("scramble returns a seeded non-identity permutation") {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const auto s = scramble("petal", seed);
        CHECK(s != "petal");
        CHECK(anagram_signature(s) == anagram_signature("petal"));
        CHECK(s == scramble("petal", seed));  // deterministic per seed
    }
    // spaces are dropped before permuting
    const auto multi = scramble("ice cream", 7);
    CHECK(multi.size() == 8);
    CHECK(anagram_signature(multi) == anagram_signature("icecream"));
    // no non-identity permutation exists
    CHECK_THROWS_AS(scramble("aaa", 1), std::invalid_argument);
    CHECK_THROWS_AS(scramble("a", 1), std::invalid_argument);
    CHECK_THROWS_AS(scramble("", 1), std::invalid_argument);
    CHECK_NOTHROW(scramble("ab", 1));
}
