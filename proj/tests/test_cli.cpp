// End-to-end checks for the cryptic-bench binary: each test drives the real
// executable through std::system and inspects the files and exit codes it
// leaves behind. CRYPTIC_BENCH_BIN and CRYPTIC_DATA_DIR come from the build.

#include "cryptic/corpus.hpp"
#include "cryptic/evalharness.hpp"
#include "cryptic/solvers.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

const std::string kBin = CRYPTIC_BENCH_BIN;
const std::string kData = CRYPTIC_DATA_DIR;

/// Fresh scratch directory per test run.
fs::path scratch_dir() {
    static const fs::path dir = [] {
        fs::path p = fs::temp_directory_path() / "cryptic_cli_tests";
        fs::remove_all(p);
        fs::create_directories(p);
        return p;
    }();
    return dir;
}

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& path) {
    std::ifstream in(path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

RunResult run(const std::string& args) {
    const fs::path out = scratch_dir() / "stdout.txt";
    const fs::path err = scratch_dir() / "stderr.txt";
    const std::string cmd =
        kBin + " " + args + " > " + out.string() + " 2> " + err.string();
    const int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream os(path);
    os << content;
}

const char* kRawCorpus = R"raw({"puzzle_id":"g1","clue_id":"1a","clue":"Confused, Bret makes a language model (4)","answer":"BERT","date":"2020-01-05"}
{"puzzle_id":"g1","clue_id":"2a","clue":"Returned pots halt (4)","answer":"stop","date":"2020-01-05"}
{"puzzle_id":"g1","clue_id":"3a","clue":"Fish part (4)","answer":"sole"}
{"puzzle_id":"g1","clue_id":"4a","clue":"See 2 across","answer":"stop"}
{"puzzle_id":"g2","clue_id":"1a","clue":"Confused, Bret makes a language model (4)","answer":"bert","date":"2021-03-09"}
{"puzzle_id":"g2","clue_id":"2a","clue":"Model bet holding r (4)","answer":"bert","date":"2021-03-09"}
{"puzzle_id":"g2","clue_id":"3a","clue":"College university briefly (3)","answer":"uni","date":"2021-03-09"}
{"puzzle_id":"g2","clue_id":"4a","clue":"Mismatch (9)","answer":"bad"}
)raw";

std::string data(const char* name) { return kData + "/" + name; }

}  // namespace

TEST_CASE("clean, split, solve and eval chain together", "[cli]") {
    const fs::path dir = scratch_dir();
    const fs::path raw = dir / "raw.jsonl";
    const fs::path cleaned = dir / "clean.jsonl";
    const fs::path split = dir / "split.jsonl";
    const fs::path cands = dir / "cands.jsonl";
    write_file(raw, kRawCorpus);

    SECTION("clean reports every removal and writes loadable jsonl") {
        const auto r =
            run("clean --in " + raw.string() + " --out " + cleaned.string());
        CAPTURE(r.out, r.err);
        REQUIRE(r.exit_code == 0);
        CHECK(r.out.find("Input records: 8") != std::string::npos);
        CHECK(r.out.find("Retained: 5") != std::string::npos);
        CHECK(r.err.find("g2/4a") != std::string::npos);

        const auto loaded = cryptic::load_clues_file(cleaned.string());
        REQUIRE(loaded.errors.empty());
        CHECK(loaded.clues.size() == 5);
        // Dated duplicate keeps the earlier printing.
        for (const auto& c : loaded.clues)
            if (c.clue_id == "1a") CHECK(c.puzzle_id == "g1");
    }

    SECTION("the full pipeline produces a perfect report on easy clues") {
        REQUIRE(run("clean --in " + raw.string() + " --out " + cleaned.string())
                    .exit_code == 0);
        const auto split_run =
            run("split --in " + cleaned.string() + " --out " + split.string() +
                " --policy naive --seed 3");
        REQUIRE(split_run.exit_code == 0);
        const auto assignment = cryptic::read_split_jsonl_file(split.string());
        CHECK(assignment.entries.size() == 5);

        const auto solve_run =
            run("solve --in " + cleaned.string() + " --out " + cands.string() +
                " --solver rule --workers 2 --wordlist " + data("wordlist.txt") +
                " --thesaurus " + data("thesaurus.tsv") + " --indicators " +
                data("indicators.tsv"));
        CAPTURE(solve_run.out, solve_run.err);
        REQUIRE(solve_run.exit_code == 0);

        const auto imported = cryptic::import_candidates_file(cands.string());
        REQUIRE(imported.errors.empty());
        REQUIRE(imported.sets.size() == 5);
        // Output order matches input order even with two workers.
        CHECK(imported.sets.front().key ==
              cryptic::ClueKey{"g1", "1a"});
        CHECK(imported.sets.front().candidates.front().text == "bert");

        const auto eval_run = run("eval --gold " + cleaned.string() +
                                  " --candidates " + cands.string());
        CAPTURE(eval_run.out, eval_run.err);
        REQUIRE(eval_run.exit_code == 0);
        CHECK(eval_run.out.find("Clues evaluated: 5") != std::string::npos);
        CHECK(eval_run.out.find("Top correct: 100.0%") != std::string::npos);

        // Subset evaluation drops candidate sets for unlisted clues.
        const auto dev_run = run("eval --gold " + cleaned.string() +
                                 " --candidates " + cands.string() + " --split " +
                                 split.string() + " --subset dev --format json");
        CAPTURE(dev_run.out, dev_run.err);
        REQUIRE(dev_run.exit_code == 0);
        const auto report = cryptic::parse_report_json(dev_run.out);
        CHECK(report.clue_count == assignment.count(cryptic::Subset::dev));
    }

    SECTION("every writing subcommand leaves a manifest next to its output") {
        REQUIRE(run("clean --in " + raw.string() + " --out " + cleaned.string())
                    .exit_code == 0);
        const fs::path manifest = cleaned.string() + ".manifest.json";
        REQUIRE(fs::exists(manifest));
        const auto j = nlohmann::json::parse(slurp(manifest));
        CHECK(j.at("tool") == "cryptic-bench");
        CHECK(j.at("subcommand") == "clean");
        CHECK(j.at("config").at("in") == raw.string());
        CHECK(j.at("config_hash").get<std::string>().size() == 16);
        CHECK(j.at("inputs").size() == 1);
        CHECK(j.at("outputs").at(0) == cleaned.string());
        CHECK(j.at("wall_time_ms").is_number());
    }
}

TEST_CASE("gen-curriculum mixes tasks to the requested quota", "[cli]") {
    const fs::path dir = scratch_dir();
    const fs::path pairs = dir / "pairs.tsv";
    const fs::path out = dir / "curr.txt";
    write_file(pairs,
               "flower part\tpetal\n"
               "stop moving\thalt\n"
               "___ Lanka\tsri\n"
               "small bird\twren\n"
               "come to rest\tstop\n");

    const auto r = run("gen-curriculum --pairs " + pairs.string() + " --out " +
                       out.string() +
                       " --task phrase --task descramble --weight 1 --weight 1" +
                       " --total 8 --seed 11");
    CAPTURE(r.out, r.err);
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.find("1 fill-in-the-blank") != std::string::npos);

    std::ifstream in(out);
    std::vector<std::string> lines;
    std::string line;
    std::size_t phrase = 0, descramble = 0;
    while (std::getline(in, line)) {
        lines.push_back(line);
        phrase += line.rfind("phrase: ", 0) == 0;
        descramble += line.rfind("descramble: ", 0) == 0;
    }
    CHECK(lines.size() == 8);
    CHECK(phrase == 4);
    CHECK(descramble == 4);

    SECTION("a run with the same seed is byte-identical") {
        const fs::path again = dir / "curr2.txt";
        REQUIRE(run("gen-curriculum --pairs " + pairs.string() + " --out " +
                    again.string() +
                    " --task phrase --task descramble --weight 1 --weight 1" +
                    " --total 8 --seed 11")
                    .exit_code == 0);
        CHECK(slurp(again) == slurp(out));
    }

    SECTION("the anagram task requires lexicon flags") {
        const auto bad = run("gen-curriculum --pairs " + pairs.string() +
                             " --out " + out.string() + " --task anagram");
        CHECK(bad.exit_code == 2);
    }
}

TEST_CASE("export-seq2seq honours the split filter", "[cli]") {
    const fs::path dir = scratch_dir();
    const fs::path raw = dir / "raw.jsonl";
    const fs::path cleaned = dir / "clean.jsonl";
    const fs::path split = dir / "split.jsonl";
    const fs::path out = dir / "train.txt";
    write_file(raw, kRawCorpus);
    REQUIRE(run("clean --in " + raw.string() + " --out " + cleaned.string())
                .exit_code == 0);
    REQUIRE(run("split --in " + cleaned.string() + " --out " + split.string() +
                " --policy naive --seed 3")
                .exit_code == 0);

    const auto r = run("export-seq2seq --in " + cleaned.string() + " --out " +
                       out.string() + " --with-lengths --split " +
                       split.string() + " --subset train");
    CAPTURE(r.out, r.err);
    REQUIRE(r.exit_code == 0);

    const auto assignment = cryptic::read_split_jsonl_file(split.string());
    std::ifstream in(out);
    std::string line;
    std::size_t count = 0;
    while (std::getline(in, line)) {
        ++count;
        const auto example = cryptic::parse_seq2seq_line(line);
        CHECK(example.enumeration.has_value());
    }
    CHECK(count == assignment.count(cryptic::Subset::train));
}

TEST_CASE("exit codes distinguish usage errors from data errors", "[cli]") {
    const fs::path dir = scratch_dir();
    CHECK(run("--help").exit_code == 0);
    CHECK(run("no-such-subcommand").exit_code == 2);
    CHECK(run("split --in x --out y --policy nonsense").exit_code == 2);
    CHECK(run("solve --in x --out y --solver rule").exit_code == 2);

    const auto missing = run("clean --in " + (dir / "absent.jsonl").string() +
                             " --out " + (dir / "o.jsonl").string());
    CHECK(missing.exit_code == 1);
    CHECK(missing.err.find("absent.jsonl") != std::string::npos);

    // Unreadable raw lines are itemized and make the run fail, but the
    // cleaned output for the good lines is still written.
    const fs::path raw = dir / "partial.jsonl";
    const fs::path out = dir / "partial_clean.jsonl";
    write_file(raw,
               "{\"puzzle_id\":\"p\",\"clue_id\":\"1\",\"clue\":\"Fish part "
               "(4)\",\"answer\":\"sole\"}\n"
               "not json at all\n");
    const auto partial =
        run("clean --in " + raw.string() + " --out " + out.string());
    CHECK(partial.exit_code == 1);
    CHECK(partial.err.find("line 2") != std::string::npos);
    CHECK(cryptic::load_clues_file(out.string()).clues.size() == 1);
}
