#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "tbell/cli.hpp"
#include "tbell/engine.hpp"
#include "tbell/io.hpp"
#include "tbell/search.hpp"

using namespace tbell;
using nlohmann::json;

namespace {

std::vector<ThrowRecord> random_records(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> setting(0, 2);
    std::uniform_int_distribution<int> coin(0, 1);
    std::vector<ThrowRecord> records;
    records.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        records.push_back(ThrowRecord{i, static_cast<Setting>(setting(rng)),
                                      coin(rng) ? Outcome::Plus : Outcome::Minus,
                                      static_cast<Setting>(setting(rng)),
                                      coin(rng) ? Outcome::Plus : Outcome::Minus});
    }
    return records;
}

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("tbell_test_" + std::to_string(std::random_device{}()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
};

}  // namespace

TEST_CASE("records round-trip bit-exactly through JSONL") {
    const auto records = random_records(500, 61);
    std::stringstream stream;
    io::write_records(stream, json{{"note", "round-trip"}}, records);

    const io::RecordFile parsed = io::read_records(stream);
    REQUIRE(parsed.meta.has_value());
    CHECK((*parsed.meta)["note"] == "round-trip");
    CHECK(parsed.records == records);
}

TEST_CASE("serialization is deterministic") {
    const auto records = random_records(100, 62);
    std::stringstream a, b;
    io::write_records(a, json{{"seed", 1}}, records);
    io::write_records(b, json{{"seed", 1}}, records);
    CHECK(a.str() == b.str());
}

TEST_CASE("triple json round-trip") {
    const SettingTriple triple = search::analytic_optimum().triple;
    const SettingTriple back = io::triple_from_json(io::triple_to_json(triple));
    CHECK(back.a == triple.a);
    CHECK(back.b == triple.b);
    CHECK(back.c == triple.c);
}

TEST_CASE("parse errors carry line numbers") {
    std::stringstream bad1("this is not json\n");
    CHECK_THROWS_WITH_AS(io::read_records(bad1), doctest::Contains("line 1"), ParseError);

    std::stringstream bad2(
        R"({"meta":{}})"
        "\n"
        R"({"throw_id":0,"first_setting":"A","first_outcome":2,"second_setting":"B","second_outcome":1})"
        "\n");
    try {
        io::read_records(bad2);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line_number == 2);
        CHECK(cli::exit_code_for(e) == cli::kExitParse);
    }

    std::stringstream bad3(
        R"({"throw_id":0,"first_setting":"D","first_outcome":1,"second_setting":"B","second_outcome":1})"
        "\n");
    CHECK_THROWS_AS(io::read_records(bad3), ParseError);

    std::stringstream bad4(R"({"throw_id":0,"first_setting":"A"})"
                           "\n");
    CHECK_THROWS_WITH_AS(io::read_records(bad4), doctest::Contains("missing"), ParseError);

    std::stringstream bad5(
        R"({"throw_id":-1,"first_setting":"A","first_outcome":1,"second_setting":"B","second_outcome":1})"
        "\n");
    CHECK_THROWS_AS(io::read_records(bad5), ParseError);
}

TEST_CASE("reading a missing file is an io error") {
    CHECK_THROWS_AS(io::read_records_file("/nonexistent/path/records.jsonl"), IoError);
    try {
        io::read_records_file("/nonexistent/path/records.jsonl");
    } catch (const std::exception& e) {
        CHECK(cli::exit_code_for(e) == cli::kExitIo);
    }
}

TEST_CASE("build_report on a quantum run") {
    cli::SimulateConfig config;
    config.n_throws = 20000;
    config.seed = 2025;
    const auto plan = cli::plan_from_config(config);
    io::RecordFile file;
    file.meta = json{{"triple", io::triple_to_json(plan.triple)}};
    file.records = engine::run_experiment(plan);

    const json report = io::build_report(file);
    for (const char* key :
         {"tally", "correlators", "wigner_forms", "correlator_form", "reference_bell_1964",
          "noise_diagnostics", "symmetrized_form", "delta_feasible", "geometric_lhs", "meta"}) {
        CHECK(report.contains(key));
    }
    CHECK(report["wigner_forms"].size() == 12);
    CHECK(report["correlators"].size() == 9);
    CHECK(report["tally"]["total"] == 20000);
    CHECK(report["geometric_lhs"].get<double>() == doctest::Approx(std::sqrt(2.0)));
    CHECK(report["correlator_form"]["violated"].get<bool>());
    CHECK(report["delta_feasible"].get<bool>());
}

TEST_CASE("build_report names the missing pair") {
    io::RecordFile file;
    file.records = {ThrowRecord{0, Setting::A, Outcome::Plus, Setting::B, Outcome::Minus}};
    CHECK_THROWS_WITH_AS(io::build_report(file), doctest::Contains("ordered setting pair"),
                         InsufficientDataError);
}

TEST_CASE("simulate writes byte-identical files for any worker count") {
    TempDir dir;
    cli::SimulateConfig config;
    config.n_throws = 20000;
    config.seed = 7;
    config.out = (dir.path / "w1.jsonl").string();
    config.workers = 1;
    CHECK(cli::cmd_simulate(config) == 0);
    config.out = (dir.path / "w8.jsonl").string();
    config.workers = 8;
    CHECK(cli::cmd_simulate(config) == 0);
    CHECK(slurp(dir.path / "w1.jsonl") == slurp(dir.path / "w8.jsonl"));

    // Rerunning the same config reproduces the file bit for bit.
    config.out = (dir.path / "again.jsonl").string();
    CHECK(cli::cmd_simulate(config) == 0);
    CHECK(slurp(dir.path / "w1.jsonl") == slurp(dir.path / "again.jsonl"));
}

TEST_CASE("analyze is deterministic end to end") {
    TempDir dir;
    cli::SimulateConfig sim;
    sim.model = "realist";
    sim.n_throws = 30000;
    sim.seed = 99;
    sim.out = (dir.path / "r.jsonl").string();
    CHECK(cli::cmd_simulate(sim) == 0);

    cli::AnalyzeConfig ana;
    ana.in = sim.out;
    ana.out = (dir.path / "report1.json").string();
    CHECK(cli::cmd_analyze(ana) == 0);
    ana.out = (dir.path / "report2.json").string();
    CHECK(cli::cmd_analyze(ana) == 0);
    CHECK(slurp(dir.path / "report1.json") == slurp(dir.path / "report2.json"));

    const json report = json::parse(slurp(dir.path / "report1.json"));
    CHECK_FALSE(report["correlator_form"]["violated"].get<bool>());
}

TEST_CASE("search result and sweep serialization") {
    const json result = io::search_result_to_json(search::analytic_optimum());
    CHECK(result["objective"].get<double>() == doctest::Approx(std::sqrt(2.0)));
    CHECK(result["family"] == "orthogonal");
    CHECK(result["triple"].size() == 3);

    std::vector<search::SweepRow> rows{{0.1, -0.2, 0.01, 1.1, 0.02, true}};
    const json sweep = io::sweep_to_json(rows);
    CHECK(sweep["rows"].size() == 1);
    CHECK(sweep["rows"][0]["violated"].get<bool>());

    const std::string csv = io::sweep_to_csv(rows);
    CHECK(csv.find("eta,delta_measured") == 0);
    // 17 significant digits: 0.1 round-trips as its exact binary value.
    CHECK(csv.find("0.10000000000000001,") != std::string::npos);
    CHECK(csv.back() == '\n');
}

TEST_CASE("invasive model flows through the cli layer") {
    TempDir dir;
    cli::SimulateConfig sim;
    sim.model = "invasive";
    sim.n_throws = 5000;
    sim.out = (dir.path / "inv.jsonl").string();
    CHECK(cli::cmd_simulate(sim) == 0);

    const io::RecordFile file = io::read_records_file(sim.out);
    CHECK(file.records.size() == 5000);
    REQUIRE(file.meta.has_value());
    CHECK((*file.meta)["model"]["kind"] == "invasive");
}

TEST_CASE("unknown model is a config error") {
    cli::SimulateConfig sim;
    sim.model = "classical";
    CHECK_THROWS_AS(cli::plan_from_config(sim), InvalidConfigError);
    try {
        cli::plan_from_config(sim);
    } catch (const std::exception& e) {
        CHECK(cli::exit_code_for(e) == cli::kExitConfig);
    }
}
