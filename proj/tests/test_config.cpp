#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "doctest.h"
#include "qrep/config.hpp"
#include "qrep/protocols.hpp"

using qrep::OutputTable;
using qrep::ProtocolKind;
using qrep::RunConfig;

namespace {

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name, const std::string& content)
        : path(name) {
        std::ofstream out(path);
        out << content;
    }
    ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_SUITE("config") {

TEST_CASE("defaults materialize into the validated model structs") {
    RunConfig config;
    qrep::NoiseModel m = config.noise_model();
    CHECK(m.p == 0.99);
    CHECK(m.eta == 0.99);
    CHECK(m.kappa == 1.0);
    qrep::TimeModel tm = config.time_model();
    CHECK(tm.t0_s == 0.333e-4);
    CHECK(tm.segment_km == 10.0);
}

TEST_CASE("model accessors wrap range errors as config errors") {
    RunConfig config;
    config.noise_p = 1.5;
    CHECK_THROWS_AS(config.noise_model(), qrep::config_error);
    RunConfig gate;
    gate.time_gate_s = -0.1;
    CHECK_THROWS_AS(gate.time_model(), qrep::config_error);
}

TEST_CASE("protocol_spec broadcasts a single step count over all levels") {
    RunConfig config;
    qrep::ProtocolSpec spec = config.protocol_spec();
    CHECK(spec.kind == ProtocolKind::standard);
    CHECK(spec.levels == 11);
    REQUIRE(spec.steps_per_level.size() == 11);
    for (int s : spec.steps_per_level) CHECK(s == 3);
    CHECK(spec.initial_f == 0.8);
    // Waiting protocols carry no blind stack regardless of the blind knobs.
    CHECK(spec.blind_levels == 0);
}

TEST_CASE("protocol_spec takes explicit per-level steps verbatim") {
    RunConfig config;
    config.protocol_levels = 3;
    config.protocol_steps = {3, 2, 1};
    qrep::ProtocolSpec spec = config.protocol_spec();
    CHECK(spec.steps_per_level == std::vector<int>{3, 2, 1});

    config.protocol_steps = {3, 2};
    CHECK_THROWS_AS(config.protocol_spec(), qrep::config_error);
}

TEST_CASE("protocol_spec maps kinds and wraps validation failures") {
    RunConfig config;
    config.protocol_kind = "innsbruck";
    CHECK(config.protocol_spec().kind == ProtocolKind::innsbruck);

    config.protocol_kind = "blind";
    qrep::ProtocolSpec blind = config.protocol_spec();
    CHECK(blind.kind == ProtocolKind::blind);
    CHECK(blind.blind_levels == 1);
    CHECK(blind.base == ProtocolKind::standard);

    config.protocol_kind = "bogus";
    CHECK_THROWS_AS(config.protocol_spec(), qrep::config_error);

    config.protocol_kind = "standard";
    config.protocol_levels = 0;
    config.protocol_steps = {};
    CHECK_THROWS_AS(config.protocol_spec(), qrep::config_error);
}

TEST_CASE("parse_config_file reads key = value lines with comments") {
    TempFile file("config_suite_tmp.cfg",
                  "# leading comment\n"
                  "noise.p = 0.97   # trailing comment\n"
                  "  protocol.steps = 3,2,1\n"
                  "\n"
                  "seed = 99\n");
    std::map<std::string, std::string> entries =
        qrep::parse_config_file(file.path);
    REQUIRE(entries.size() == 3);
    CHECK(entries.at("noise.p") == "0.97");
    CHECK(entries.at("protocol.steps") == "3,2,1");
    CHECK(entries.at("seed") == "99");
}

TEST_CASE("parse_config_file rejects malformed input") {
    TempFile file("config_suite_bad_tmp.cfg", "noise.p 0.97\n");
    CHECK_THROWS_AS(qrep::parse_config_file(file.path), qrep::config_error);
    TempFile empty_value("config_suite_bad2_tmp.cfg", "noise.p =\n");
    CHECK_THROWS_AS(qrep::parse_config_file(empty_value.path),
                    qrep::config_error);
    CHECK_THROWS_AS(qrep::parse_config_file("no_such_file_anywhere.cfg"),
                    qrep::config_error);
}

TEST_CASE("apply_config_entry parses every value shape it advertises") {
    RunConfig config;
    qrep::apply_config_entry(config, "noise.p", "0.5");
    CHECK(config.noise_p == 0.5);
    qrep::apply_config_entry(config, "protocol.levels", "7");
    CHECK(config.protocol_levels == 7);
    qrep::apply_config_entry(config, "protocol.steps", "4, 3, 2");
    CHECK(config.protocol_steps == std::vector<int>{4, 3, 2});
    qrep::apply_config_entry(config, "sweep.error_rates", "0.1,0.05");
    CHECK(config.sweep_error_rates == std::vector<double>{0.1, 0.05});
    qrep::apply_config_entry(config, "protocol.kind", "blind");
    CHECK(config.protocol_kind == "blind");
    qrep::apply_config_entry(config, "seed", "42");
    CHECK(config.seed == 42);
    qrep::apply_config_entry(config, "oracle.trials", "500");
    CHECK(config.oracle_trials == 500);
}

TEST_CASE("apply_config_entry rejects unknown keys and bad values") {
    RunConfig config;
    CHECK_THROWS_AS(qrep::apply_config_entry(config, "noise.q", "0.5"),
                    qrep::config_error);
    CHECK_THROWS_AS(qrep::apply_config_entry(config, "noise.p", "abc"),
                    qrep::config_error);
    CHECK_THROWS_AS(qrep::apply_config_entry(config, "protocol.levels", "3.5"),
                    qrep::config_error);
    CHECK_THROWS_AS(qrep::apply_config_entry(config, "protocol.steps", "3,,2"),
                    qrep::config_error);
    CHECK_THROWS_AS(qrep::apply_config_entry(config, "seed", "-1"),
                    qrep::config_error);
    CHECK_THROWS_AS(qrep::apply_config_entry(config, "oracle.trials", "0"),
                    qrep::config_error);
}

TEST_CASE("make_config layers defaults, file entries, then overrides") {
    std::map<std::string, std::string> file_entries = {
        {"noise.p", "0.9"}, {"noise.eta", "0.95"}};
    std::map<std::string, std::string> overrides = {{"noise.p", "0.97"}};
    RunConfig config = qrep::make_config(file_entries, overrides);
    CHECK(config.noise_p == 0.97);
    CHECK(config.noise_eta == 0.95);
    CHECK(config.noise_kappa == 1.0);
}

TEST_CASE("config_entries round-trips through apply_config_entry") {
    RunConfig original;
    original.protocol_steps = {3, 2, 1};
    original.protocol_levels = 3;
    original.sweep_error_rates = {0.02, 0.004};
    original.seed = 777;
    original.noise_kappa = 2.5;
    std::map<std::string, std::string> entries = qrep::config_entries(original);

    RunConfig rebuilt;
    for (const auto& [key, value] : entries) {
        qrep::apply_config_entry(rebuilt, key, value);
    }
    CHECK(qrep::config_entries(rebuilt) == entries);
    CHECK(rebuilt.protocol_steps == original.protocol_steps);
    CHECK(rebuilt.seed == original.seed);
}

TEST_CASE("to_csv quantizes to 9 significant digits and marks gaps") {
    OutputTable table;
    table.columns = {"level", "fidelity"};
    table.rows = {
        {1.0, 0.123456789123},
        {2.0, std::nullopt},
        {3.0, -4.25e-7},
    };
    CHECK(qrep::to_csv(table) ==
          "level,fidelity\n"
          "1,0.123456789\n"
          "2,-\n"
          "3,-4.25e-07\n");
}

TEST_CASE("to_csv rejects ragged rows") {
    OutputTable table;
    table.columns = {"a", "b"};
    table.rows = {{1.0}};
    CHECK_THROWS_AS(qrep::to_csv(table), std::invalid_argument);
}

TEST_CASE("parse_csv inverts to_csv bit-exactly") {
    OutputTable table;
    table.columns = {"level", "fidelity"};
    table.rows = {
        {1.0, 0.123456789123},
        {2.0, std::nullopt},
        {3.0, -4.25e-7},
    };
    OutputTable parsed = qrep::parse_csv(qrep::to_csv(table));
    REQUIRE(parsed.columns == table.columns);
    REQUIRE(parsed.rows.size() == 3);
    CHECK(*parsed.rows[0][1] == 0.123456789);  // quantized, then exact
    CHECK_FALSE(parsed.rows[1][1].has_value());
    CHECK(*parsed.rows[2][1] == -4.25e-07);
}

TEST_CASE("JSON and CSV outputs carry bit-identical numbers") {
    OutputTable table;
    table.columns = {"level", "fidelity"};
    table.rows = {
        {1.0, 0.95624625412345},
        {2.0, std::nullopt},
    };
    RunConfig config;
    OutputTable from_csv = qrep::parse_csv(qrep::to_csv(table));
    nlohmann::json doc = nlohmann::json::parse(qrep::to_json(table, config));

    REQUIRE(doc["rows"].size() == 2);
    CHECK(doc["rows"][0]["fidelity"].get<double>() == *from_csv.rows[0][1]);
    CHECK(doc["rows"][0]["level"].get<double>() == *from_csv.rows[0][0]);
    CHECK(doc["rows"][1]["fidelity"].is_null());

    // The emitting configuration travels with the numbers.
    CHECK(doc["params"]["seed"] == "12345");
    CHECK(doc["params"]["noise.p"] == "0.99");
}

}  // TEST_SUITE("config")
