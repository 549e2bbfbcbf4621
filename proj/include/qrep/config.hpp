// Run configuration: defaults, flat dotted-key config files, command-line
// overrides, and tabular CSV/JSON emission.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qrep/noise.hpp"
#include "qrep/protocols.hpp"
#include "qrep/time_model.hpp"

namespace qrep {

// Thrown for malformed configuration input (unknown keys, unparsable or
// out-of-range values, missing files).
class config_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Every tunable of the engine, addressable by a flat dotted key.  Defaults
// reproduce the reference operating point: 1% gate and measurement errors,
// one-second memories, 10 km segments.
struct RunConfig {
    // noise.*
    double noise_p = 0.99;
    double noise_eta = 0.99;
    double noise_kappa = 1.0;

    // time.*
    double time_t0_s = 0.333e-4;
    double time_segment_km = 10.0;
    double time_gate_s = 0.0;  // reserved: gate execution time, treated as negligible

    // protocol.*
    std::string protocol_kind = "standard";
    int protocol_levels = 11;
    std::vector<int> protocol_steps = {3};  // single entry = uniform across levels
    double protocol_initial_f = 0.8;
    int protocol_blind_levels = 1;
    int protocol_branching = 2;
    std::string protocol_base = "standard";
    double protocol_forced_blind_step_prob = 0.0;

    // regime.*
    double regime_pump_f = 0.8;
    int regime_max_level = 12;

    // sweep.*
    std::vector<double> sweep_error_rates = {0.03, 0.02, 0.01, 0.005, 0.003};

    // blind.*
    int blind_steps = 3;    // M
    int blind_branching = 2;  // L
    int blind_max_levels = 4;  // m ranges 1..this
    std::vector<double> blind_p_sucs = {0.95, 0.9};

    // oracle.*
    std::size_t oracle_trials = 120;

    std::uint64_t seed = 12345;

    NoiseModel noise_model() const;
    TimeModel time_model() const;
    // Protocol spec for the configured kind; a single steps entry is expanded
    // uniformly over the levels.  Throws config_error on inconsistencies.
    ProtocolSpec protocol_spec() const;
};

// Parses "key = value" lines ('#' starts a comment, blank lines ignored).
// Throws config_error on unreadable files or malformed lines.
std::map<std::string, std::string> parse_config_file(const std::string& path);

// Applies one dotted-key entry; throws config_error on unknown keys or
// unparsable values.
void apply_config_entry(RunConfig& config, const std::string& key,
                        const std::string& value);

// Defaults, overlaid with file entries, overlaid with command-line overrides.
RunConfig make_config(const std::map<std::string, std::string>& file_entries,
                      const std::map<std::string, std::string>& overrides);

// Flat view of every key, in the file syntax; JSON output embeds it so the
// parameters of a run travel with its numbers.
std::map<std::string, std::string> config_entries(const RunConfig& config);

// A rectangular result table; missing cells (outside a working regime) are
// emitted as "-" in CSV and null in JSON.
struct OutputTable {
    std::vector<std::string> columns;
    std::vector<std::vector<std::optional<double>>> rows;
};

// Values are quantized to 9 significant digits identically in both formats,
// so re-parsing CSV and JSON yields bit-equal numbers.
std::string to_csv(const OutputTable& table);
std::string to_json(const OutputTable& table, const RunConfig& config);

// Inverse of to_csv, for regression diffing and round-trip checks.
OutputTable parse_csv(const std::string& text);

}  // namespace qrep
