#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "sa/core/admissibility.hpp"
#include "sa/core/step_schedule.hpp"
#include "sa/innovations/sources.hpp"

namespace sa::cli {

using json = nlohmann::ordered_json;

/// Schema violation; the message names the offending field.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Reads keys of one config object with defaults, records the effective values, and rejects
/// unknown keys on finish().
class Fields {
public:
    Fields(const json& in, std::string path);

    double number(const std::string& key, double def);
    double number(const std::string& key);
    std::uint64_t integer(const std::string& key, std::uint64_t def);
    std::uint64_t integer(const std::string& key);
    bool boolean(const std::string& key, bool def);
    std::string text(const std::string& key, const std::string& def);
    std::string text(const std::string& key);
    std::vector<double> numbers(const std::string& key, const std::vector<double>& def);
    std::optional<double> optional_number(const std::string& key);
    bool has(const std::string& key) const;

    /// Throws ConfigError listing unknown keys.
    void finish() const;
    const json& effective() const noexcept { return effective_; }
    const std::string& path() const noexcept { return path_; }

private:
    const json* lookup(const std::string& key);
    [[noreturn]] void fail(const std::string& key, const std::string& msg) const;

    json in_;
    std::string path_;
    json effective_ = json::object();
    std::set<std::string> used_;
};

struct ExperimentConfig {
    std::string experiment;
    std::uint64_t seed = 0;
    std::size_t horizon = 0;
    std::size_t record_stride = 100;
    std::string output_dir;
    json steps = json::object();
    json source = json::object();
    json params = json::object();
};

json load_json_file(const std::filesystem::path& path);

/// Top-level schema: experiment and seed mandatory; unknown keys rejected.
ExperimentConfig parse_config(const json& j);

/// {"form": "power", "c", "a"} or {"form": "tabulated", "values": [...]}.
core::StepSchedule parse_steps(Fields& f);

/// Builds a source of the given kind and dimension from a source block; the seed comes from the config.
std::unique_ptr<innovations::InnovationSource> make_source(const std::string& kind, std::size_t dimension,
                                                           std::uint64_t seed, Fields& f);

/// Averaging rate attached to a source kind (halton kinds: Lipschitz QSA rate in dimension q).
core::RateSpec rate_for_source(const std::string& kind, std::size_t q, double euler_r = 1.0 / 3.0);

/// Throws ConfigError citing the admissibility rule when the pair is rejected.
void validate_steps(const core::StepSchedule& steps, const std::string& kind, std::size_t q,
                    std::size_t horizon, double euler_r = 1.0 / 3.0);

} // namespace sa::cli
