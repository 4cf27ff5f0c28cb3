#include "sa/cli/config.hpp"

#include <cmath>
#include <fstream>

#include "sa/innovations/sources.hpp"

namespace sa::cli {

Fields::Fields(const json& in, std::string path) : in_(in.is_null() ? json::object() : in), path_(std::move(path)) {
    if (!in_.is_object()) throw ConfigError(path_ + ": expected an object");
}

void Fields::fail(const std::string& key, const std::string& msg) const {
    throw ConfigError(path_ + "." + key + ": " + msg);
}

const json* Fields::lookup(const std::string& key) {
    used_.insert(key);
    auto it = in_.find(key);
    return it == in_.end() ? nullptr : &*it;
}

bool Fields::has(const std::string& key) const { return in_.contains(key); }

double Fields::number(const std::string& key, double def) {
    const json* v = lookup(key);
    double x = def;
    if (v) {
        if (!v->is_number()) fail(key, "expected a number");
        x = v->get<double>();
        if (!std::isfinite(x)) fail(key, "must be finite");
    }
    effective_[key] = x;
    return x;
}

double Fields::number(const std::string& key) {
    if (!has(key)) fail(key, "required");
    return number(key, 0.0);
}

std::optional<double> Fields::optional_number(const std::string& key) {
    if (!has(key)) {
        used_.insert(key);
        return std::nullopt;
    }
    return number(key, 0.0);
}

std::uint64_t Fields::integer(const std::string& key, std::uint64_t def) {
    const json* v = lookup(key);
    std::uint64_t x = def;
    if (v) {
        if (!v->is_number_integer() || (v->is_number_integer() && !v->is_number_unsigned() && v->get<std::int64_t>() < 0))
            fail(key, "expected a nonnegative integer");
        x = v->get<std::uint64_t>();
    }
    effective_[key] = x;
    return x;
}

std::uint64_t Fields::integer(const std::string& key) {
    if (!has(key)) fail(key, "required");
    return integer(key, 0);
}

bool Fields::boolean(const std::string& key, bool def) {
    const json* v = lookup(key);
    bool x = def;
    if (v) {
        if (!v->is_boolean()) fail(key, "expected true or false");
        x = v->get<bool>();
    }
    effective_[key] = x;
    return x;
}

std::string Fields::text(const std::string& key, const std::string& def) {
    const json* v = lookup(key);
    std::string x = def;
    if (v) {
        if (!v->is_string()) fail(key, "expected a string");
        x = v->get<std::string>();
    }
    effective_[key] = x;
    return x;
}

std::string Fields::text(const std::string& key) {
    if (!has(key)) fail(key, "required");
    return text(key, "");
}

std::vector<double> Fields::numbers(const std::string& key, const std::vector<double>& def) {
    const json* v = lookup(key);
    std::vector<double> x = def;
    if (v) {
        if (!v->is_array()) fail(key, "expected an array of numbers");
        x.clear();
        for (const auto& e : *v) {
            if (!e.is_number()) fail(key, "expected an array of numbers");
            x.push_back(e.get<double>());
        }
    }
    effective_[key] = x;
    return x;
}

void Fields::finish() const {
    std::string unknown;
    for (auto it = in_.begin(); it != in_.end(); ++it)
        if (!used_.count(it.key())) unknown += (unknown.empty() ? "" : ", ") + path_ + "." + it.key();
    if (!unknown.empty()) throw ConfigError("unknown key(s): " + unknown);
}

json load_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::ios_base::failure("cannot open config file " + path.string());
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
}

namespace {
bool nonnegative_integer(const json& v) {
    return v.is_number_unsigned() || (v.is_number_integer() && v.get<std::int64_t>() >= 0);
}
} // namespace

ExperimentConfig parse_config(const json& j) {
    if (!j.is_object()) throw ConfigError("config: expected a JSON object");
    static const std::set<std::string> known = {"experiment", "seed",   "horizon", "record_stride",
                                                "output_dir", "steps",  "source",  "params"};
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!known.count(it.key())) throw ConfigError("unknown key(s): config." + it.key());
    ExperimentConfig c;
    if (!j.contains("experiment") || !j["experiment"].is_string())
        throw ConfigError("config.experiment: required string");
    c.experiment = j["experiment"].get<std::string>();
    if (!j.contains("seed")) throw ConfigError("config.seed: required (no wall-clock default)");
    if (!nonnegative_integer(j["seed"])) throw ConfigError("config.seed: expected a nonnegative integer");
    c.seed = j["seed"].get<std::uint64_t>();
    auto opt_uint = [&](const char* key, std::size_t def) -> std::size_t {
        if (!j.contains(key)) return def;
        if (!nonnegative_integer(j[key])) throw ConfigError(std::string("config.") + key + ": expected a nonnegative integer");
        return j[key].get<std::size_t>();
    };
    c.horizon = opt_uint("horizon", 0);
    c.record_stride = opt_uint("record_stride", 100);
    if (c.record_stride == 0) throw ConfigError("config.record_stride: must be >= 1");
    if (j.contains("output_dir")) {
        if (!j["output_dir"].is_string()) throw ConfigError("config.output_dir: expected a string");
        c.output_dir = j["output_dir"].get<std::string>();
    }
    for (const char* key : {"steps", "source", "params"}) {
        if (!j.contains(key)) continue;
        if (!j[key].is_object()) throw ConfigError(std::string("config.") + key + ": expected an object");
    }
    if (j.contains("steps")) c.steps = j["steps"];
    if (j.contains("source")) c.source = j["source"];
    if (j.contains("params")) c.params = j["params"];
    return c;
}

core::StepSchedule parse_steps(Fields& f) {
    const std::string form = f.text("form", "power");
    try {
        if (form == "power") {
            const double c = f.number("c", 1.0);
            return core::StepSchedule::power(c, f.number("a", 1.0));
        }
        if (form == "tabulated") {
            auto v = f.numbers("values", {});
            return core::StepSchedule::tabulated(std::move(v));
        }
    } catch (const std::invalid_argument& e) {
        throw ConfigError(f.path() + ": " + e.what());
    }
    throw ConfigError(f.path() + ".form: expected \"power\" or \"tabulated\"");
}

std::unique_ptr<innovations::InnovationSource> make_source(const std::string& kind, std::size_t q,
                                                           std::uint64_t seed, Fields& f) {
    using namespace innovations;
    try {
        if (kind == "iid-gaussian") return std::make_unique<IidGaussianSource>(q, seed);
        if (kind == "iid-uniform") return std::make_unique<IidUniformSource>(q, seed);
        if (kind == "halton") return std::make_unique<HaltonSource>(q, f.integer("start", 1));
        if (kind == "halton-gaussian") return std::make_unique<HaltonGaussianSource>(q, f.integer("start", 1));
        if (kind == "ar1-mixing") {
            const double a = f.number("coefficient", 0.5);
            const double x0 = f.number("x0", 0.0);
            return std::make_unique<Ar1Source>(q, a, seed, x0, f.number("noise_scale", 1.0));
        }
    } catch (const std::invalid_argument& e) {
        throw ConfigError(f.path() + ": " + e.what());
    }
    throw ConfigError(f.path() + ".kind: unsupported source kind '" + kind + "' for this experiment");
}

core::RateSpec rate_for_source(const std::string& kind, std::size_t q, double euler_r) {
    if (kind == "halton" || kind == "halton-gaussian") return core::qsa_rate(core::Regularity::lipschitz, q);
    if (kind == "euler-decreasing") return core::RateSpec::power(euler_r);
    return core::RateSpec::power(0.5);
}

void validate_steps(const core::StepSchedule& steps, const std::string& kind, std::size_t q, std::size_t horizon,
                    double euler_r) {
    core::AdmissibilityReport rep;
    if (steps.is_power()) {
        if (kind == "halton" || kind == "halton-gaussian")
            rep = core::admissible_qsa(core::Regularity::lipschitz, q, steps.exponent());
        else
            rep = core::admissible_power_pair(steps.exponent(), rate_for_source(kind, q, euler_r).beta);
        if (steps.scale() == 0.0) {
            rep.verdict = core::Verdict::not_admissible;
            rep.failed.push_back("c = 0: sum gamma_n < inf");
        }
    } else {
        const std::size_t len = *steps.length();
        if (len < horizon) throw ConfigError("steps.values: tabulated schedule has " + std::to_string(len) +
                                             " values, horizon needs " + std::to_string(horizon));
        if (len >= 11) rep = core::check_schedule_numeric(steps, rate_for_source(kind, q, euler_r), len - 1);
        rep.rule = "numeric probe of the admissibility conditions";
    }
    if (rep.verdict == core::Verdict::not_admissible)
        throw ConfigError("steps: schedule not admissible for source '" + kind + "': " + rep.describe());
}

} // namespace sa::cli
