#include "chaos_target/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

namespace chaos_target {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        parts.push_back(trim(s.substr(start, pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return parts;
}

struct Entry {
    std::string value;
    std::size_t line;
};

const std::vector<std::string_view> kKnownKeys = {
    "map",     "p",       "q",      "alpha",           "beta",            "x0",     "target",
    "horizon", "mu",      "epsilon", "population_size", "max_generations", "n_runs", "seed",
    "format"};

}  // namespace

OutputFormat parse_output_format(std::string_view name) {
    if (name == "csv") return OutputFormat::Csv;
    if (name == "json") return OutputFormat::Json;
    throw std::invalid_argument("unknown format '" + std::string(name) + "' (expected csv|json)");
}

ConfigError::ConfigError(std::size_t line, std::string field, const std::string& message)
    : std::runtime_error((line > 0 ? "line " + std::to_string(line) + ": " : std::string()) +
                         (field.empty() ? std::string() : "'" + field + "': ") + message),
      line_(line),
      field_(std::move(field)) {}

double parse_real(std::string_view text) {
    text = trim(text);
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
        throw std::invalid_argument("not a number: '" + std::string(text) + "'");
    }
    if (!std::isfinite(v)) throw std::invalid_argument("value must be finite");
    return v;
}

std::uint64_t parse_u64(std::string_view text) {
    text = trim(text);
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
        throw std::invalid_argument("not an unsigned integer: '" + std::string(text) + "'");
    }
    return v;
}

State2 parse_state(std::string_view text) {
    const auto parts = split(text, ',');
    if (parts.size() != 2) throw std::invalid_argument("expected two comma-separated components");
    return {parse_real(parts[0]), parse_real(parts[1])};
}

std::vector<std::size_t> parse_count_list(std::string_view text) {
    std::vector<std::size_t> out;
    for (std::string_view item : split(text, ',')) {
        const auto dots = item.find("..");
        if (dots == std::string_view::npos) {
            out.push_back(parse_u64(item));
            continue;
        }
        const auto lo = parse_u64(item.substr(0, dots));
        const auto hi = parse_u64(item.substr(dots + 2));
        if (lo > hi) throw std::invalid_argument("empty range '" + std::string(item) + "'");
        if (hi - lo > 100000) throw std::invalid_argument("range too long '" + std::string(item) + "'");
        for (auto v = lo; v <= hi; ++v) out.push_back(v);
    }
    return out;
}

std::vector<double> parse_real_list(std::string_view text) {
    std::vector<double> out;
    for (std::string_view item : split(text, ',')) out.push_back(parse_real(item));
    return out;
}

TargetingProblem ExperimentConfig::base_problem() const {
    TargetingProblem p;
    p.map = map;
    p.x0 = x0;
    p.target = target;
    p.horizon = horizons.empty() ? 1 : horizons.front();
    p.mu = mu_values.empty() ? 0.01 : mu_values.front();
    p.epsilon = eps_values.empty() ? 0.02 : eps_values.front();
    return p;
}

TlboConfig ExperimentConfig::tlbo_config() const {
    return {population_size, max_generations, seed};
}

ExperimentConfig parse_config(std::string_view text) {
    std::map<std::string, Entry, std::less<>> entries;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto eol = text.find('\n', pos);
        std::string_view line = text.substr(pos, eol == std::string_view::npos ? eol : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;

        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError(line_no, "", "expected 'key = value'");
        }
        const std::string key(trim(line.substr(0, eq)));
        const std::string value(trim(line.substr(eq + 1)));
        if (std::find(kKnownKeys.begin(), kKnownKeys.end(), key) == kKnownKeys.end()) {
            throw ConfigError(line_no, key, "unknown key");
        }
        if (value.empty()) throw ConfigError(line_no, key, "missing value");
        if (auto it = entries.find(key); it != entries.end()) {
            throw ConfigError(line_no, key,
                              "duplicate key (first set on line " + std::to_string(it->second.line) +
                                  ")");
        }
        entries.emplace(key, Entry{value, line_no});
    }

    auto find = [&](std::string_view key) -> const Entry* {
        auto it = entries.find(key);
        return it == entries.end() ? nullptr : &it->second;
    };
    auto require = [&](std::string_view key) -> const Entry& {
        const Entry* e = find(key);
        if (!e) throw ConfigError(0, std::string(key), "required key missing");
        return *e;
    };
    // Runs `fn` on the entry, converting parse failures into ConfigError.
    auto field = [&](std::string_view key, const Entry& e, auto fn) {
        try {
            return fn(e.value);
        } catch (const std::invalid_argument& ex) {
            throw ConfigError(e.line, std::string(key), ex.what());
        }
    };

    ExperimentConfig cfg;
    if (const Entry* e = find("map")) {
        cfg.map.kind = field("map", *e, [](const std::string& v) { return parse_map_kind(v); });
    }
    const bool henon = cfg.map.kind == MapKind::Henon;
    cfg.map = henon ? ChaoticMapSpec::henon() : ChaoticMapSpec::ushio();
    const char* first_param = henon ? "p" : "alpha";
    const char* second_param = henon ? "q" : "beta";
    for (const char* foreign : henon ? std::vector{"alpha", "beta"} : std::vector{"p", "q"}) {
        if (const Entry* e = find(foreign)) {
            throw ConfigError(e->line, foreign,
                              "parameter does not apply to map " + std::string(to_string(cfg.map.kind)));
        }
    }
    if (const Entry* e = find(first_param)) cfg.map.a = field(first_param, *e, parse_real);
    if (const Entry* e = find(second_param)) cfg.map.b = field(second_param, *e, parse_real);

    cfg.x0 = field("x0", require("x0"), parse_state);

    const Entry& target = require("target");
    if (target.value == "fixed-point") {
        if (!henon) throw ConfigError(target.line, "target", "fixed-point is only defined for henon");
        try {
            cfg.target = henon_fixed_point(cfg.map.a, cfg.map.b);
        } catch (const NoFixedPointError& ex) {
            throw ConfigError(target.line, "target", ex.what());
        }
    } else {
        cfg.target = field("target", target, parse_state);
    }

    cfg.horizons = field("horizon", require("horizon"), parse_count_list);
    for (std::size_t n : cfg.horizons) {
        if (n < 1) throw ConfigError(require("horizon").line, "horizon", "values must be >= 1");
    }
    cfg.mu_values = field("mu", require("mu"), parse_real_list);
    for (double mu : cfg.mu_values) {
        if (!(mu > 0.0)) throw ConfigError(require("mu").line, "mu", "values must be > 0");
    }
    cfg.eps_values = field("epsilon", require("epsilon"), parse_real_list);
    for (double eps : cfg.eps_values) {
        if (!(eps > 0.0)) throw ConfigError(require("epsilon").line, "epsilon", "values must be > 0");
    }

    auto count = [&](const char* key, std::size_t& out, std::size_t min) {
        if (const Entry* e = find(key)) {
            out = field(key, *e, parse_u64);
            if (out < min) {
                throw ConfigError(e->line, key, "must be >= " + std::to_string(min));
            }
        }
    };
    count("population_size", cfg.population_size, 2);
    count("max_generations", cfg.max_generations, 1);
    count("n_runs", cfg.n_runs, 1);
    if (const Entry* e = find("seed")) cfg.seed = field("seed", *e, parse_u64);
    if (const Entry* e = find("format")) cfg.format = field("format", *e, parse_output_format);
    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(0, "", "cannot open config file " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

}  // namespace chaos_target
