#include "ltls/config.hpp"

#include <fstream>
#include <set>

#include <json.hpp>

#include "ltls/errors.hpp"

namespace ltls {

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, const std::set<std::string>& allowed,
                    const std::string& path) {
    for (const auto& [key, value] : obj.items()) {
        if (!allowed.count(key))
            throw ConfigError("unknown config key: " + (path.empty() ? key : path + "." + key));
    }
}

template <typename T>
void get_if_present(const json& obj, const char* key, T& target) {
    if (obj.contains(key)) target = obj.at(key).get<T>();
}

std::optional<Frequency> parse_frequency(const json& obj, const std::string& path) {
    if (!obj.contains("frequency")) return std::nullopt;
    const std::string f = obj.at("frequency").get<std::string>();
    if (f == "monthly") return Frequency::monthly;
    if (f == "quarterly") return Frequency::quarterly;
    throw ConfigError(path + ".frequency: must be 'monthly' or 'quarterly'");
}

ColumnMap parse_columns(const json& obj, const std::string& path) {
    ColumnMap map;
    if (!obj.contains("columns")) return map;
    const json& c = obj.at("columns");
    reject_unknown(c, {"date", "index", "predictor", "earnings", "price"}, path + ".columns");
    get_if_present(c, "date", map.date);
    get_if_present(c, "index", map.index);
    get_if_present(c, "predictor", map.predictor);
    get_if_present(c, "earnings", map.earnings);
    get_if_present(c, "price", map.price);
    return map;
}

json columns_json(const ColumnMap& m) {
    return json{{"date", m.date},
                {"index", m.index},
                {"predictor", m.predictor},
                {"earnings", m.earnings},
                {"price", m.price}};
}

}  // namespace

RunConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    json root;
    try {
        in >> root;
    } catch (const json::exception& e) {
        throw ConfigError("config parse error in '" + path + "': " + e.what());
    }

    RunConfig cfg;
    reject_unknown(root, {"seed", "profile", "threads", "out", "size", "power", "estimate",
                          "predict", "memory"},
                   "");
    get_if_present(root, "seed", cfg.seed);
    get_if_present(root, "profile", cfg.profile);
    get_if_present(root, "threads", cfg.threads);
    get_if_present(root, "out", cfg.out);

    if (root.contains("size")) {
        const json& s = root.at("size");
        reject_unknown(s, {"regime", "c", "d", "delta", "n", "methods", "level"}, "size");
        get_if_present(s, "regime", cfg.size.regime);
        get_if_present(s, "c", cfg.size.c);
        get_if_present(s, "d", cfg.size.d);
        get_if_present(s, "delta", cfg.size.delta);
        get_if_present(s, "n", cfg.size.n);
        get_if_present(s, "methods", cfg.size.methods);
        get_if_present(s, "level", cfg.size.level);
    }
    if (root.contains("power")) {
        const json& s = root.at("power");
        reject_unknown(s, {"regime", "c", "d", "delta", "n", "methods", "beta", "level"}, "power");
        get_if_present(s, "regime", cfg.power.regime);
        get_if_present(s, "c", cfg.power.c);
        get_if_present(s, "d", cfg.power.d);
        get_if_present(s, "delta", cfg.power.delta);
        get_if_present(s, "n", cfg.power.n);
        get_if_present(s, "methods", cfg.power.methods);
        get_if_present(s, "beta", cfg.power.beta);
        get_if_present(s, "level", cfg.power.level);
    }
    if (root.contains("estimate")) {
        const json& s = root.at("estimate");
        reject_unknown(s, {"input", "setups", "beta0", "col_y", "col_x", "empirical"}, "estimate");
        get_if_present(s, "input", cfg.estimate.input);
        get_if_present(s, "setups", cfg.estimate.setups);
        get_if_present(s, "beta0", cfg.estimate.beta0);
        get_if_present(s, "col_y", cfg.estimate.col_y);
        get_if_present(s, "col_x", cfg.estimate.col_x);
        get_if_present(s, "empirical", cfg.estimate.empirical);
    }
    if (root.contains("predict")) {
        const json& s = root.at("predict");
        reject_unknown(s, {"data", "m", "setups", "columns", "frequency"}, "predict");
        get_if_present(s, "data", cfg.predict.data);
        get_if_present(s, "m", cfg.predict.m);
        get_if_present(s, "setups", cfg.predict.setups);
        cfg.predict.columns = parse_columns(s, "predict");
        cfg.predict.frequency = parse_frequency(s, "predict");
    }
    if (root.contains("memory")) {
        const json& s = root.at("memory");
        reject_unknown(s, {"data", "b", "m", "columns", "frequency"}, "memory");
        get_if_present(s, "data", cfg.memory.data);
        get_if_present(s, "b", cfg.memory.b);
        get_if_present(s, "m", cfg.memory.m);
        cfg.memory.columns = parse_columns(s, "memory");
        cfg.memory.frequency = parse_frequency(s, "memory");
    }
    validate(cfg);
    return cfg;
}

void validate(const RunConfig& cfg) {
    if (cfg.profile != "desk" && cfg.profile != "full")
        throw ConfigError("profile: must be 'desk' or 'full'");
    if (cfg.threads < 0) throw ConfigError("threads: must be >= 0");

    auto check_level = [](double level, const std::string& path) {
        if (!(level > 0.0 && level < 0.5))
            throw ConfigError(path + ".level: must lie in (0, 0.5)");
    };
    auto check_regime = [](const std::string& r, const std::string& path) {
        if (r != "ni" && r != "fractional")
            throw ConfigError(path + ".regime: must be 'ni' or 'fractional'");
    };
    check_level(cfg.size.level, "size");
    check_level(cfg.power.level, "power");
    check_regime(cfg.size.regime, "size");
    check_regime(cfg.power.regime, "power");
    for (double c : cfg.size.c)
        if (c > 0.0) throw ConfigError("size.c: near-unity parameters must be <= 0");
    for (double c : cfg.power.c)
        if (c > 0.0) throw ConfigError("power.c: near-unity parameters must be <= 0");
    for (double d : cfg.size.d)
        if (!(d > 0.0 && d < 1.5)) throw ConfigError("size.d: memory values must lie in (0, 1.5)");
    for (double d : cfg.power.d)
        if (!(d > 0.0 && d < 1.5)) throw ConfigError("power.d: memory values must lie in (0, 1.5)");
    for (int n : cfg.size.n)
        if (n < 16) throw ConfigError("size.n: sample sizes must be >= 16");
    for (int n : cfg.power.n)
        if (n < 16) throw ConfigError("power.n: sample sizes must be >= 16");
    for (double b : cfg.memory.b)
        if (!(b > 0.0 && b < 1.0)) throw ConfigError("memory.b: exponents must lie in (0, 1)");
    for (int m : cfg.predict.m)
        if (m < 1) throw ConfigError("predict.m: horizons must be >= 1");
    for (int m : cfg.memory.m)
        if (m < 1) throw ConfigError("memory.m: horizons must be >= 1");
    for (const auto& s : cfg.estimate.setups)
        if (s != "S1" && s != "S2" && s != "S3")
            throw ConfigError("estimate.setups: must be S1, S2 or S3");
    for (const auto& s : cfg.predict.setups)
        if (s != "S1" && s != "S2" && s != "S3")
            throw ConfigError("predict.setups: must be S1, S2 or S3");
}

int profile_reps(const std::string& profile) { return profile == "full" ? 10000 : 2000; }

// threads and the output path are execution details: they must not perturb
// the hash, otherwise reruns with a different thread count would not be
// byte-comparable.
std::string canonical_config(const RunConfig& cfg) {
    json root;
    root["seed"] = cfg.seed;
    root["profile"] = cfg.profile;
    root["size"] = {{"regime", cfg.size.regime}, {"c", cfg.size.c},         {"d", cfg.size.d},
                    {"delta", cfg.size.delta},   {"n", cfg.size.n},         {"methods", cfg.size.methods},
                    {"level", cfg.size.level}};
    root["power"] = {{"regime", cfg.power.regime}, {"c", cfg.power.c},     {"d", cfg.power.d},
                     {"delta", cfg.power.delta},   {"n", cfg.power.n},     {"methods", cfg.power.methods},
                     {"beta", cfg.power.beta},     {"level", cfg.power.level}};
    root["estimate"] = {{"input", cfg.estimate.input},   {"setups", cfg.estimate.setups},
                        {"beta0", cfg.estimate.beta0},   {"col_y", cfg.estimate.col_y},
                        {"col_x", cfg.estimate.col_x},   {"empirical", cfg.estimate.empirical}};
    root["predict"] = {{"data", cfg.predict.data},
                       {"m", cfg.predict.m},
                       {"setups", cfg.predict.setups},
                       {"columns", columns_json(cfg.predict.columns)},
                       {"frequency", cfg.predict.frequency
                                         ? (*cfg.predict.frequency == Frequency::monthly
                                                ? "monthly"
                                                : "quarterly")
                                         : "auto"}};
    root["memory"] = {{"data", cfg.memory.data},
                      {"b", cfg.memory.b},
                      {"m", cfg.memory.m},
                      {"columns", columns_json(cfg.memory.columns)},
                      {"frequency", cfg.memory.frequency
                                        ? (*cfg.memory.frequency == Frequency::monthly
                                               ? "monthly"
                                               : "quarterly")
                                        : "auto"}};
    return root.dump();
}

}  // namespace ltls
