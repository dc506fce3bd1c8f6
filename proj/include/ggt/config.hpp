// Experiment configuration: JSON mirroring the structures the library
// consumes. Group specs resolve to presets, presentation files, or inline
// presentations. Backends live behind unique_ptr so the epimorphism's
// references stay valid however the loaded config moves around.
#pragma once

#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ggt/errors.hpp"
#include "ggt/floyd.hpp"
#include "ggt/presentation.hpp"
#include "ggt/presets.hpp"
#include "ggt/tightness.hpp"

#include <nlohmann/json.hpp>

namespace ggt {

inline nlohmann::json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open file '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw config_error("bad JSON in '" + path + "': " + e.what());
    }
    return j;
}

/// {"preset": "f2"} | {"file": "group.json"} | {"presentation": {...}}
inline GroupBackend resolve_group(const nlohmann::json& spec,
                                  const std::filesystem::path& base_dir) {
    if (spec.is_string()) return preset_backend(spec.get<std::string>());
    if (spec.contains("preset")) return preset_backend(spec.at("preset").get<std::string>());
    if (spec.contains("file")) {
        std::filesystem::path p = spec.at("file").get<std::string>();
        if (p.is_relative()) p = base_dir / p;
        return load_presentation(parse_presentation(load_json_file(p.string())));
    }
    if (spec.contains("presentation"))
        return load_presentation(parse_presentation(spec.at("presentation")));
    throw config_error("group spec needs 'preset', 'file' or 'presentation'");
}

struct FloydSpec {
    FloydKind kind = FloydKind::inverse_quadratic;
    double param = 0.0;
    int probe = 200;
};

inline FloydSpec parse_floyd_spec(const nlohmann::json& j) {
    FloydSpec f;
    std::string kind = j.value("kind", "inverse_quadratic");
    if (kind == "inverse_quadratic" || kind == "poly")
        f.kind = FloydKind::inverse_quadratic;
    else if (kind == "exponential" || kind == "exp")
        f.kind = FloydKind::exponential;
    else
        throw config_error("unknown Floyd kind '" + kind + "'");
    f.param = j.value("param", 0.5);
    f.probe = j.value("probe", 200);
    return f;
}

inline FloydFunction make_floyd(const FloydSpec& s) {
    return make_floyd_function(s.kind, s.param, s.probe);
}

struct LoadedExperiment {
    std::string name = "experiment";
    std::unique_ptr<GroupBackend> source;
    std::unique_ptr<GroupBackend> target;  // null when no epimorphism is declared
    std::unique_ptr<Epimorphism> pi;
    TightnessParams params;
    std::optional<FloydSpec> floyd;
    std::optional<std::string> out;  // output directory, overridable by --out
};

/// Loads the full experiment config. Only "source" is mandatory; epimorphism
/// fields are required by the commands that use them.
inline LoadedExperiment load_experiment(const std::string& path) {
    nlohmann::json j = load_json_file(path);
    std::filesystem::path base = std::filesystem::path(path).parent_path();
    LoadedExperiment exp;
    exp.name = j.value("name", std::filesystem::path(path).stem().string());
    if (!j.contains("source")) throw config_error("config needs 'source'");
    exp.source = std::make_unique<GroupBackend>(resolve_group(j.at("source"), base));
    if (j.contains("target")) {
        exp.target = std::make_unique<GroupBackend>(resolve_group(j.at("target"), base));
        if (!j.contains("gen_map")) throw config_error("epimorphism needs 'gen_map'");
        std::vector<std::pair<char, std::optional<char>>> gm;
        for (auto it = j.at("gen_map").begin(); it != j.at("gen_map").end(); ++it) {
            std::string key = it.key();
            std::string val = it.value().get<std::string>();
            if (key.size() != 1 || val.size() > 1)
                throw config_error("gen_map entries are single letters ('' kills a letter)");
            gm.emplace_back(key[0],
                            val.empty() ? std::nullopt : std::optional<char>(val[0]));
        }
        exp.pi = std::make_unique<Epimorphism>(*exp.source, *exp.target, gm);
    }

    TightnessParams& p = exp.params;
    if (j.contains("h")) p.h = j.at("h").get<std::string>();
    p.rep_radius = j.value("rep_radius", p.rep_radius);
    p.orth_radius = j.value("orth_radius", p.orth_radius);
    p.k_max = j.value("k_max", p.k_max);
    p.n_start = j.value("n_start", p.n_start);
    p.n_max = j.value("n_max", p.n_max);
    if (j.contains("net_L")) p.net_L = j.at("net_L").get<int>();
    if (j.contains("s_grid")) p.s_grid = j.at("s_grid").get<std::vector<double>>();
    p.source_growth_radius = j.value("source_growth_radius", p.source_growth_radius);
    p.target_growth_radius = j.value("target_growth_radius", p.target_growth_radius);
    p.word_budget = j.value("word_budget", p.word_budget);
    p.max_elements = j.value("max_elements", p.max_elements);
    p.seed = j.value("seed", p.seed);
    p.workers = j.value("workers", p.workers);
    p.assert_infinite_kernel = j.value("assert_infinite_kernel", true);

    if (j.contains("floyd")) exp.floyd = parse_floyd_spec(j.at("floyd"));
    if (j.contains("out")) exp.out = j.at("out").get<std::string>();
    return exp;
}

}  // namespace ggt
