// Command dispatch and artifact emission. All commands write deterministic
// CSV/JSON artifacts: outputs depend only on the config and seed, never on
// the worker count or the clock.
//
// Exit codes: 0 success, 1 verdict failure (an invariant or certificate did
// not hold, or a budget ran out), 2 configuration or usage error.
#pragma once

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ggt/config.hpp"
#include "ggt/contracting.hpp"
#include "ggt/csv.hpp"
#include "ggt/floyd.hpp"
#include "ggt/growth.hpp"
#include "ggt/presets.hpp"
#include "ggt/quotient.hpp"
#include "ggt/tightness.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

namespace ggt::cli {

inline void write_file(const std::filesystem::path& path, const std::string& content) {
    std::filesystem::create_directories(path.parent_path().empty() ? "."
                                                                   : path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw config_error("cannot write '" + path.string() + "'");
    out << content;
}

inline nlohmann::json bracket_json(const CriticalBracket& b) {
    return {{"hi_certified", b.hi_certified},
            {"lo_heuristic", b.lo_heuristic},
            {"report_radius", b.report_radius}};
}

inline nlohmann::json report_json(const TightnessReport& r) {
    nlohmann::json j;
    j["metadata"] = {{"generator", "ggt"}, {"format", 1}};
    j["source"] = r.source_name;
    j["target"] = r.target_name;
    j["h"] = r.h;
    j["delta_source"] = bracket_json(r.delta_source);
    j["delta_target"] = bracket_json(r.delta_target);
    j["tau_observed"] = r.tau_observed;
    j["n"] = r.n;
    j["L"] = r.L;
    j["net_size"] = r.net_size;
    j["k_max"] = r.k_max;
    nlohmann::json attempts = nlohmann::json::array();
    for (const auto& a : r.attempts)
        attempts.push_back({{"n", a.n},
                            {"L", a.L},
                            {"net_size", a.net_size},
                            {"injective", a.injective},
                            {"exhaustive", a.exhaustive}});
    j["attempts"] = attempts;
    nlohmann::json witnesses = nlohmann::json::array();
    for (const auto& c : r.injectivity.collisions)
        witnesses.push_back(
            {{"word_a", c.word_a}, {"word_b", c.word_b}, {"image", c.image}});
    j["injectivity"] = {{"injective", r.injectivity.injective},
                        {"exhaustive", r.injectivity.exhaustive},
                        {"words_total", r.injectivity.words_total},
                        {"words_tested", r.injectivity.words_tested},
                        {"collision_witnesses", witnesses}};
    nlohmann::json sweep = nlohmann::json::array();
    for (const auto& c : r.sweep)
        sweep.push_back({{"s", c.s}, {"value", c.value}, {"certified", c.certified}});
    j["certificates"] = sweep;
    j["certified"] = r.certified;
    j["gap_lower_bound"] = r.gap_lower_bound;
    j["delta_gap_observed"] =
        r.delta_source.hi_certified - r.delta_target.lo_heuristic;
    j["notes"] = r.notes;
    return j;
}

inline std::string certificates_csv(const TightnessReport& r) {
    CsvWriter csv;
    csv.field(std::string("s"));
    csv.field(std::string("value"));
    csv.field(std::string("certified"));
    csv.endrow();
    for (const auto& c : r.sweep) {
        csv.field(c.s);
        csv.field(c.value);
        csv.field(std::string(c.certified ? "true" : "false"));
        csv.endrow();
    }
    return csv.str();
}

struct CommonOpts {
    std::string group;
    std::string config;
    std::string out = ".";
    int workers = 1;
};

/// Backend from --group or the config's source; the loaded experiment (if
/// any) is returned so epimorphism-based commands can reuse it. A --group
/// override replaces the config's source and drops its epimorphism.
inline LoadedExperiment resolve_backend(const CommonOpts& c) {
    if (!c.config.empty()) {
        LoadedExperiment exp = load_experiment(c.config);
        if (!c.group.empty()) {
            exp.pi.reset();
            exp.target.reset();
            *exp.source = preset_backend(c.group);
        }
        return exp;
    }
    if (c.group.empty()) throw config_error("need --group or --config");
    LoadedExperiment exp;
    exp.name = c.group;
    exp.source = std::make_unique<GroupBackend>(preset_backend(c.group));
    return exp;
}

inline std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
    return out;
}

inline std::vector<std::string> parse_word_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(item);
    return out;
}

inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"growth, Floyd metrics and growth-tightness experiments for "
                 "finitely generated groups"};
    app.require_subcommand(1);

    CommonOpts common;
    int radius = 8;
    int depth = 3;
    int samples = 500;
    std::uint64_t seed = 0;
    std::uint64_t max_elements = 8'000'000;
    bool dump_elements = false;
    std::string word_u, word_v, word_h = "ab", rays_arg, mu_arg = "0,1,2,3,4,5";
    double threshold = 0.0;
    int dbar_max = 4;
    std::string floyd_kind = "inverse_quadratic";
    double floyd_param = 0.5;
    int floyd_probe = 200;

    auto add_common = [&](CLI::App* cmd, bool needs_radius) {
        cmd->add_option("--group", common.group, "bundled preset: f2, f3, z, z2, z2z3");
        cmd->add_option("--config", common.config, "experiment config (JSON)");
        cmd->add_option("--out", common.out, "output directory");
        cmd->add_option("--workers", common.workers, "worker threads (never changes output)");
        cmd->add_option("--seed", seed, "seed for sampled diagnostics");
        cmd->add_option("--max-elements", max_elements, "ball element budget");
        if (needs_radius) cmd->add_option("--radius", radius, "ball radius");
    };

    CLI::App* c_ball = app.add_subcommand("ball", "enumerate spheres of the Cayley ball");
    add_common(c_ball, true);
    c_ball->add_flag("--dump-elements", dump_elements, "also write one element per line");

    CLI::App* c_growth =
        app.add_subcommand("growth", "growth estimates and critical bracket");
    add_common(c_growth, true);

    CLI::App* c_floyd = app.add_subcommand("floyd", "Floyd distance brackets");
    add_common(c_floyd, true);
    c_floyd->add_option("--floyd-kind", floyd_kind, "inverse_quadratic | exponential");
    c_floyd->add_option("--floyd-param", floyd_param, "base for the exponential kind");
    c_floyd->add_option("--floyd-probe", floyd_probe, "delay validation range");
    c_floyd->add_option("--u", word_u, "first endpoint");
    c_floyd->add_option("--v", word_v, "second endpoint");
    c_floyd->add_option("--rays", rays_arg, "comma-separated ray generators (>= 3)");
    c_floyd->add_option("--depth", depth, "ray depth for the separation probe");
    c_floyd->add_option("--threshold", threshold, "separation threshold");

    CLI::App* c_axis = app.add_subcommand("axis", "axis of an element (tree backends)");
    add_common(c_axis, true);
    c_axis->add_option("--element", word_h, "the element");

    CLI::App* c_contract =
        app.add_subcommand("contract", "contraction profile of an axis");
    add_common(c_contract, true);
    c_contract->add_option("--element", word_h, "axis element");
    c_contract->add_option("--samples", samples, "sampled geodesics");
    c_contract->add_option("--mu", mu_arg, "comma-separated mu grid");
    std::string translate_arg, u_grid_arg = "0,1,2";
    c_contract->add_option("--translate", translate_arg,
                           "also compare against this translate of the axis");
    c_contract->add_option("--u-grid", u_grid_arg,
                           "neighbourhood sizes for the intersection profile");

    CLI::App* c_quot =
        app.add_subcommand("quotient-check", "verify the quotient metric wholesale");
    add_common(c_quot, true);
    c_quot->add_option("--dbar-max", dbar_max, "check all cosets up to this length");

    CLI::App* c_tight =
        app.add_subcommand("tightness", "end-to-end growth-tightness experiment");
    add_common(c_tight, false);

    try {
        std::reverse(args.begin(), args.end());
        app.parse(std::move(args));
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {  // --help
            out << app.help();
            return 0;
        }
        err << "error: " << e.what() << "\n";
        return 2;
    }

    std::filesystem::path outdir(common.out);
    try {
        if (*c_ball) {
            LoadedExperiment exp = resolve_backend(common);
            const GroupBackend& b = *exp.source;
            SphereTable t = enumerate_ball(b, radius, {max_elements, common.workers});
            std::filesystem::path base =
                outdir / ("ball_" + b.name() + "_r" + std::to_string(radius));
            write_file(base.string() + ".csv", sphere_csv(t));
            if (dump_elements) write_file(base.string() + "_elements.txt", element_dump(t));
            out << "ball " << b.name() << " radius " << radius << ": " << t.total()
                << " elements -> " << base.string() << ".csv\n";
            return 0;
        }
        if (*c_growth) {
            LoadedExperiment exp = resolve_backend(common);
            const GroupBackend& b = *exp.source;
            SphereTable t = enumerate_ball(b, radius + 1, {max_elements, common.workers});
            GrowthEstimate est = growth_rate_estimate(t);
            std::filesystem::path file =
                outdir / ("growth_" + b.name() + "_r" + std::to_string(radius) + ".csv");
            write_file(file, growth_csv(t, est));
            out << "growth " << b.name() << " radius " << radius
                << ": hi_certified=" << format_double(est.inf_upper)
                << " lo_heuristic=" << format_double(est.extrapolated)
                << " (ratio estimator, not certified) -> " << file.string() << "\n";
            return 0;
        }
        if (*c_floyd) {
            LoadedExperiment exp = resolve_backend(common);
            const GroupBackend& b = *exp.source;
            FloydSpec spec;  // config-declared function, unless flags override
            if (exp.floyd) spec = *exp.floyd;
            if (c_floyd->count("--floyd-kind"))
                spec.kind = floyd_kind == "exponential" || floyd_kind == "exp"
                                ? FloydKind::exponential
                                : FloydKind::inverse_quadratic;
            if (c_floyd->count("--floyd-param")) spec.param = floyd_param;
            if (c_floyd->count("--floyd-probe")) spec.probe = floyd_probe;
            spec.probe = std::max(spec.probe, radius + 2);
            FloydFunction f = make_floyd(spec);
            SphereTable t = enumerate_ball(b, radius, {max_elements, common.workers});
            BallIndex index(t, b);
            if (!rays_arg.empty()) {
                std::vector<Word> rays;
                for (auto& w : parse_word_list(rays_arg)) rays.push_back(b.reduce(w));
                SeparationMatrix m =
                    separation_probe(index, f, rays, depth, threshold, common.workers);
                std::filesystem::path file =
                    outdir / ("floyd_separation_" + b.name() + ".csv");
                write_file(file, separation_csv(m));
                out << "separation " << b.name() << " depth " << depth << " radius "
                    << radius << ": "
                    << (m.separated ? "separated" : "not separated at this scale")
                    << " (threshold " << format_double(threshold) << ") -> "
                    << file.string() << "\n";
                return 0;
            }
            if (word_u.empty() && word_v.empty())
                throw config_error("floyd needs --u/--v or --rays");
            Word u = b.reduce(word_u), v = b.reduce(word_v);
            FloydBracket br = floyd_distance_bracket(index, f, u, v);
            CsvWriter csv;
            csv.field(std::string("u"));
            csv.field(std::string("v"));
            csv.field(std::string("lower"));
            csv.field(std::string("upper"));
            csv.field(std::string("radius"));
            csv.endrow();
            csv.field(u);
            csv.field(v);
            csv.field(br.lower);
            csv.field(br.upper);
            csv.field(br.radius_used);
            csv.endrow();
            std::filesystem::path file = outdir / ("floyd_bracket_" + b.name() + ".csv");
            write_file(file, csv.str());
            out << "floyd " << b.name() << " rho(" << (u.empty() ? "1" : u) << ", "
                << (v.empty() ? "1" : v) << ") in [" << format_double(br.lower) << ", "
                << format_double(br.upper) << "] -> " << file.string() << "\n";
            return 0;
        }
        if (*c_axis) {
            LoadedExperiment exp = resolve_backend(common);
            const GroupBackend& b = *exp.source;
            AxisSpec axis = axis_of(b, b.reduce(word_h), radius);
            CsvWriter csv;
            csv.field(std::string("element"));
            csv.endrow();
            for (const Word& w : axis.points.elements) {
                csv.field(w);
                csv.endrow();
            }
            std::filesystem::path file =
                outdir / ("axis_" + b.name() + "_" + axis.h + ".csv");
            write_file(file, csv.str());
            out << "axis " << b.name() << " h=" << axis.h << " root=" << axis.root
                << " conjugator=" << (axis.conjugator.empty() ? "1" : axis.conjugator)
                << " points=" << axis.points.elements.size() << " -> " << file.string()
                << "\n";
            return 0;
        }
        if (*c_contract) {
            LoadedExperiment exp = resolve_backend(common);
            const GroupBackend& b = *exp.source;
            SphereTable t = enumerate_ball(b, radius, {max_elements, common.workers});
            AxisSpec axis = axis_of(b, b.reduce(word_h), radius);
            ProfileOptions opt;
            opt.mu_grid = parse_int_list(mu_arg);
            opt.samples = samples;
            opt.seed = seed;
            opt.workers = common.workers;
            ContractionProfile profile = contraction_profile(b, t, axis.points, opt);
            std::filesystem::path file =
                outdir / ("contract_" + b.name() + "_" + axis.h + ".csv");
            write_file(file, profile_csv(profile));
            nlohmann::json verdict;
            verdict["set"] = axis.points.generator_rule;
            verdict["radius"] = radius;
            verdict["samples"] = samples;
            verdict["seed"] = seed;
            bool shrinks = true;
            nlohmann::json per_mu = nlohmann::json::array();
            for (std::size_t k = 0; k < profile.mu_grid.size(); ++k) {
                bool sampled = profile.sample_counts[k] > 0;
                if (profile.mu_grid[k] >= 1 && sampled && profile.eps_observed[k] > 0)
                    shrinks = false;
                per_mu.push_back({{"mu", profile.mu_grid[k]},
                                  {"sampled", sampled},
                                  {"eps_observed",
                                   sampled ? nlohmann::json(profile.eps_observed[k])
                                           : nlohmann::json(nullptr)},
                                  {"count", profile.sample_counts[k]}});
            }
            verdict["per_mu"] = per_mu;
            verdict["no_violation_observed"] = shrinks;
            if (!translate_arg.empty()) {
                FiniteSubset shifted =
                    translate_subset(b, b.reduce(translate_arg), axis.points);
                BallIndex index(t, b);
                auto rows = bounded_intersection_profile(index, axis.points, shifted,
                                                         parse_int_list(u_grid_arg),
                                                         common.workers);
                write_file(outdir / ("contract_" + b.name() + "_" + axis.h +
                                     "_intersection.csv"),
                           intersection_csv(rows));
                verdict["translate"] = translate_arg;
                verdict["bounded_projection"] =
                    bounded_projection_check(b, axis.points, shifted);
            }
            std::filesystem::path vfile =
                outdir / ("contract_" + b.name() + "_" + axis.h + "_verdict.json");
            write_file(vfile, verdict.dump(2) + "\n");
            out << "contract " << b.name() << " axis(" << axis.h << ") radius " << radius
                << " samples " << samples
                << (shrinks ? ": no contraction violation observed"
                            : ": contraction violated at some sampled mu >= 1")
                << " -> " << file.string() << "\n";
            return 0;
        }
        if (*c_quot) {
            LoadedExperiment exp = resolve_backend(common);
            if (!exp.pi) throw config_error("quotient-check needs a config with an epimorphism");
            const Epimorphism& pi = *exp.pi;
            if (radius < dbar_max + 1)
                throw config_error("radius must exceed dbar-max");
            SphereTable src = enumerate_ball(pi.source(), radius, {max_elements, common.workers});
            SphereTable tgt = enumerate_ball(pi.target(), dbar_max, {max_elements, common.workers});
            CsvWriter csv;
            csv.field(std::string("gbar"));
            csv.field(std::string("dbar"));
            csv.field(std::string("brute"));
            csv.field(std::string("status"));
            csv.endrow();
            std::uint64_t mismatches = 0, inconclusive = 0, checked = 0;
            for (int n = 0; n <= dbar_max; ++n)
                for (const Word& gbar : tgt.spheres[static_cast<std::size_t>(n)]) {
                    QuotientMetricVerdict v = quotient_metric_check(pi, gbar, src);
                    ++checked;
                    if (v.status == QuotientMetricVerdict::Status::mismatch) ++mismatches;
                    if (v.status == QuotientMetricVerdict::Status::inconclusive)
                        ++inconclusive;
                    csv.field(gbar.empty() ? std::string("1") : gbar);
                    csv.field(v.quotient_length);
                    csv.field(v.brute_minimum);
                    csv.field(std::string(
                        v.status == QuotientMetricVerdict::Status::equal ? "equal"
                        : v.status == QuotientMetricVerdict::Status::mismatch
                            ? "mismatch"
                            : "inconclusive"));
                    csv.endrow();
                }
            std::filesystem::path file = outdir / ("quotient_check_" + exp.name + ".csv");
            write_file(file, csv.str());
            out << "quotient-check " << exp.name << ": " << checked << " cosets, "
                << mismatches << " mismatches, " << inconclusive << " inconclusive -> "
                << file.string() << "\n";
            return mismatches == 0 ? 0 : 1;
        }
        if (*c_tight) {
            if (common.config.empty()) throw config_error("tightness needs --config");
            LoadedExperiment exp = load_experiment(common.config);
            if (!exp.pi) throw config_error("tightness needs an epimorphism in the config");
            if (c_tight->count("--workers")) exp.params.workers = common.workers;
            if (c_tight->count("--seed")) exp.params.seed = seed;
            if (exp.out && !c_tight->count("--out")) outdir = *exp.out;
            TightnessReport report = tightness_experiment(*exp.pi, exp.params);
            std::filesystem::path base = outdir / exp.name;
            write_file(base.string() + "_report.json", report_json(report).dump(2) + "\n");
            write_file(base.string() + "_certificates.csv", certificates_csv(report));
            out << "tightness " << exp.name << ": n=" << report.n
                << " L=" << report.L << " net=" << report.net_size
                << " injective=" << (report.injectivity.injective ? "yes" : "no")
                << " certified=" << (report.certified ? "yes" : "no");
            if (report.best)
                out << " s=" << format_double(report.best->s)
                    << " value=" << format_double(report.best->value);
            out << " delta_hi(source)=" << format_double(report.delta_source.hi_certified)
                << " delta_ratio(target)=" << format_double(report.delta_target.lo_heuristic)
                << " -> " << base.string() << "_report.json\n";
            return report.certified ? 0 : 1;
        }
    } catch (const config_error& e) {
        err << "config error: " << e.what() << "\n";
        return 2;
    } catch (const precondition_error& e) {
        err << "precondition: " << e.what() << "\n";
        return 2;
    } catch (const budget_error& e) {
        err << "budget: " << e.what() << "\n";
        return 1;
    } catch (const error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

}  // namespace ggt::cli
