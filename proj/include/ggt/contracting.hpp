// Nearest-point projections, axes of hyperbolic elements on tree-like
// backends, and empirical checks for contraction, bounded intersection,
// thin triangles, admissible paths and geodesic tracking.
//
// Everything here works on finite truncations inside an enumerated ball and
// on the certified shortlex geodesic; checks refute or estimate, they do not
// prove. Word-metric diameters and distances are exact integers.
#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ggt/cayley.hpp"
#include "ggt/csv.hpp"
#include "ggt/errors.hpp"
#include "ggt/parallel.hpp"
#include "ggt/rng.hpp"

namespace ggt {

struct FiniteSubset {
    std::vector<Word> elements;  // canonical, sorted shortlex, deduped
    std::string generator_rule;  // how the set was produced, for reports
};

inline FiniteSubset make_subset(const GroupBackend& b, std::vector<Word> words,
                                std::string rule = {}) {
    for (auto& w : words) w = b.reduce(w);
    std::sort(words.begin(), words.end(),
              [&](const Word& u, const Word& v) { return b.shortlex_less(u, v); });
    words.erase(std::unique(words.begin(), words.end()), words.end());
    return FiniteSubset{std::move(words), std::move(rule)};
}

inline int elem_distance(const GroupBackend& b, const Word& u, const Word& v) {
    return word_length(b, b.multiply(b.invert(u), v));
}

inline int distance_to_set(const GroupBackend& b, const FiniteSubset& X, const Word& y) {
    if (X.elements.empty()) throw precondition_error("distance to empty set");
    int best = elem_distance(b, X.elements.front(), y);
    for (std::size_t i = 1; i < X.elements.size() && best > 0; ++i)
        best = std::min(best, elem_distance(b, X.elements[i], y));
    return best;
}

/// Exact nearest-point projection of y to X: every x in X realizing d(y, X).
inline FiniteSubset project(const GroupBackend& b, const FiniteSubset& X, const Word& y) {
    if (X.elements.empty()) throw precondition_error("projection to empty set");
    int best = -1;
    std::vector<Word> out;
    for (const Word& x : X.elements) {
        int d = elem_distance(b, x, y);
        if (best < 0 || d < best) {
            best = d;
            out.clear();
        }
        if (d == best) out.push_back(x);
    }
    return FiniteSubset{std::move(out), "proj"};
}

/// Projection of a set: union of the pointwise projections.
inline FiniteSubset project_set(const GroupBackend& b, const FiniteSubset& X,
                                const std::vector<Word>& ys) {
    std::vector<Word> out;
    for (const Word& y : ys) {
        FiniteSubset p = project(b, X, y);
        out.insert(out.end(), p.elements.begin(), p.elements.end());
    }
    return make_subset(b, std::move(out), "proj");
}

inline int set_diameter(const GroupBackend& b, const FiniteSubset& X) {
    int diam = 0;
    for (std::size_t i = 0; i < X.elements.size(); ++i)
        for (std::size_t j = i + 1; j < X.elements.size(); ++j)
            diam = std::max(diam, elem_distance(b, X.elements[i], X.elements[j]));
    return diam;
}

inline FiniteSubset translate_subset(const GroupBackend& b, const Word& g,
                                     const FiniteSubset& X) {
    std::vector<Word> out;
    out.reserve(X.elements.size());
    for (const Word& x : X.elements) out.push_back(b.multiply(g, x));
    return make_subset(b, std::move(out), X.generator_rule.empty() ? std::string()
                                                                   : "translate of " +
                                                                         X.generator_rule);
}

struct AxisSpec {
    Word h;           // the hyperbolic element, canonical
    Word root;        // cyclically reduced core c, h = u c u^{-1}
    Word conjugator;  // u
    int truncation_radius = 0;
    FiniteSubset points;  // u * (prefixes of c^inf and c^{-inf}), inside the ball
};

/// Axis of a nontrivial element on a tree-like backend, truncated to the ball
/// of the given radius. The bi-infinite reduced word through the conjugated
/// core realizes the full geodesic line.
inline AxisSpec axis_of(const GroupBackend& b, const Word& h, int radius) {
    if (!b.flags().tree_like)
        throw precondition_error("axes are only computed on tree-like backends");
    Word c = b.reduce(h);
    if (c.empty()) throw precondition_error("identity has no axis");
    Word probe = c;
    for (int k = 2; k <= 2 * radius + 2; ++k) {
        probe = b.multiply(probe, c);
        if (probe.empty())
            throw precondition_error("element has finite order " + std::to_string(k) +
                                     ", no axis");
    }
    Word u;
    while (c.size() >= 2 && b.alphabet().inverse(c.front()) == c.back()) {
        u.push_back(c.front());
        c = c.substr(1, c.size() - 2);
    }
    AxisSpec axis;
    axis.h = b.reduce(h);
    axis.root = c;
    axis.conjugator = u;
    axis.truncation_radius = radius;

    std::vector<Word> pts;
    auto walk = [&](const Word& step) {
        Word cur = b.reduce(u);
        int limit = radius + 2 * static_cast<int>(u.size()) + static_cast<int>(c.size()) + 2;
        for (int t = 0; t <= limit; ++t) {
            if (static_cast<int>(cur.size()) <= radius) pts.push_back(cur);
            cur = b.multiply(cur, Word(1, step[static_cast<std::size_t>(t) % step.size()]));
        }
    };
    walk(c);
    walk(b.alphabet().formal_inverse(c));
    axis.points = make_subset(b, std::move(pts), "axis(" + axis.h + ")");
    return axis;
}

struct ContractionProfile {
    std::vector<int> mu_grid;
    std::vector<int> eps_observed;     // valid where sample_counts > 0
    std::vector<int> sample_counts;    // geodesics with d(q, X) >= mu
    int samples = 0;
    std::uint64_t seed = 0;
};

struct ProfileOptions {
    std::vector<int> mu_grid = {0, 1, 2, 3, 4, 5};
    int samples = 500;
    std::uint64_t seed = 0;
    int workers = 1;
};

/// Samples random geodesics (endpoints uniform over sphere pairs, seeded per
/// sample index) and records, per mu, the largest projection diameter among
/// sampled geodesics at distance >= mu from X. One shared sample set serves
/// the whole grid, so eps is non-increasing in mu by construction.
inline ContractionProfile contraction_profile(const GroupBackend& b, const SphereTable& t,
                                              const FiniteSubset& X,
                                              const ProfileOptions& opt = {}) {
    GeodesicOracle oracle(b);
    struct Sample {
        int dist = 0;
        int eps = 0;
    };
    std::vector<Sample> observed(static_cast<std::size_t>(opt.samples));
    parallel_for(observed.size(), opt.workers, [&](std::size_t i) {
        Rng rng(derive_seed(opt.seed, i));
        auto draw = [&]() -> const Word& {
            for (;;) {
                std::size_t r = static_cast<std::size_t>(
                    rng.below(static_cast<std::uint64_t>(t.radius) + 1));
                if (!t.spheres[r].empty())
                    return t.spheres[r][static_cast<std::size_t>(
                        rng.below(t.spheres[r].size()))];
            }
        };
        const Word& u = draw();
        const Word& v = draw();
        std::vector<Word> q = oracle.path_vertices(u, v);
        int d = distance_to_set(b, X, q.front());
        for (const Word& z : q) d = std::min(d, distance_to_set(b, X, z));
        FiniteSubset proj = project_set(b, X, q);
        observed[i] = {d, set_diameter(b, proj)};
    });

    ContractionProfile profile;
    profile.mu_grid = opt.mu_grid;
    profile.samples = opt.samples;
    profile.seed = opt.seed;
    profile.eps_observed.assign(opt.mu_grid.size(), 0);
    profile.sample_counts.assign(opt.mu_grid.size(), 0);
    for (std::size_t k = 0; k < opt.mu_grid.size(); ++k)
        for (const Sample& s : observed)
            if (s.dist >= opt.mu_grid[k]) {
                profile.sample_counts[k] += 1;
                profile.eps_observed[k] = std::max(profile.eps_observed[k], s.eps);
            }
    return profile;
}

inline std::string profile_csv(const ContractionProfile& p) {
    CsvWriter csv;
    csv.field(std::string("mu"));
    csv.field(std::string("eps_observed"));
    csv.field(std::string("samples"));
    csv.endrow();
    for (std::size_t k = 0; k < p.mu_grid.size(); ++k) {
        csv.field(p.mu_grid[k]);
        csv.field(p.sample_counts[k] == 0 ? std::string("unsampled")
                                          : std::to_string(p.eps_observed[k]));
        csv.field(p.sample_counts[k]);
        csv.endrow();
    }
    return csv.str();
}

struct IntersectionDiameter {
    int U = 0;
    bool empty = true;
    int diameter = 0;
    std::uint64_t count = 0;
};

/// Exact diameter of N_U(X) ∩ N_U(X') within the indexed ball, per U.
inline std::vector<IntersectionDiameter> bounded_intersection_profile(
    const BallIndex& index, const FiniteSubset& X, const FiniteSubset& X2,
    const std::vector<int>& u_grid, int workers = 1) {
    const GroupBackend& b = index.backend();
    std::vector<int> dx(index.size()), dx2(index.size());
    parallel_for(index.size(), workers, [&](std::size_t i) {
        dx[i] = distance_to_set(b, X, index.word(static_cast<std::uint32_t>(i)));
        dx2[i] = distance_to_set(b, X2, index.word(static_cast<std::uint32_t>(i)));
    });
    std::vector<IntersectionDiameter> out;
    for (int U : u_grid) {
        IntersectionDiameter d;
        d.U = U;
        std::vector<const Word*> members;
        for (std::size_t i = 0; i < index.size(); ++i)
            if (dx[i] <= U && dx2[i] <= U)
                members.push_back(&index.word(static_cast<std::uint32_t>(i)));
        d.count = members.size();
        d.empty = members.empty();
        for (std::size_t i = 0; i < members.size(); ++i)
            for (std::size_t j = i + 1; j < members.size(); ++j)
                d.diameter = std::max(d.diameter, elem_distance(b, *members[i], *members[j]));
        out.push_back(d);
    }
    return out;
}

inline std::string intersection_csv(const std::vector<IntersectionDiameter>& rows) {
    CsvWriter csv;
    csv.field(std::string("U"));
    csv.field(std::string("diameter"));
    csv.field(std::string("count"));
    csv.endrow();
    for (const auto& r : rows) {
        csv.field(r.U);
        csv.field(r.empty ? std::string("empty") : std::to_string(r.diameter));
        csv.field(r.count);
        csv.endrow();
    }
    return csv.str();
}

/// max(diam proj_X(X'), diam proj_X'(X)); the observed projection bound.
inline int bounded_projection_check(const GroupBackend& b, const FiniteSubset& X,
                                    const FiniteSubset& X2) {
    int a = set_diameter(b, project_set(b, X, X2.elements));
    int c = set_diameter(b, project_set(b, X2, X.elements));
    return std::max(a, c);
}

/// Largest distance from a projection point of y to the certified geodesic
/// [x, y]; the observed thinness constant.
inline int thin_triangle_check(const GroupBackend& b, const GeodesicOracle& oracle,
                               const FiniteSubset& X, const Word& x, const Word& y) {
    if (std::binary_search(X.elements.begin(), X.elements.end(), b.reduce(y),
                           [&](const Word& u, const Word& v) { return b.shortlex_less(u, v); }))
        throw precondition_error("thin triangle check needs y outside X");
    std::vector<Word> path = oracle.path_vertices(b.reduce(x), b.reduce(y));
    FiniteSubset proj = project(b, X, b.reduce(y));
    int sigma = 0;
    for (const Word& o : proj.elements) {
        int best = elem_distance(b, o, path.front());
        for (const Word& z : path) best = std::min(best, elem_distance(b, o, z));
        sigma = std::max(sigma, best);
    }
    return sigma;
}

struct PathSegment {
    std::vector<Word> vertices;                 // certified geodesic, in order
    std::optional<std::size_t> set_index;       // attached contracting set
    Word label;                                 // the element the segment spells
};

struct AdmissiblePath {
    std::vector<PathSegment> segments;
    std::vector<FiniteSubset> sets;
    double d_param = 0.0;  // required interior length bound D
    double tau = 0.0;      // orthogonality bound
};

struct AdmissibleVerdict {
    bool valid = true;
    int violated_condition = 0;  // 1 alternation, 2 length, 3 orthogonality
    std::string detail;
};

/// Checks the three admissibility conditions and reports the first violation:
/// (1) exactly one of any two consecutive segments has an attached set,
/// (2) interior attached segments are longer than D,
/// (3) segments touching an attached set are tau-orthogonal to it.
inline AdmissibleVerdict validate_admissible(const GroupBackend& b, const AdmissiblePath& p) {
    if (p.segments.empty()) throw precondition_error("empty segment sequence");
    for (std::size_t k = 0; k + 1 < p.segments.size(); ++k)
        if (p.segments[k].vertices.back() != p.segments[k + 1].vertices.front())
            throw precondition_error("segments do not chain at index " + std::to_string(k));
    for (const auto& s : p.segments) {
        if (s.vertices.empty()) throw precondition_error("segment without vertices");
        if (s.set_index && *s.set_index >= p.sets.size())
            throw precondition_error("segment references missing set");
    }

    for (std::size_t k = 0; k + 1 < p.segments.size(); ++k) {
        bool a = p.segments[k].set_index.has_value();
        bool c = p.segments[k + 1].set_index.has_value();
        if (a == c)
            return {false, 1,
                    "segments " + std::to_string(k) + "," + std::to_string(k + 1) +
                        (a ? " both carry sets" : " both lack sets")};
    }
    for (std::size_t k = 0; k < p.segments.size(); ++k) {
        if (!p.segments[k].set_index) continue;
        if (k == 0 || k + 1 == p.segments.size()) continue;  // first/last exempt
        double len = static_cast<double>(p.segments[k].vertices.size()) - 1;
        if (!(len > p.d_param))
            return {false, 2,
                    "interior segment " + std::to_string(k) + " has length " +
                        format_double(len) + " <= D = " + format_double(p.d_param)};
    }
    for (std::size_t k = 0; k < p.segments.size(); ++k) {
        if (p.segments[k].set_index) continue;
        for (std::size_t nb : {k == 0 ? k : k - 1, k + 1}) {
            if (nb == k || nb >= p.segments.size()) continue;
            if (!p.segments[nb].set_index) continue;
            const FiniteSubset& X = p.sets[*p.segments[nb].set_index];
            int diam = set_diameter(b, project_set(b, X, p.segments[k].vertices));
            if (static_cast<double>(diam) > p.tau)
                return {false, 3,
                        "segment " + std::to_string(k) + " has projection diameter " +
                            std::to_string(diam) + " > tau = " + format_double(p.tau) +
                            " on set " + std::to_string(*p.segments[nb].set_index)};
        }
    }
    return {};
}

struct TrackingEntry {
    std::size_t set_index = 0;
    bool found = false;  // alpha meets N_mu(X_i); false is a violation witness
    int entry_dist = 0;  // min over alpha ∩ N_mu(X_i) of d(., segment start)
    int exit_dist = 0;   // min over alpha ∩ N_mu(X_i) of d(., segment end)
};

struct TrackingReport {
    std::vector<TrackingEntry> entries;
    int r_observed = 0;
    bool all_found = true;
};

/// How closely a straight geodesic alpha between the path endpoints tracks
/// each attached contracting set: for each X_i, the best witnesses in
/// alpha ∩ N_mu(X_i) are compared against the attached segment endpoints.
/// An empty intersection is reported as a violation witness.
inline TrackingReport tracking_check(const GroupBackend& b, const GeodesicOracle& oracle,
                                     const AdmissiblePath& p, int mu) {
    if (p.segments.empty()) throw precondition_error("empty segment sequence");
    std::vector<Word> alpha = oracle.path_vertices(p.segments.front().vertices.front(),
                                                   p.segments.back().vertices.back());
    TrackingReport report;
    for (std::size_t k = 0; k < p.segments.size(); ++k) {
        if (!p.segments[k].set_index) continue;
        const FiniteSubset& X = p.sets[*p.segments[k].set_index];
        TrackingEntry e;
        e.set_index = *p.segments[k].set_index;
        for (const Word& z : alpha) {
            if (distance_to_set(b, X, z) > mu) continue;
            int ds = elem_distance(b, z, p.segments[k].vertices.front());
            int de = elem_distance(b, z, p.segments[k].vertices.back());
            if (!e.found) {
                e.found = true;
                e.entry_dist = ds;
                e.exit_dist = de;
            } else {
                e.entry_dist = std::min(e.entry_dist, ds);
                e.exit_dist = std::min(e.exit_dist, de);
            }
        }
        if (e.found)
            report.r_observed =
                std::max(report.r_observed, std::max(e.entry_dist, e.exit_dist));
        else
            report.all_found = false;
        report.entries.push_back(e);
    }
    return report;
}

}  // namespace ggt
