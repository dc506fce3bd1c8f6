// Floyd functions and Floyd-weighted distances.
//
// A Floyd function is a summable positive f whose consecutive ratios
// f(n+1)/f(n) stay strictly inside (0, 1) over the probed range. The Cayley
// graph edge {x, y} gets weight f(min(d(1,x), d(1,y))); shortest paths in
// that weighting give the rescaled metric. Exact values are not computable
// from a finite ball, so distance queries return certified brackets: the
// upper bound is attained by a path inside the ball, the lower bound accounts
// for paths escaping through the ball boundary with outside travel counted
// as zero. On tree-like backends the in-ball path is provably optimal and the
// bracket collapses.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <queue>
#include <string>
#include <vector>

#include "ggt/cayley.hpp"
#include "ggt/csv.hpp"
#include "ggt/errors.hpp"
#include "ggt/parallel.hpp"

namespace ggt {

enum class FloydKind { inverse_quadratic, exponential, table };

class FloydFunction {
public:
    FloydKind kind() const { return kind_; }
    double param() const { return lambda_; }
    double delay_inf() const { return delay_inf_; }
    double delay_sup() const { return delay_sup_; }
    int probe_limit() const { return probe_; }

    double operator()(int n) const {
        switch (kind_) {
            case FloydKind::inverse_quadratic:
                return 1.0 / (static_cast<double>(n) * n + 1.0);
            case FloydKind::exponential:
                return std::pow(lambda_, n);
            case FloydKind::table:
                if (n < 0 || n >= static_cast<int>(values_.size()))
                    throw precondition_error("Floyd table evaluated beyond probed range");
                return values_[static_cast<std::size_t>(n)];
        }
        return 0.0;
    }

    /// Upper bound for the tail sum of f(k) over k >= R.
    double tail_bound(int R) const {
        if (R <= 0) return (*this)(0) + tail_bound(1);
        switch (kind_) {
            case FloydKind::inverse_quadratic:
                // f decreasing, so the tail is below the integral from R-1
                return std::atan(1.0) * 2 - std::atan(static_cast<double>(R - 1));
            case FloydKind::exponential:
                return std::pow(lambda_, R) / (1.0 - lambda_);
            case FloydKind::table: {
                double s = 0.0;
                for (int k = std::min(R, static_cast<int>(values_.size()));
                     k < static_cast<int>(values_.size()); ++k)
                    s += values_[static_cast<std::size_t>(k)];
                // geometric majorant beyond the probed range, at the probed sup ratio
                s += values_.back() * delay_sup_ / (1.0 - delay_sup_);
                return s;
            }
        }
        return 0.0;
    }

    friend FloydFunction make_floyd_function(FloydKind, double, int);
    friend FloydFunction make_floyd_table(std::vector<double>);
    friend FloydFunction rescale_floyd(const FloydFunction&, int);

private:
    FloydFunction() = default;

    void validate_delay() {
        if (probe_ < 1) throw config_error("Floyd probe range must be >= 1");
        delay_inf_ = 1.0;
        delay_sup_ = 0.0;
        for (int n = 0; n < probe_; ++n) {
            double fn = (*this)(n), fn1 = (*this)(n + 1);
            if (!(fn > 0.0))
                throw config_error("Floyd function not positive at n=" + std::to_string(n));
            double r = fn1 / fn;
            if (!(r > 0.0) || !(r < 1.0))
                throw config_error("Floyd delay violated at n=" + std::to_string(n) +
                                   ": ratio " + format_double(r) + " outside (0,1)");
            delay_inf_ = std::min(delay_inf_, r);
            delay_sup_ = std::max(delay_sup_, r);
        }
    }

    FloydKind kind_ = FloydKind::inverse_quadratic;
    double lambda_ = 0.0;
    std::vector<double> values_;
    int probe_ = 0;
    double delay_inf_ = 0.0, delay_sup_ = 0.0;
};

/// Validates the delay property over n <= probe_n and rejects any violation,
/// naming the offending index. param is the base for the exponential kind.
inline FloydFunction make_floyd_function(FloydKind kind, double param, int probe_n) {
    FloydFunction f;
    f.kind_ = kind;
    f.lambda_ = param;
    f.probe_ = probe_n;
    if (kind == FloydKind::table) throw config_error("use make_floyd_table for tables");
    f.validate_delay();
    return f;
}

inline FloydFunction make_floyd_table(std::vector<double> values) {
    FloydFunction f;
    f.kind_ = FloydKind::table;
    f.values_ = std::move(values);
    f.probe_ = static_cast<int>(f.values_.size()) - 1;
    f.validate_delay();
    return f;
}

/// Doubles the argument scale: g(2n) = f(n), g(2n-1) = (f(n-1)+f(n))/2 and
/// g(0) = f(0). The delay constant degrades no worse than x -> 2x/(1+x).
/// K must be a power of two; K > 2 iterates the doubling.
inline FloydFunction rescale_floyd(const FloydFunction& f, int K) {
    if (K < 2 || (K & (K - 1)) != 0)
        throw config_error("rescale factor must be a power of two >= 2");
    FloydFunction cur = f;
    for (int step = K; step > 1; step /= 2) {
        int n_max = cur.probe_limit();
        std::vector<double> g(static_cast<std::size_t>(2 * n_max) + 1);
        g[0] = cur(0);
        for (int n = 1; n <= n_max; ++n) {
            g[static_cast<std::size_t>(2 * n)] = cur(n);
            g[static_cast<std::size_t>(2 * n - 1)] = (cur(n - 1) + cur(n)) / 2.0;
        }
        cur = make_floyd_table(std::move(g));
    }
    return cur;
}

struct FloydBracket {
    double lower = 0.0;
    double upper = 0.0;
    int radius_used = 0;
    std::vector<Word> witness_path;  // attains upper, inside the ball
};

namespace detail {

struct FloydDijkstra {
    std::vector<double> dist;
    std::vector<std::uint32_t> parent;
};

inline FloydDijkstra floyd_shortest_paths(const BallIndex& index, const FloydFunction& f,
                                          std::uint32_t source) {
    constexpr std::uint32_t npos = ~std::uint32_t{0};
    FloydDijkstra out;
    out.dist.assign(index.size(), std::numeric_limits<double>::infinity());
    out.parent.assign(index.size(), npos);
    using Item = std::pair<double, std::uint32_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
    out.dist[source] = 0.0;
    queue.push({0.0, source});
    const std::string& letters = index.backend().alphabet().letters();
    while (!queue.empty()) {
        auto [d, x] = queue.top();
        queue.pop();
        if (d > out.dist[x]) continue;
        for (char s : letters) {
            auto y = index.neighbor(x, s);
            if (!y) continue;
            double w = f(std::min(index.length(x), index.length(*y)));
            double nd = d + w;
            if (nd < out.dist[*y]) {
                out.dist[*y] = nd;
                out.parent[*y] = x;
                queue.push({nd, *y});
            }
        }
    }
    return out;
}

}  // namespace detail

/// Certified bracket for the Floyd distance between u and v, computed inside
/// the indexed ball. Preconditions: both endpoints at word length at most
/// radius - 1.
inline FloydBracket floyd_distance_bracket(const BallIndex& index, const FloydFunction& f,
                                           const Word& u, const Word& v) {
    auto iu = index.find(u), iv = index.find(v);
    if (!iu || !iv || index.length(*iu) >= index.radius() || index.length(*iv) >= index.radius())
        throw precondition_error("bracket endpoints must lie inside the ball of radius R-1");

    FloydBracket out;
    out.radius_used = index.radius();
    auto du = detail::floyd_shortest_paths(index, f, *iu);
    out.upper = du.dist[*iv];
    for (std::uint32_t x = *iv; x != *iu; x = du.parent[x]) out.witness_path.push_back(index.word(x));
    out.witness_path.push_back(index.word(*iu));
    std::reverse(out.witness_path.begin(), out.witness_path.end());

    if (index.backend().flags().tree_like) {
        // every path between u and v contains their unique simple path, so the
        // in-ball optimum is the true Floyd distance
        out.lower = out.upper;
        return out;
    }
    auto dv = detail::floyd_shortest_paths(index, f, *iv);
    double eu = std::numeric_limits<double>::infinity();
    double ev = std::numeric_limits<double>::infinity();
    for (std::uint32_t x = 0; x < index.size(); ++x)
        if (index.length(x) == index.radius()) {
            eu = std::min(eu, du.dist[x]);
            ev = std::min(ev, dv.dist[x]);
        }
    double escape = eu + ev;  // inf + inf when the boundary sphere is empty
    out.lower = std::min(out.upper, escape);
    return out;
}

struct SeparationEntry {
    std::size_t i = 0, j = 0;
    FloydBracket bracket;
};

struct SeparationMatrix {
    std::vector<Word> endpoints;  // ray generator raised to the probe depth
    int depth = 0;
    double threshold = 0.0;
    std::vector<SeparationEntry> entries;  // i < j
    bool separated = false;
};

/// Pairwise Floyd brackets between ray endpoints r_i^depth. At least three
/// rays are required; a boundary with fewer candidate points is never called
/// nontrivial. Rays must have infinite order (probed up to the ball radius).
inline SeparationMatrix separation_probe(const BallIndex& index, const FloydFunction& f,
                                         const std::vector<Word>& rays, int depth,
                                         double threshold, int workers = 1) {
    if (rays.size() < 3)
        throw precondition_error("separation probe needs at least three rays");
    const GroupBackend& b = index.backend();
    SeparationMatrix m;
    m.depth = depth;
    m.threshold = threshold;
    for (const Word& r : rays) {
        Word g = b.reduce(r);
        if (g.empty()) throw precondition_error("identity is not a ray generator");
        // torsion guard: reject rays with order <= 2 * radius
        Word p = g;
        for (int k = 2; k <= 2 * index.radius(); ++k) {
            p = b.multiply(p, g);
            if (p.empty())
                throw precondition_error("ray generator has finite order " + std::to_string(k));
        }
        Word e;
        for (int k = 0; k < depth; ++k) e = b.multiply(e, g);
        m.endpoints.push_back(std::move(e));
    }
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < rays.size(); ++i)
        for (std::size_t j = i + 1; j < rays.size(); ++j) pairs.emplace_back(i, j);
    m.entries.resize(pairs.size());
    parallel_for(pairs.size(), workers, [&](std::size_t k) {
        auto [i, j] = pairs[k];
        m.entries[k] = {i, j,
                        floyd_distance_bracket(index, f, m.endpoints[i], m.endpoints[j])};
    });
    m.separated = true;
    for (const auto& e : m.entries)
        if (!(e.bracket.lower > threshold)) m.separated = false;
    return m;
}

inline std::string separation_csv(const SeparationMatrix& m) {
    CsvWriter csv;
    csv.field(std::string("i"));
    csv.field(std::string("j"));
    csv.field(std::string("endpoint_i"));
    csv.field(std::string("endpoint_j"));
    csv.field(std::string("lower"));
    csv.field(std::string("upper"));
    csv.endrow();
    for (const auto& e : m.entries) {
        csv.field(static_cast<std::uint64_t>(e.i));
        csv.field(static_cast<std::uint64_t>(e.j));
        csv.field(m.endpoints[e.i]);
        csv.field(m.endpoints[e.j]);
        csv.field(e.bracket.lower);
        csv.field(e.bracket.upper);
        csv.endrow();
    }
    return csv.str();
}

}  // namespace ggt
