// Free-product machinery for growth-gap experiments: nets of minimal
// representatives, alternating words a_1 h^n ... a_k h^n, exhaustive
// injectivity scans of the evaluation map, normal paths, and certificates
// that the weighted net series exceeds one at a given exponent.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "ggt/cayley.hpp"
#include "ggt/contracting.hpp"
#include "ggt/errors.hpp"
#include "ggt/growth.hpp"
#include "ggt/numeric.hpp"
#include "ggt/parallel.hpp"
#include "ggt/quotient.hpp"

namespace ggt {

inline Word power(const GroupBackend& b, const Word& g, int n) {
    Word p;
    for (int i = 0; i < n; ++i) p = b.multiply(p, g);
    return p;
}

/// Separated covering subset of the minimal representatives: pairwise coset
/// distance > L, and every representative within coset distance <= L of an
/// accepted one (the greedy guarantee; see build_net).
struct Net {
    std::vector<Word> elements;  // in shortlex order
    int L = 0;
};

/// Greedy selection in shortlex order: accept a representative iff its coset
/// distance to every accepted element exceeds L. Every rejected element is
/// then within L of some accepted one, so the net covers with <= L.
inline Net build_net(const MinimalRepSet& reps, const Epimorphism& pi, int L) {
    if (L < 0) throw precondition_error("net separation must be >= 0");
    Net net;
    net.L = L;
    for (const Word& g : reps.reps) {
        bool ok = true;
        for (const Word& a : net.elements)
            if (pi.coset_distance(a, g) <= L) {
                ok = false;
                break;
            }
        if (ok) net.elements.push_back(g);
    }
    return net;
}

/// The alternating words a_1 h^n a_2 h^n ... a_k h^n with a_i drawn from A,
/// enumerated lexicographically in (k, syllable indices). Random access by
/// rank keeps parallel evaluation deterministic.
class FreeWordEnumerator {
public:
    FreeWordEnumerator(const Net& A, const GroupBackend& backend, const Word& h, int n,
                       int k_max)
        : net_(&A), backend_(&backend), k_max_(k_max) {
        if (n < 1) throw precondition_error("power n must be >= 1");
        h_pow_ = power(backend, h, n);
        Word h_nf = backend.reduce(h);
        for (const Word& a : A.elements)
            if (a == h_nf)
                throw precondition_error("h must not belong to the net");
        std::uint64_t pow = 1;
        counts_.push_back(0);
        for (int k = 1; k <= k_max; ++k) {
            pow *= A.elements.size();
            counts_.push_back(counts_.back() + pow);
        }
    }

    const Word& h_power() const { return h_pow_; }

    /// Total number of words with at most k_max syllables: sum |A|^k.
    std::uint64_t count() const { return counts_.back(); }

    /// Syllable indices of the word with the given rank.
    std::vector<std::size_t> syllables(std::uint64_t rank) const {
        int k = 1;
        while (rank >= counts_[static_cast<std::size_t>(k)]) ++k;
        std::uint64_t offset = rank - counts_[static_cast<std::size_t>(k) - 1];
        std::vector<std::size_t> idx(static_cast<std::size_t>(k));
        std::uint64_t base = net_->elements.size();
        for (int i = k - 1; i >= 0; --i) {
            idx[static_cast<std::size_t>(i)] = static_cast<std::size_t>(offset % base);
            offset /= base;
        }
        return idx;
    }

    /// kappa: the canonical image of the word, reduce(a_1 h^n ... a_k h^n).
    Word kappa(std::uint64_t rank) const {
        Word g;
        for (std::size_t i : syllables(rank)) {
            g = backend_->multiply(g, net_->elements[i]);
            g = backend_->multiply(g, h_pow_);
        }
        return g;
    }

    std::string describe(std::uint64_t rank) const {
        std::string s;
        for (std::size_t i : syllables(rank)) {
            s += net_->elements[i].empty() ? "1" : net_->elements[i];
            s += ".h^n";
            s += ' ';
        }
        if (!s.empty()) s.pop_back();
        return s;
    }

private:
    const Net* net_;
    const GroupBackend* backend_;
    int k_max_;
    Word h_pow_;
    std::vector<std::uint64_t> counts_;  // cumulative word counts by syllable count
};

struct Collision {
    std::uint64_t rank_a = 0, rank_b = 0;
    std::string word_a, word_b;  // readable syllable forms
    Word image;
};

struct InjectivityResult {
    bool injective = false;
    bool exhaustive = false;       // all sum |A|^k words were evaluated
    std::uint64_t words_total = 0;
    std::uint64_t words_tested = 0;
    int n = 0;
    int k_max = 0;
    std::vector<Collision> collisions;  // first few witnesses
};

/// Exhaustive collision scan over canonical images of the enumerated words.
/// If the enumeration exceeds the budget, the verdict covers only a prefix
/// and is marked non-exhaustive.
inline InjectivityResult injectivity_test(const Net& A, const GroupBackend& backend,
                                          const Word& h, int n, int k_max,
                                          std::uint64_t budget = 4'000'000,
                                          int workers = 1) {
    FreeWordEnumerator en(A, backend, h, n, k_max);
    InjectivityResult res;
    res.n = n;
    res.k_max = k_max;
    res.words_total = en.count();
    res.words_tested = std::min<std::uint64_t>(res.words_total, budget);
    res.exhaustive = res.words_tested == res.words_total;

    std::vector<Word> images(static_cast<std::size_t>(res.words_tested));
    parallel_for(images.size(), workers,
                 [&](std::size_t i) { images[i] = en.kappa(i); });

    std::vector<std::uint32_t> order(images.size());
    std::iota(order.begin(), order.end(), 0u);
    std::sort(order.begin(), order.end(), [&](std::uint32_t x, std::uint32_t y) {
        if (images[x] != images[y]) return images[x] < images[y];
        return x < y;
    });
    for (std::size_t i = 0; i + 1 < order.size(); ++i)
        if (images[order[i]] == images[order[i + 1]]) {
            if (res.collisions.size() < 16)
                res.collisions.push_back({order[i], order[i + 1], en.describe(order[i]),
                                          en.describe(order[i + 1]), images[order[i]]});
        }
    res.injective = res.collisions.empty();
    return res;
}

/// Projection diameter of the certified geodesic [1, g] on the axis of h;
/// g must be a minimal representative for pi.
inline int orthogonality_check(const Epimorphism& pi, const Word& g, const Word& h,
                               int axis_radius) {
    const GroupBackend& b = pi.source();
    Word nf = b.reduce(g);
    if (word_length(b, nf) != word_length(pi.target(), pi.push(nf)))
        throw precondition_error("orthogonality check needs a minimal representative");
    AxisSpec axis = axis_of(b, h, axis_radius);
    GeodesicOracle oracle(b);
    std::vector<Word> path = oracle.path_vertices(Word{}, nf);
    return set_diameter(b, project_set(b, axis.points, path));
}

/// The admissible path canonically associated to a_1 h^n ... a_k h^n:
/// connector geodesics labelled a_i alternate with h^n geodesics whose
/// endpoints lie in translated axes of h. h must be cyclically reduced so the
/// identity is a basepoint on its axis. D is set to d(1, h^n) - 1 and tau to
/// the measured orthogonality, so the result validates by construction.
inline AdmissiblePath normal_path(const std::vector<Word>& a_syllables,
                                  const GroupBackend& backend, const Word& h, int n) {
    if (a_syllables.empty()) throw precondition_error("a normal path needs k >= 1");
    Word h_nf = backend.reduce(h);
    if (h_nf.empty()) throw precondition_error("h must be nontrivial");

    Word h_pow = power(backend, h_nf, n);
    int total = word_length(backend, h_pow) * static_cast<int>(a_syllables.size());
    for (const Word& a : a_syllables) total += word_length(backend, backend.reduce(a));
    int axis_radius = 3 * total + static_cast<int>(h_nf.size()) + 4;

    AxisSpec axis = axis_of(backend, h_nf, axis_radius);
    if (!axis.conjugator.empty())
        throw precondition_error(
            "h must be cyclically reduced (conjugate the experiment instead)");

    GeodesicOracle oracle(backend);
    AdmissiblePath path;
    Word prefix;
    for (const Word& a : a_syllables) {
        Word a_nf = backend.reduce(a);
        PathSegment conn;
        conn.label = a_nf;
        conn.vertices = oracle.path_vertices(prefix, backend.multiply(prefix, a_nf));
        path.segments.push_back(std::move(conn));
        prefix = backend.multiply(prefix, a_nf);

        PathSegment hs;
        hs.label = h_pow;
        hs.vertices = oracle.path_vertices(prefix, backend.multiply(prefix, h_pow));
        hs.set_index = path.sets.size();
        path.sets.push_back(translate_subset(backend, prefix, axis.points));
        path.segments.push_back(std::move(hs));
        prefix = backend.multiply(prefix, h_pow);
    }
    path.d_param = static_cast<double>(word_length(backend, h_pow)) - 1.0;

    int tau = 0;
    for (std::size_t k = 0; k < path.segments.size(); ++k) {
        if (path.segments[k].set_index) continue;
        for (std::size_t nb : {k == 0 ? k : k - 1, k + 1}) {
            if (nb == k || nb >= path.segments.size()) continue;
            if (!path.segments[nb].set_index) continue;
            const FiniteSubset& X = path.sets[*path.segments[nb].set_index];
            tau = std::max(tau,
                           set_diameter(backend,
                                        project_set(backend, X, path.segments[k].vertices)));
        }
    }
    path.tau = static_cast<double>(tau);
    return path;
}

struct GapCertificate {
    double s = 0.0;
    double value = 0.0;    // sum over the net of exp(-s d(1, a h^n))
    bool certified = false;  // value > 1 and the injectivity scan passed
};

/// Evaluates the one-step series of the free-product set at exponent s. A
/// certificate needs both value > 1 and an exhaustive injective verdict; it
/// then witnesses growth rate >= s for the ambient group.
inline GapCertificate gap_certificate(const Net& A, const GroupBackend& backend,
                                      const Word& h, int n, double s,
                                      const InjectivityResult& injectivity) {
    if (!(s > 0.0)) throw precondition_error("certificate exponent must be positive");
    Word h_pow = power(backend, h, n);
    KahanSum sum;
    for (const Word& a : A.elements)
        sum.add(std::exp(-s * word_length(backend, backend.multiply(a, h_pow))));
    GapCertificate cert;
    cert.s = s;
    cert.value = sum.value();
    cert.certified = cert.value > 1.0 && injectivity.injective && injectivity.exhaustive;
    return cert;
}

struct TightnessParams {
    Word h;
    int rep_radius = 8;          // source ball for minimal representatives
    int orth_radius = 5;         // representatives probed for tau
    int k_max = 3;
    int n_start = 1;
    int n_max = 8;               // doubling escalation stops here
    std::optional<int> net_L;    // override; otherwise tau_max + 2 d(1, h^n)
    std::vector<double> s_grid = {0.25, 0.3, 0.35, 0.4, 0.5, 0.7, 1.0};
    int source_growth_radius = 12;
    int target_growth_radius = 40;
    std::uint64_t word_budget = 4'000'000;
    std::uint64_t max_elements = 8'000'000;
    std::uint64_t seed = 0;
    int workers = 1;
    bool assert_infinite_kernel = true;
};

struct NAttempt {
    int n = 0;
    int L = 0;
    std::size_t net_size = 0;
    bool injective = false;
    bool exhaustive = false;
};

struct TightnessReport {
    std::string source_name, target_name;
    Word h;
    CriticalBracket delta_source{};  // hi certified, lo heuristic
    CriticalBracket delta_target{};
    int tau_observed = 0;
    std::vector<NAttempt> attempts;
    int n = 0;  // the accepted power, 0 if none passed
    int L = 0;
    std::size_t net_size = 0;
    int k_max = 0;
    InjectivityResult injectivity;  // verdict at the accepted (or last) n
    std::vector<GapCertificate> sweep;
    std::optional<GapCertificate> best;  // largest certified s
    bool certified = false;
    double gap_lower_bound = 0.0;  // growth of source certified >= this
    std::vector<std::string> notes;
};

/// End-to-end experiment: minimal representatives, orthogonality sweep, net,
/// escalating injectivity scans, certificate sweep, growth brackets for both
/// groups. Fails fast if h is not a nontrivial kernel element.
inline TightnessReport tightness_experiment(const Epimorphism& pi,
                                            const TightnessParams& params) {
    const GroupBackend& src = pi.source();
    const GroupBackend& tgt = pi.target();
    if (!params.assert_infinite_kernel)
        throw config_error("experiment requires asserting an infinite kernel");
    if (!src.flags().tree_like)
        throw config_error(
            "experiments need a tree-like source (axes of h are computed there)");
    Word h = src.reduce(params.h);
    if (h.empty() || !pi.in_kernel(h))
        throw config_error("h must be a nontrivial kernel element");

    TightnessReport report;
    report.source_name = src.name();
    report.target_name = tgt.name();
    report.h = h;
    report.k_max = params.k_max;

    BallOptions ball_opt{params.max_elements, params.workers};
    SphereTable src_ball = enumerate_ball(src, params.rep_radius, ball_opt);
    MinimalRepSet reps = minimal_reps(pi, src_ball);

    // orthogonality sweep over representatives up to orth_radius
    int axis_radius = 2 * params.orth_radius + 2 * static_cast<int>(h.size()) + 4;
    std::vector<const Word*> probe;
    for (const Word& g : reps.reps)
        if (word_length(src, g) <= params.orth_radius) probe.push_back(&g);
    std::vector<int> taus(probe.size());
    parallel_for(probe.size(), params.workers, [&](std::size_t i) {
        taus[i] = orthogonality_check(pi, *probe[i], h, axis_radius);
    });
    for (int t : taus) report.tau_observed = std::max(report.tau_observed, t);

    // escalate n by doubling until the exhaustive scan passes
    bool accepted = false;
    for (int n = params.n_start; n <= params.n_max && !accepted; n *= 2) {
        int L = params.net_L ? *params.net_L
                             : report.tau_observed +
                                   2 * word_length(src, power(src, h, n));
        Net net = build_net(reps, pi, L);
        InjectivityResult verdict = injectivity_test(net, src, h, n, params.k_max,
                                                     params.word_budget, params.workers);
        report.attempts.push_back(
            {n, L, net.elements.size(), verdict.injective, verdict.exhaustive});
        report.injectivity = std::move(verdict);
        report.L = L;
        report.net_size = net.elements.size();
        if (report.injectivity.injective && report.injectivity.exhaustive) {
            accepted = true;
            report.n = n;
            for (double s : params.s_grid) {
                GapCertificate c = gap_certificate(net, src, h, n, s, report.injectivity);
                report.sweep.push_back(c);
                if (c.certified && (!report.best || c.s > report.best->s)) report.best = c;
            }
        }
    }
    report.certified = report.best.has_value();
    if (report.best) report.gap_lower_bound = report.best->s;

    SphereTable src_growth = enumerate_ball(src, params.source_growth_radius + 1, ball_opt);
    SphereTable tgt_growth = enumerate_ball(tgt, params.target_growth_radius + 1, ball_opt);
    report.delta_source = critical_bracket(src_growth);
    report.delta_target = critical_bracket(tgt_growth);

    report.notes.push_back(
        "certified exponent transfers to the group growth rate through the "
        "free-product series: injective evaluation plus value > 1 at s forces "
        "divergence beyond s");
    report.notes.push_back(
        "net series shares the convergence of the quotient series (covering "
        "argument); divergence at the critical exponent is inherited, not "
        "verified numerically");
    report.notes.push_back("words start with a net syllable and end with h^n");
    return report;
}

}  // namespace ggt
