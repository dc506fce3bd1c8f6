// Epimorphisms pi: G -> G/Gamma presented as a pair of backends plus a
// generator map. The kernel is never materialized: membership, the quotient
// metric and coset distances all go through the target word problem.
#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ggt/cayley.hpp"
#include "ggt/errors.hpp"

namespace ggt {

class Epimorphism {
public:
    /// gen_map sends source letters to target letters or to the empty word
    /// (letters killed by the quotient). Unlisted inverse letters are
    /// completed via the involutions; the map must respect them, every target
    /// letter must be hit, and every source rewriting rule must push to an
    /// identity in the target (bounded well-definedness check).
    Epimorphism(const GroupBackend& source, const GroupBackend& target,
                const std::vector<std::pair<char, std::optional<char>>>& gen_map)
        : source_(&source), target_(&target) {
        mapped_.fill(false);
        image_.fill(0);
        for (auto [s, t] : gen_map) {
            if (!source.alphabet().contains(s))
                throw config_error("gen_map names unknown source letter");
            if (t && !target.alphabet().contains(*t))
                throw config_error("gen_map names unknown target letter");
            set_image(s, t ? *t : 0);
            set_image(source.alphabet().inverse(s),
                      t ? target.alphabet().inverse(*t) : 0);
        }
        for (char s : source.alphabet().letters())
            if (!mapped_[static_cast<unsigned char>(s)])
                throw config_error("gen_map leaves source letter '" + std::string(1, s) +
                                   "' unmapped");
        for (char t : target.alphabet().letters()) {
            bool hit = false;
            for (char s : source.alphabet().letters())
                if (image_[static_cast<unsigned char>(s)] == t) hit = true;
            if (!hit)
                throw config_error("target letter '" + std::string(1, t) +
                                   "' is not the image of any generator");
        }
        for (const auto& rule : source.rules())
            if (push(rule.lhs) != push(rule.rhs))
                throw config_error("gen_map does not respect source rule \"" + rule.lhs +
                                   "\" -> \"" + rule.rhs + "\"");
    }

    const GroupBackend& source() const { return *source_; }
    const GroupBackend& target() const { return *target_; }

    /// pi(g): letterwise image, reduced in the target.
    Word push(const Word& g) const {
        source_->alphabet().check_word(g);
        Word w;
        w.reserve(g.size());
        for (char c : g) {
            if (!mapped_[static_cast<unsigned char>(c)])
                throw alphabet_error("letter without image");
            char t = image_[static_cast<unsigned char>(c)];
            if (t != 0) w.push_back(t);
        }
        return target_->reduce(w);
    }

    bool in_kernel(const Word& g) const { return push(g).empty(); }

    /// d(a Gamma, a' Gamma) = dbar(1, pi(a^{-1} a')); Gamma is normal.
    int coset_distance(const Word& a, const Word& a2) const {
        return word_length(*target_, push(source_->multiply(source_->invert(a), a2)));
    }

private:
    void set_image(char s, char t) {
        unsigned char i = static_cast<unsigned char>(s);
        if (mapped_[i] && image_[i] != t)
            throw config_error("gen_map conflicts with the involution on '" +
                               std::string(1, s) + "'");
        mapped_[i] = true;
        image_[i] = t;
    }

    const GroupBackend* source_;
    const GroupBackend* target_;
    std::array<bool, 256> mapped_{};
    std::array<char, 256> image_{};
};

/// All g in the source ball with |g| = dbar(1, pi(g)), in shortlex order.
struct MinimalRepSet {
    int radius = 0;
    std::vector<Word> reps;
};

inline MinimalRepSet minimal_reps(const Epimorphism& pi, const SphereTable& source_ball) {
    MinimalRepSet out;
    out.radius = source_ball.radius;
    for (int n = 0; n <= source_ball.radius; ++n)
        for (const Word& g : source_ball.spheres[static_cast<std::size_t>(n)])
            if (word_length(pi.target(), pi.push(g)) == n) out.reps.push_back(g);
    return out;
}

struct QuotientMetricVerdict {
    enum class Status { equal, mismatch, inconclusive };
    Status status = Status::inconclusive;
    int quotient_length = 0;   // dbar(1, gbar)
    int brute_minimum = -1;    // min |g| over the ball with pi(g) = gbar
    Word witness;              // a realizing source element, when found
};

/// Brute-forces min{|g| : g in ball, pi(g) = gbar} and compares it with the
/// target word length. A coset not met within the ball is inconclusive, not a
/// counterexample.
inline QuotientMetricVerdict quotient_metric_check(const Epimorphism& pi, const Word& gbar,
                                                   const SphereTable& source_ball) {
    QuotientMetricVerdict v;
    Word target_nf = pi.target().reduce(gbar);
    v.quotient_length = word_length(pi.target(), target_nf);
    if (v.quotient_length > source_ball.radius - 1)
        throw precondition_error("quotient_metric_check needs dbar(1, gbar) <= radius - 1");
    for (int n = 0; n <= source_ball.radius; ++n)
        for (const Word& g : source_ball.spheres[static_cast<std::size_t>(n)])
            if (pi.push(g) == target_nf) {
                v.brute_minimum = n;
                v.witness = g;
                v.status = n == v.quotient_length ? QuotientMetricVerdict::Status::equal
                                                  : QuotientMetricVerdict::Status::mismatch;
                return v;
            }
    return v;
}

/// One source representative per coset met in the ball: the shortlex-least
/// minimal representative, with iota(gbar^{-1}) = iota(gbar)^{-1} enforced
/// pairwise. Involutive cosets whose representative is not itself involutive
/// keep their representative and are flagged as waived.
struct SectionMap {
    int radius = 0;
    std::vector<std::pair<Word, Word>> entries;  // (coset normal form, representative)
    std::vector<Word> symmetry_waived;           // involutive cosets, symmetry impossible
    std::vector<Word> omitted;                   // target cosets with no rep in the ball
};

inline SectionMap section(const Epimorphism& pi, const SphereTable& source_ball,
                          const SphereTable& target_ball) {
    auto tgt_less = [&pi](const Word& u, const Word& v) {
        return pi.target().shortlex_less(u, v);
    };
    std::map<Word, Word, decltype(tgt_less)> iota(tgt_less);
    MinimalRepSet reps = minimal_reps(pi, source_ball);
    for (const Word& g : reps.reps) iota.try_emplace(pi.push(g), g);

    SectionMap out;
    out.radius = source_ball.radius;
    for (auto& [gbar, g] : iota) {
        Word gbar_inv = pi.target().invert(gbar);
        if (gbar_inv == gbar) {
            if (pi.source().invert(g) != g) out.symmetry_waived.push_back(gbar);
            continue;
        }
        if (tgt_less(gbar, gbar_inv)) {
            auto partner = iota.find(gbar_inv);
            if (partner != iota.end()) partner->second = pi.source().invert(g);
        }
    }
    out.entries.assign(iota.begin(), iota.end());
    // every coset met in the target ball should be represented; a deeper
    // target enumeration than the source ball leaves the excess uncovered
    for (int n = 0; n <= target_ball.radius; ++n)
        for (const Word& gbar : target_ball.spheres[static_cast<std::size_t>(n)])
            if (!iota.count(gbar)) out.omitted.push_back(gbar);
    return out;
}

}  // namespace ggt
