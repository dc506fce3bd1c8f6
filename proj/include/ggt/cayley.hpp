// Metric balls in the Cayley graph: stratified enumeration, word-length and
// geodesic queries. Spheres are stored sorted in shortlex order and the
// frontier expansion merges worker outputs canonically, so tables are
// byte-identical for any worker count.
#pragma once

#include <algorithm>
#include <cstdint>
#include <mutex>
#include <optional>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "ggt/backend.hpp"
#include "ggt/csv.hpp"
#include "ggt/errors.hpp"
#include "ggt/parallel.hpp"

namespace ggt {

/// Elements of the ball of radius R stratified by word length. b[n] counts
/// sphere n, cum[n] = b_0 + ... + b_n counts the ball of radius n.
struct SphereTable {
    std::string backend_name;
    int radius = 0;
    std::vector<std::vector<Word>> spheres;
    std::vector<std::uint64_t> b;
    std::vector<std::uint64_t> cum;

    std::uint64_t total() const { return cum.empty() ? 0 : cum.back(); }
};

struct BallOptions {
    std::uint64_t max_elements = 8'000'000;
    int workers = 1;
};

/// Breadth-first frontier expansion with canonical-form dedup. Sphere n is
/// exactly the set of elements at word length n for any backend (layer
/// membership comes from the search, not from normal-form lengths).
inline SphereTable enumerate_ball(const GroupBackend& backend, int radius,
                                  const BallOptions& opt = {}) {
    if (radius < 0) throw precondition_error("radius must be >= 0");
    SphereTable t;
    t.backend_name = backend.name();
    t.radius = radius;

    std::unordered_set<Word> visited;
    Word identity = backend.reduce(Word{});
    visited.insert(identity);
    t.spheres.push_back({identity});
    t.b.push_back(1);
    t.cum.push_back(1);

    const std::string& letters = backend.alphabet().letters();
    std::uint64_t count = 1;

    for (int n = 1; n <= radius; ++n) {
        const auto& frontier = t.spheres.back();
        std::vector<std::vector<Word>> chunk_out(
            std::max<std::size_t>(1, std::min<std::size_t>(frontier.size(),
                                                           opt.workers <= 1 ? 1 : opt.workers)));
        parallel_chunks(frontier.size(), opt.workers,
                        [&](std::size_t lo, std::size_t hi, std::size_t c) {
                            auto& out = chunk_out[c];
                            for (std::size_t i = lo; i < hi; ++i)
                                for (char s : letters) {
                                    Word w = backend.multiply(frontier[i], Word(1, s));
                                    if (!visited.count(w)) out.push_back(std::move(w));
                                }
                        });
        std::vector<Word> sphere;
        for (auto& chunk : chunk_out) {
            sphere.insert(sphere.end(), std::make_move_iterator(chunk.begin()),
                          std::make_move_iterator(chunk.end()));
            chunk.clear();
            chunk.shrink_to_fit();
        }
        std::sort(sphere.begin(), sphere.end(),
                  [&](const Word& u, const Word& v) { return backend.shortlex_less(u, v); });
        sphere.erase(std::unique(sphere.begin(), sphere.end()), sphere.end());

        if (count + sphere.size() > opt.max_elements)
            throw budget_error("ball enumeration exceeded element budget at radius " +
                                   std::to_string(n) + "; last completed radius " +
                                   std::to_string(n - 1),
                               n - 1);
        count += sphere.size();
        visited.insert(sphere.begin(), sphere.end());
        t.b.push_back(sphere.size());
        t.cum.push_back(t.cum.back() + sphere.size());
        t.spheres.push_back(std::move(sphere));
    }
    return t;
}

/// d_S(1, g) for a canonical word. Geodesic backends read it off the normal
/// form; otherwise a breadth-first search certifies the distance.
inline int word_length(const GroupBackend& backend, const Word& g,
                       std::uint64_t max_elements = 8'000'000) {
    if (backend.flags().geodesic_normal_forms) return static_cast<int>(g.size());
    std::unordered_set<Word> visited;
    std::vector<Word> frontier{backend.reduce(Word{})};
    visited.insert(frontier.front());
    if (frontier.front() == g) return 0;
    const std::string& letters = backend.alphabet().letters();
    for (int n = 1;; ++n) {
        std::vector<Word> next;
        for (const auto& w : frontier)
            for (char s : letters) {
                Word c = backend.multiply(w, Word(1, s));
                if (visited.insert(c).second) {
                    if (c == g) return n;
                    next.push_back(std::move(c));
                }
            }
        if (next.empty() || visited.size() > max_elements)
            throw budget_error("word length search exhausted budget before reaching element",
                               n);
        frontier = std::move(next);
    }
}

/// d_S(u, v) = d_S(1, u^{-1} v).
inline int distance(const GroupBackend& backend, const Word& u, const Word& v) {
    return word_length(backend, backend.multiply(backend.invert(u), v));
}

/// Shortlex-least geodesic words. Deterministic; memoized for backends where
/// the normal form is not itself the answer. Thread-safe.
class GeodesicOracle {
public:
    explicit GeodesicOracle(const GroupBackend& backend) : backend_(&backend) {}

    /// A word of length d_S(1, g) evaluating to g, least in shortlex among all
    /// geodesic words for g.
    Word geodesic_word(const Word& g) const {
        const GroupBackend& b = *backend_;
        if (b.flags().tree_like) return g;  // the reduced word is the unique geodesic
        if (b.kind() == BackendKind::free_abelian) return g;  // sorted letters
        if (!b.flags().geodesic_normal_forms)
            throw precondition_error(
                "geodesic words need geodesic normal forms on this backend");
        std::scoped_lock lock(mutex_);
        return geodesic_rec(g);
    }

    /// Vertices of the chosen geodesic from u to v (u first), as normal words.
    std::vector<Word> path_vertices(const Word& u, const Word& v) const {
        const GroupBackend& b = *backend_;
        Word w = geodesic_word(b.multiply(b.invert(u), v));
        std::vector<Word> path;
        path.reserve(w.size() + 1);
        path.push_back(u);
        for (char s : w) path.push_back(b.multiply(path.back(), Word(1, s)));
        return path;
    }

    const GroupBackend& backend() const { return *backend_; }

private:
    Word geodesic_rec(const Word& g) const {
        if (g.empty()) return g;
        auto it = memo_.find(g);
        if (it != memo_.end()) return it->second;
        const GroupBackend& b = *backend_;
        std::size_t len = g.size();
        std::optional<Word> best;
        for (char s : b.alphabet().letters()) {
            Word p = b.multiply(g, Word(1, b.alphabet().inverse(s)));
            if (p.size() + 1 != len) continue;
            Word cand = geodesic_rec(p) + s;
            if (!best || b.alphabet().lex_less(cand, *best)) best = std::move(cand);
        }
        memo_.emplace(g, *best);
        return *best;
    }

    const GroupBackend* backend_;
    mutable std::mutex mutex_;
    mutable std::unordered_map<Word, Word> memo_;
};

/// Hash index over a SphereTable for O(1) membership, d(1, .) lookup and
/// implicit adjacency. The table and backend must outlive the index.
class BallIndex {
public:
    BallIndex(const SphereTable& t, const GroupBackend& b) : table_(&t), backend_(&b) {
        ids_.reserve(static_cast<std::size_t>(t.total()) * 2);
        for (int n = 0; n <= t.radius; ++n)
            for (const Word& w : t.spheres[static_cast<std::size_t>(n)]) {
                std::uint32_t id = static_cast<std::uint32_t>(words_.size());
                auto [it, fresh] = ids_.emplace(w, id);
                (void)fresh;
                words_.push_back(&it->first);
                len_.push_back(n);
            }
    }

    std::size_t size() const { return words_.size(); }
    int radius() const { return table_->radius; }
    const SphereTable& table() const { return *table_; }
    const GroupBackend& backend() const { return *backend_; }

    std::optional<std::uint32_t> find(const Word& w) const {
        auto it = ids_.find(w);
        if (it == ids_.end()) return std::nullopt;
        return it->second;
    }

    const Word& word(std::uint32_t id) const { return *words_[id]; }
    int length(std::uint32_t id) const { return len_[id]; }

    std::optional<std::uint32_t> neighbor(std::uint32_t id, char letter) const {
        return find(backend_->multiply(word(id), Word(1, letter)));
    }

private:
    const SphereTable* table_;
    const GroupBackend* backend_;
    std::unordered_map<Word, std::uint32_t> ids_;
    std::vector<const Word*> words_;
    std::vector<int> len_;
};

/// CSV with columns n, b_n, B_n.
inline std::string sphere_csv(const SphereTable& t) {
    CsvWriter csv;
    csv.field(std::string("n"));
    csv.field(std::string("b_n"));
    csv.field(std::string("B_n"));
    csv.endrow();
    for (int n = 0; n <= t.radius; ++n) {
        csv.field(n);
        csv.field(t.b[static_cast<std::size_t>(n)]);
        csv.field(t.cum[static_cast<std::size_t>(n)]);
        csv.endrow();
    }
    return csv.str();
}

/// One normal word per line, stratified by sphere; identity is the empty line.
inline std::string element_dump(const SphereTable& t) {
    std::string out;
    for (const auto& sphere : t.spheres)
        for (const Word& w : sphere) {
            out += w;
            out += '\n';
        }
    return out;
}

}  // namespace ggt
