// Word-problem backends. A backend owns a symmetric alphabet and a rule for
// canonical normal forms; everything else in the library is written against
// this contract. Backends are immutable after construction and safe to share
// across threads; reduce/multiply/invert are pure.
#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ggt/alphabet.hpp"
#include "ggt/errors.hpp"

namespace ggt {

enum class BackendKind { free_group, free_abelian, rewriting };

struct BackendFlags {
    bool geodesic_normal_forms = false;  // |reduce(g)| == d_S(1, g)
    bool tree_like = false;              // Cayley graph is a tree
};

struct RewriteRule {
    Word lhs, rhs;
    friend bool operator==(const RewriteRule&, const RewriteRule&) = default;
};

class GroupBackend {
public:
    /// Free group of the given rank; letters a..z with uppercase inverses.
    static GroupBackend free_group(int rank, std::string name = {}) {
        return GroupBackend(name.empty() ? "f" + std::to_string(rank) : std::move(name),
                            BackendKind::free_group, paired_alphabet(rank),
                            BackendFlags{.geodesic_normal_forms = true, .tree_like = true},
                            rank);
    }

    /// Free abelian group Z^rank; normal forms are letter-sorted words.
    static GroupBackend free_abelian(int rank, std::string name = {}) {
        return GroupBackend(name.empty() ? "z" + std::to_string(rank) : std::move(name),
                            BackendKind::free_abelian, paired_alphabet(rank),
                            BackendFlags{.geodesic_normal_forms = true, .tree_like = rank <= 1},
                            rank);
    }

    /// Rewriting backend over a validated, terminating rule system. Use
    /// load_presentation() rather than calling this directly; no checks are
    /// repeated here.
    static GroupBackend rewriting(std::string name, Alphabet alphabet,
                                  std::vector<RewriteRule> rules, BackendFlags flags) {
        GroupBackend b(std::move(name), BackendKind::rewriting, std::move(alphabet), flags, 0);
        b.rules_ = std::move(rules);
        b.index_rules();
        return b;
    }

    const std::string& name() const { return name_; }
    BackendKind kind() const { return kind_; }
    const Alphabet& alphabet() const { return alphabet_; }
    const BackendFlags& flags() const { return flags_; }
    const std::vector<RewriteRule>& rules() const { return rules_; }

    /// Canonical normal form. Idempotent; depends only on the group element.
    Word reduce(const Word& w) const {
        alphabet_.check_word(w);
        return reduce_unchecked(w);
    }

    Word multiply(const Word& u, const Word& v) const {
        alphabet_.check_word(u);
        alphabet_.check_word(v);
        return reduce_unchecked(u + v);
    }

    Word invert(const Word& u) const {
        alphabet_.check_word(u);
        return reduce_unchecked(alphabet_.formal_inverse(u));
    }

    bool is_normal(const Word& w) const { return reduce(w) == w; }

    bool shortlex_less(const Word& u, const Word& v) const {
        return alphabet_.shortlex_less(u, v);
    }

private:
    GroupBackend(std::string name, BackendKind kind, Alphabet alphabet, BackendFlags flags,
                 int rank)
        : name_(std::move(name)), kind_(kind), alphabet_(std::move(alphabet)), flags_(flags),
          rank_(rank) {}

    static Alphabet paired_alphabet(int rank) {
        if (rank < 0 || rank > 13)
            throw config_error("generator rank must be in [0, 13]");
        std::string letters;
        std::vector<std::pair<char, char>> pairs;
        for (int i = 0; i < rank; ++i) {
            char lo = static_cast<char>('a' + i);
            char hi = static_cast<char>('A' + i);
            letters += lo;
            letters += hi;
            pairs.emplace_back(lo, hi);
        }
        return Alphabet(letters, pairs);
    }

    Word reduce_unchecked(const Word& w) const {
        switch (kind_) {
            case BackendKind::free_group: return reduce_free(w);
            case BackendKind::free_abelian: return reduce_abelian(w);
            case BackendKind::rewriting: return reduce_rewriting(w);
        }
        return w;
    }

    Word reduce_free(const Word& w) const {
        Word out;
        out.reserve(w.size());
        for (char c : w) {
            if (!out.empty() && alphabet_.inverse(out.back()) == c)
                out.pop_back();
            else
                out.push_back(c);
        }
        return out;
    }

    Word reduce_abelian(const Word& w) const {
        // exponent vector, then emit per generator in declared order
        std::vector<long long> e(static_cast<std::size_t>(rank_), 0);
        for (char c : w) {
            int r = alphabet_.rank(c);
            e[static_cast<std::size_t>(r / 2)] += (r % 2 == 0) ? 1 : -1;
        }
        Word out;
        for (int i = 0; i < rank_; ++i) {
            long long k = e[static_cast<std::size_t>(i)];
            char c = k >= 0 ? alphabet_.letters()[2 * i] : alphabet_.letters()[2 * i + 1];
            out.append(static_cast<std::size_t>(k >= 0 ? k : -k), c);
        }
        return out;
    }

    // Leftmost-innermost application to exhaustion. Rule choice at a position
    // is by the precomputed priority order, so reduction is deterministic even
    // on systems that are not confluent.
    Word reduce_rewriting(Word w) const {
        if (rules_.empty()) return w;
        std::size_t i = 0;
        while (i < w.size()) {
            const RewriteRule* m = match_at(w, i);
            if (!m) {
                ++i;
                continue;
            }
            w.replace(i, m->lhs.size(), m->rhs);
            std::size_t back = max_lhs_ - 1;
            i = i > back ? i - back : 0;
        }
        return w;
    }

    const RewriteRule* match_at(const Word& w, std::size_t i) const {
        for (std::uint32_t k : by_first_[static_cast<unsigned char>(w[i])]) {
            const RewriteRule& r = rules_[k];
            if (r.lhs.size() <= w.size() - i && w.compare(i, r.lhs.size(), r.lhs) == 0)
                return &r;
        }
        return nullptr;
    }

    void index_rules() {
        // priority: longer lhs first, then lhs lex, then rhs shortlex
        std::stable_sort(rules_.begin(), rules_.end(),
                         [this](const RewriteRule& a, const RewriteRule& b) {
                             if (a.lhs.size() != b.lhs.size()) return a.lhs.size() > b.lhs.size();
                             if (a.lhs != b.lhs) return alphabet_.lex_less(a.lhs, b.lhs);
                             return alphabet_.shortlex_less(a.rhs, b.rhs);
                         });
        max_lhs_ = 1;
        for (const auto& r : rules_) max_lhs_ = std::max(max_lhs_, r.lhs.size());
        for (auto& v : by_first_) v.clear();
        for (std::uint32_t k = 0; k < rules_.size(); ++k)
            by_first_[static_cast<unsigned char>(rules_[k].lhs[0])].push_back(k);
    }

    std::string name_;
    BackendKind kind_;
    Alphabet alphabet_;
    BackendFlags flags_;
    int rank_ = 0;
    std::vector<RewriteRule> rules_;
    std::size_t max_lhs_ = 1;
    std::array<std::vector<std::uint32_t>, 256> by_first_{};
};

}  // namespace ggt
