// User-supplied groups as confluent rewriting systems.
//
// The rule list is taken as given: it must realize the word problem of the
// intended group on its own (cancellation rules included). No completion is
// attempted. Acceptance requires every rule to be length-non-increasing, with
// length-preserving rules strictly shortlex-decreasing (termination), and a
// bounded local-confluence check over all rule overlaps to pass. The check is
// necessary but not sufficient for confluence on the whole group; that caveat
// is inherited by the geodesic_normal_forms flag of accepted backends.
#pragma once

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ggt/backend.hpp"

#include <nlohmann/json.hpp>

namespace ggt {

struct Presentation {
    std::string name = "presented";
    std::string letters;  // declared order, inverses included
    std::vector<std::pair<char, char>> involution;
    std::vector<RewriteRule> rules;
};

namespace detail {

inline std::string show_rule(const RewriteRule& r) {
    return "\"" + r.lhs + "\" -> \"" + r.rhs + "\"";
}

struct CriticalPair {
    Word overlap;  // the ambiguous word
    Word nf1, nf2;
};

/// Reduces both sides of every critical pair (overlaps of width at most
/// lhs+lhs) and returns the first non-joinable one, if any.
inline std::optional<CriticalPair> find_confluence_failure(const GroupBackend& b) {
    const auto& rules = b.rules();
    auto nf = [&](const Word& w) { return b.reduce(w); };
    for (const auto& r1 : rules) {
        for (const auto& r2 : rules) {
            const Word& l1 = r1.lhs;
            const Word& l2 = r2.lhs;
            // proper overlap: suffix of l1 = prefix of l2
            std::size_t kmax = std::min(l1.size(), l2.size()) - 1;
            for (std::size_t k = 1; k <= kmax; ++k) {
                if (l1.compare(l1.size() - k, k, l2, 0, k) != 0) continue;
                Word w = l1 + l2.substr(k);
                Word a = r1.rhs + l2.substr(k);
                Word c = l1.substr(0, l1.size() - k) + r2.rhs;
                Word na = nf(a), nc = nf(c);
                if (na != nc) return CriticalPair{w, na, nc};
            }
            // containment: l2 occurs inside l1
            if (l2.size() <= l1.size()) {
                for (std::size_t p = 0; p + l2.size() <= l1.size(); ++p) {
                    if (&r1 == &r2 && p == 0 && l1.size() == l2.size()) continue;
                    if (l1.compare(p, l2.size(), l2) != 0) continue;
                    Word a = r1.rhs;
                    Word c = l1.substr(0, p) + r2.rhs + l1.substr(p + l2.size());
                    Word na = nf(a), nc = nf(c);
                    if (na != nc) return CriticalPair{l1, na, nc};
                }
            }
        }
    }
    return std::nullopt;
}

}  // namespace detail

/// Builds a rewriting backend from a presentation, rejecting non-terminating
/// systems and systems that fail the bounded local-confluence check.
inline GroupBackend load_presentation(const Presentation& p) {
    Alphabet alphabet(p.letters, p.involution);

    std::vector<RewriteRule> rules;
    std::set<std::pair<Word, Word>> seen;
    for (const auto& r : p.rules) {
        if (r.lhs.empty()) throw config_error("rule with empty left-hand side");
        alphabet.check_word(r.lhs);
        alphabet.check_word(r.rhs);
        if (r.rhs.size() > r.lhs.size())
            throw config_error("length-increasing rule rejected: " + detail::show_rule(r));
        if (r.rhs.size() == r.lhs.size() && !alphabet.lex_less(r.rhs, r.lhs))
            throw config_error("length-preserving rule must decrease shortlex: " +
                               detail::show_rule(r));
        if (seen.insert({r.lhs, r.rhs}).second) rules.push_back(r);
    }

    // tree_like iff the system is exactly free cancellation for this alphabet
    std::set<std::pair<Word, Word>> cancellation;
    for (char c : p.letters)
        cancellation.insert({Word{c, alphabet.inverse(c)}, Word{}});
    bool tree = seen == cancellation;

    BackendFlags flags{.geodesic_normal_forms = true, .tree_like = tree};
    GroupBackend backend =
        GroupBackend::rewriting(p.name, std::move(alphabet), std::move(rules), flags);

    if (auto fail = detail::find_confluence_failure(backend)) {
        throw config_error("local confluence fails on overlap \"" + fail->overlap +
                           "\": normal forms \"" + fail->nf1 + "\" vs \"" + fail->nf2 + "\"");
    }
    return backend;
}

/// Presentation file: {"name": ..., "generators": ["a","b"],
/// "inverses": {"a":"A","b":"B"}, "rules": [["aa",""], ...]}.
/// A generator mapped to itself is an involution. Letter order is the
/// generators list with each fresh inverse letter following its generator.
inline Presentation parse_presentation(const nlohmann::json& j) {
    Presentation p;
    if (j.contains("name")) p.name = j.at("name").get<std::string>();
    if (!j.contains("generators") || !j.contains("inverses"))
        throw config_error("presentation needs 'generators' and 'inverses'");
    std::string letters;
    auto have = [&](char c) { return letters.find(c) != std::string::npos; };
    const auto& inv = j.at("inverses");
    for (const auto& g : j.at("generators")) {
        std::string s = g.get<std::string>();
        if (s.size() != 1) throw config_error("generators must be single symbols");
        char c = s[0];
        if (have(c)) throw config_error("duplicate generator");
        letters += c;
        if (!inv.contains(s)) throw config_error("no inverse declared for '" + s + "'");
        std::string t = inv.at(s).get<std::string>();
        if (t.size() != 1) throw config_error("inverses must be single symbols");
        p.involution.emplace_back(c, t[0]);
        if (t[0] != c && !have(t[0])) letters += t[0];
    }
    p.letters = letters;
    if (j.contains("rules"))
        for (const auto& r : j.at("rules")) {
            if (!r.is_array() || r.size() != 2)
                throw config_error("rules must be [lhs, rhs] pairs");
            p.rules.push_back({r[0].get<std::string>(), r[1].get<std::string>()});
        }
    return p;
}

}  // namespace ggt
