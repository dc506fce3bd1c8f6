// Bundled group backends addressable by name from the CLI and configs.
#pragma once

#include <string>

#include "ggt/backend.hpp"
#include "ggt/presentation.hpp"

namespace ggt {

/// Z/2 * Z/3 as a confluent rewriting system: a is an involution, b has
/// order three with B = b^2 = b^{-1}.
inline Presentation z2z3_presentation() {
    Presentation p;
    p.name = "z2z3";
    p.letters = "abB";
    p.involution = {{'a', 'a'}, {'b', 'B'}};
    p.rules = {{"aa", ""}, {"bb", "B"}, {"BB", "b"}, {"bB", ""}, {"Bb", ""}};
    return p;
}

/// Presets: f2, f3 (free), z (free of rank 1), z2 (free abelian), z2z3.
inline GroupBackend preset_backend(const std::string& name) {
    if (name == "f2") return GroupBackend::free_group(2);
    if (name == "f3") return GroupBackend::free_group(3);
    if (name == "z") return GroupBackend::free_group(1, "z");
    if (name == "z2") return GroupBackend::free_abelian(2);
    if (name == "z2z3") return load_presentation(z2z3_presentation());
    throw config_error("unknown group preset '" + name + "'");
}

}  // namespace ggt
