#pragma once

#include "augmatch/instance.hpp"

#include <string>

namespace augmatch {

// Deterministic serialization: fixed key order, coordinates as canonical
// "numerator/denominator" strings, two-space indentation. Round trips are
// byte-identical: to(from(to(x))) == to(x).
std::string instance_to_json(const MatchingInstance& inst);
MatchingInstance instance_from_json(const std::string& text);

std::string augmentation_to_json(const Augmentation& aug);
Augmentation augmentation_from_json(const std::string& text);

}  // namespace augmatch
