#ifndef MTOR_CORE_DOT_HPP
#define MTOR_CORE_DOT_HPP

#include <string>

#include "core/fixtures.hpp"
#include "core/pullback.hpp"

namespace mtor {

// Graphviz rendering of one pullback depth: vertices carry coordinate-pair
// labels, old components are gray, new core components highlighted.
std::string pullback_dot(const InputDocument& doc, const PullbackGraph& p,
                         const Classified& classification);

}  // namespace mtor

#endif  // MTOR_CORE_DOT_HPP
