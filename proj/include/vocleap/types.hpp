#pragma once

#include <cstdint>
#include <map>
#include <string>

namespace vocleap {

/// Dense vocabulary term identifier (0..n-1, assigned at interning time).
using TermId = std::uint32_t;

/// Sparse raw-occurrence vector. Absent terms are not stored; every stored
/// count is >= 1. Ordered by term id so iteration order is deterministic.
using TermCounts = std::map<TermId, int>;

/// Sparse real-valued term vector (context weights, score accumulators).
using TermWeights = std::map<TermId, double>;

}  // namespace vocleap
