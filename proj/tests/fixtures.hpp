#pragma once

#include <cqp/seed.hpp>

// Hand-entered fixtures, independent of the catalog constructors.
namespace fx {

// Unipotent A2: vertex 0 = S_1 (mutable), 1 = P_1, 2 = P_2 (frozen).
inline cqp::Seed U2() { return cqp::Seed(3, {1, 2}, {{0, -1, 1}, {1, 0, 0}, {-1, 0, 0}}, "U2"); }

inline cqp::Seed A2_mutable() { return cqp::Seed(2, {}, {{0, 1}, {-1, 0}}); }

}  // namespace fx
