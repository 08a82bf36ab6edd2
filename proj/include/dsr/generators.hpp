#pragma once

#include <random>

#include "dsr/cnf.hpp"
#include "dsr/geometry.hpp"

namespace dsr {

// Deterministic engine: the same seed reproduces every generated instance.
std::mt19937_64 seeded_rng(unsigned long long seed);

// Uniform value in [0, n) by rejection, independent of library distributions.
long long rand_below(std::mt19937_64& rng, long long n);

// Cycle-like arc family: n arcs on circumference 2n, arc i covering
// [2i, 2i+3]. Its intersection graph is the cycle on n vertices.
CircularArcModel ring_model(int n);

// Connected arc family with distinct endpoints on circumference 4n. Density
// scales the typical span; density >= 0.999 additionally turns arc 0 into a
// full circle. Throws resource_limit_error when no connected family shows up
// within `attempts` tries.
CircularArcModel gen_random_carc(std::mt19937_64& rng, int n, double density = 0.35,
                                 int attempts = 1000);

// Arc family covering the whole circle: a scaled ring of `ring` arcs
// [6i, 6i+9] on circumference 6*ring plus `extra` random arcs placed on the
// remaining free integer points.
CircularArcModel gen_covered_carc(std::mt19937_64& rng, int ring, int extra);

// Connected interval family with 2n distinct endpoints on [0, 4n).
IntervalModel gen_random_intervals(std::mt19937_64& rng, int n, int attempts = 1000);

// Formula over `variables` variables with `clauses` clauses of 1..3 distinct
// literals, every clause satisfied by a hidden assignment, and every variable
// used. When `target` is non-null, it receives the hidden assignment.
CnfFormula gen_random_formula(std::mt19937_64& rng, int variables, int clauses,
                              Assignment* target = nullptr);

} // namespace dsr
