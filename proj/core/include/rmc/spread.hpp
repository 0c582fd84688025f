#pragma once

#include <string>

#include "rmc/code.hpp"

namespace rmc {

// A t-spread of F_q^N: t-dim subspaces, pairwise trivial intersection,
// covering the space (equivalently, exactly (q^N-1)/(q^t-1) of them).
struct Spread {
    FieldPtr field;
    std::size_t N = 0;
    std::size_t t = 0;
    std::vector<Subspace> elements;
};

struct SpreadDiagnostics {
    bool valid = false;
    std::string violation;  // failed axiom: divisibility | equidimensionality |
                            // pairwise intersection | count; empty when valid
};
SpreadDiagnostics verify_spread(const Spread& S);

// The t-spread of F_q^{tl} induced by the 1-dim F_{q^t}-subspaces of
// F_{q^t}^l, elements in projective-representative order.
Spread desarguesian_spread(unsigned l, unsigned t, u64 q);

// Hyperplane-intersection extraction from an antipodal two-weight [n, 2]
// code.  Elements live in F_q^n in generator-column coordinates, in covector
// enumeration order; a hyperplane meeting the q-system in any dimension other
// than {0, n-d} reveals a non-antipodal input.
Spread spread_from_atw(const RankCode& C, u64 budget = kDefaultBudget);

// N/t pairwise-complementary elements summing to the ambient space, greedily
// picked in element order.
std::vector<Subspace> direct_sum_split(const Spread& S);

struct SubspreadReport {
    bool is_subspread = false;
    long long t_prime = -1;  // common nonzero intersection dimension; -1 if mixed/none
    std::size_t count = 0;   // nonzero intersections
};
// Nonzero intersections {S_i n W}; a subspread of W iff they are
// equidimensional and exactly (q^{dim W}-1)/(q^{t'}-1) many.
std::pair<std::vector<Subspace>, SubspreadReport> project_spread(const Spread& S,
                                                                 const Subspace& W);

// Both sides of the spread/antipodality equivalence, computed independently:
// (i) the weight distribution is antipodal two-weight; (ii) the hyperplane
// spread of sup^2 projects onto the expanded q-system as an (n-d)-subspread.
struct SpreadCorrespondence {
    bool atw = false;
    bool subspread = false;
    bool agree = false;
};
SpreadCorrespondence verify_spread_correspondence(const RankCode& C,
                                                  u64 budget = kDefaultBudget);

// Field-linearity certificate: every element is closed under the scalar
// action v -> T v.  Closure under a multiplicative generator of the subfield
// certifies the spread is Desarguesian.
bool is_fieldlinear_spread(const Spread& S, const Mat& T);

// Scalar action of a multiplicative generator of the embedded F_{q^t} on the
// q-system of C, written in generator-column coordinates (n x n over F_q).
// Requires the q-system to be closed under that subfield.
Mat qsystem_scalar_action(const RankCode& C, unsigned t);

// Scalar action of a multiplicative generator of F_{q^t} on F_q^{tl}
// identified blockwise with F_{q^t}^l.
Mat desarguesian_scalar_action(unsigned l, unsigned t, u64 q);

}  // namespace rmc
