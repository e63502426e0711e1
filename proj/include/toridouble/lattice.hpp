#pragma once

#include <vector>

#include "toridouble/matrix.hpp"

namespace toridouble {

struct HermiteForm {
    IntMatrix H;  // row Hermite normal form, H = U·M
    IntMatrix U;  // unimodular
};

struct SmithForm {
    IntMatrix S;  // diagonal, S(i,i) | S(i+1,i+1), nonnegative
    IntMatrix U;  // unimodular, S = U·M·V
    IntMatrix V;  // unimodular
};

HermiteForm hnf(const IntMatrix& m);
SmithForm smith(const IntMatrix& m);

// Representatives of Z^n / M Z^n, reduced into the box 0 <= v_i < H(i,i)
// of the row Hermite form H of M^T. Lexicographic order.
struct LatticeCosets {
    IntMatrix modulus;
    std::vector<IntVector> representatives;

    std::size_t size() const { return representatives.size(); }
    // canonical representative of v mod M Z^n
    IntVector reduce(const IntVector& v) const;
    // index of the representative congruent to v
    std::size_t index_of(const IntVector& v) const;

    IntMatrix hermite;  // HNF rows spanning M Z^n
};

LatticeCosets cosets(const IntMatrix& m);

// columns of u span a saturated sublattice (all Smith invariants equal 1)
bool is_saturated(const IntMatrix& u);
// integer V with u^T·V = Id; u must be saturated
IntMatrix right_inverse_of_transpose(const IntMatrix& u);
// rows form a basis of {y in Z^N : y^T u = 0}
IntMatrix annihilator(const IntMatrix& u);

}  // namespace toridouble
