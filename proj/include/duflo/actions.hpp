#pragma once

// The g-action on S(g) (adjoint, extended as a derivation) and on S(g*)
// (coadjoint), with the two linear-algebra consequences this library needs:
// invariant subspaces computed as exact kernels and the coinvariant quotient
// computed as a canonical reduction against the span of the action's image.

#include <duflo/liealg.hpp>
#include <duflo/sympoly.hpp>

#include <vector>

namespace duflo {

// b_i acting on p as a derivation: on primal generators b_j ↦ [b_i, b_j],
// on dual generators b_j* ↦ Σ_k c_{ki}^j b_k*.
SymPoly adjoint_action_sym(const StructureConstants& L, unsigned i,
                           const SymPoly& p);

// True iff adjoint_action_sym(L, i, p) vanishes for every generator b_i.
bool is_invariant(const StructureConstants& L, const SymPoly& p);

// Basis of the degree-d invariants of the chosen variance, canonicalized to
// reduced row-echelon form (leading coefficient 1) over the graded-lex
// monomial enumeration.
std::vector<SymPoly> invariants_basis(const StructureConstants& L, Variance v,
                                      unsigned degree);

// Canonical linear reduction of S(g*)_d modulo the span of the coadjoint
// image g·S(g*)_{d}: representatives have no support on the image's pivot
// monomials.  Linear and idempotent by construction.
struct CoinvariantsReducer {
  unsigned nvars = 0;
  unsigned degree = 0;
  std::vector<MultiIndex> monomials;         // grlex enumeration = columns
  std::vector<std::vector<Rational>> rows;   // RREF rows spanning the image
  std::vector<std::size_t> pivots;           // pivot column of each row

  SymPoly reduce(const SymPoly& p) const;
};

CoinvariantsReducer coinvariants_reducer(const StructureConstants& L,
                                         unsigned degree);

}  // namespace duflo
