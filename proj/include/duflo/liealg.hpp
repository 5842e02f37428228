#pragma once

// Finite-dimensional Lie algebras presented by structure constants over the
// exact rationals: [b_i, b_j] = Σ_k c_{ij}^k b_k with i < j stored and
// antisymmetry structural.  Includes Jacobi validation (a report, not an
// assertion), the preset catalog, adjoint matrices, symbolic traces of
// adjoint powers, and the semidirect double  g* ⋊ g  in which g* is abelian
// and g acts coadjointly.

#include <duflo/scalar.hpp>
#include <duflo/sympoly.hpp>

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace duflo {

// Sparse vector over basis indices: (index, coefficient), ascending, nonzero.
using SparseVec = std::vector<std::pair<unsigned, Rational>>;

struct StructureConstants {
  std::string name;
  unsigned dim = 0;
  std::vector<std::string> basis_names;
  // For a doubled algebra the first dual_count generators span g* (printed
  // with a trailing '*'); 0 means a plain algebra.  PBW order and the
  // bracket table do not special-case this beyond bookkeeping.
  unsigned dual_count = 0;
  // (i, j) with i < j  ->  nonzero coefficients of [b_i, b_j].  0-based.
  std::map<std::pair<unsigned, unsigned>, SparseVec> table;

  bool is_doubled() const { return dual_count > 0; }
  unsigned primal_dim() const { return dim - dual_count; }
  bool generator_is_dual(unsigned g) const { return g < dual_count; }

  void set_bracket(unsigned i, unsigned j, SparseVec terms);
  // [b_i, b_j] for arbitrary i, j (antisymmetry applied; empty on i == j).
  SparseVec bracket(unsigned i, unsigned j) const;
  // Bilinear extension to coordinate vectors.
  std::vector<Rational> bracket_vec(const std::vector<Rational>& x,
                                    const std::vector<Rational>& y) const;
  // Structure constant c_{ij}^k for arbitrary i, j.
  Rational c(unsigned i, unsigned j, unsigned k) const;
};

// One nonzero structure constant with both input orders materialized; the
// diagram interpreter walks this list at internal vertices.
struct BracketTriple {
  unsigned a, b, k;
  Rational coeff;  // c_{ab}^k
};
std::vector<BracketTriple> bracket_triples(const StructureConstants& L);

struct JacobiViolation {
  unsigned i, j, k;  // the triple, 0-based, i < j < k
  unsigned m;        // offending component
  Rational residual;
};

struct JacobiReport {
  bool ok = true;
  std::vector<JacobiViolation> violations;
};

// Brute-force check of Σ_l (c_{ij}^l c_{lk}^m + cyclic) = 0 over all triples;
// returns every violating (i, j, k, m) with its residual.
JacobiReport validate_jacobi(const StructureConstants& L);

// Catalog: abelian1..abelian4, sl2, gl2, heisenberg3, axb2.
std::vector<std::string> preset_names();
StructureConstants preset(const std::string& name);

// Matrix of ad_{b_i} in the given basis: column j holds [b_i, b_j].
std::vector<std::vector<Rational>> ad_matrix(const StructureConstants& L,
                                             unsigned i);

// ad_x for the generic element x = Σ x_i b_i: entries are degree-1 dual
// polynomials in the coordinates x_i.
std::vector<std::vector<SymPoly>> ad_matrix_symbolic(
    const StructureConstants& L);

// Tr(ad_x^k) as a homogeneous degree-k polynomial in S(g*), computed by
// symbolic matrix powers.
SymPoly trace_ad_power(const StructureConstants& L, unsigned k);

// Coefficients of [b_i, b_j*] = Σ_k coeff·b_k* (coadjoint action,
// [b_i, φ] = -φ∘ad_{b_i} on basis functionals, i.e. coeff_k = c_{ki}^j).
SparseVec coadjoint_row(const StructureConstants& L, unsigned i, unsigned j);

// The double: dim 2m, generators b_1*, ..., b_m*, b_1, ..., b_m with
// [g*, g*] = 0, [b_i, b_j*] coadjoint as above, [g, g] copied from L.
StructureConstants double_algebra(const StructureConstants& L);

}  // namespace duflo
