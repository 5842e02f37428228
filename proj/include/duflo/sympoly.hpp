#pragma once

// Symmetric-algebra elements over an exact rational field: S(g) (primal
// variance) and S(g*) (dual variance), stored as sparse multi-index -> scalar
// maps under the graded lexicographic order.  The dual/primal pairing, the
// coproduct and the action of S(g*) by constant-coefficient differential
// operators all live here; anything that needs structure constants is in
// actions.hpp.

#include <duflo/scalar.hpp>

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace duflo {

// Exponent map, nonzero entries only (variable index -> exponent).
struct MultiIndex {
  std::map<unsigned, unsigned> e;

  unsigned degree() const;
  unsigned exponent(unsigned var) const;
  void set_exponent(unsigned var, unsigned exp);
  MultiIndex times(const MultiIndex& other) const;
  // Π α_i!  (the pairing normalization factor).
  Rational factorial_product() const;
  // Expands to an explicit list of variable indices, repeats included,
  // ascending; e.g. {0:2, 2:1} -> [0, 0, 2].
  std::vector<unsigned> letters() const;

  bool operator==(const MultiIndex& other) const { return e == other.e; }
};

// Graded lexicographic strict order: lower total degree first, then within a
// degree the monomial with the smaller exponent at the first differing
// variable comes first (so iteration within a degree ascends in lex).
struct GrlexLess {
  bool operator()(const MultiIndex& a, const MultiIndex& b) const;
};

enum class Variance { Primal, Dual };

struct SymPoly {
  Variance variance = Variance::Primal;
  unsigned nvars = 0;
  std::map<MultiIndex, Rational, GrlexLess> terms;

  static SymPoly zero(Variance v, unsigned nvars);
  static SymPoly constant(Variance v, unsigned nvars, const Rational& c);
  static SymPoly generator(Variance v, unsigned nvars, unsigned var);
  static SymPoly monomial(Variance v, unsigned nvars, const MultiIndex& mi,
                          const Rational& c);

  bool is_zero() const { return terms.empty(); }
  // Maximum term degree (0 for the zero polynomial).
  unsigned degree() const;
  bool is_homogeneous(unsigned d) const;
  Rational coefficient(const MultiIndex& mi) const;
  void add_term(const MultiIndex& mi, const Rational& c);
  SymPoly homogeneous_part(unsigned d) const;

  SymPoly& operator+=(const SymPoly& other);
  SymPoly& operator-=(const SymPoly& other);
  SymPoly operator+(const SymPoly& other) const;
  SymPoly operator-(const SymPoly& other) const;
  SymPoly operator*(const SymPoly& other) const;
  SymPoly& operator*=(const Rational& c);
  SymPoly operator*(const Rational& c) const;
  bool operator==(const SymPoly& other) const;
};

// Product with every term above max_degree discarded (for truncated series
// work in several variables).
SymPoly mul_truncated(const SymPoly& a, const SymPoly& b, unsigned max_degree);

// ⟨·,·⟩ : S(g*) × S(g) -> k on monomials of equal multi-index: Π α_i!,
// zero otherwise (duals of distinct monomials are orthogonal).
Rational pair_poly(const SymPoly& dual, const SymPoly& primal);

// Same pairing evaluated by its permutation-sum definition
// ⟨φ_1···φ_d, x_1···x_d⟩ = Σ_{σ∈S_d} Π φ_i(x_{σ(i)}).  Exponential cost in
// the degree; kept as the independent cross-check for pair_poly.
Rational pair_poly_permutation(const SymPoly& dual, const SymPoly& primal);

// Componentwise pairing of pure tensors: Π_i ⟨duals[i], primals[i]⟩.
Rational pair_tensor(const std::vector<SymPoly>& duals,
                     const std::vector<SymPoly>& primals);

// Δ(p) as a merged formal sum of monomial pairs; the scalar of each pair is
// folded into the left factor.  Δ is the unique algebra map with
// Δ(x) = x⊗1 + 1⊗x on generators, i.e. binomial splits on monomials.
std::vector<std::pair<SymPoly, SymPoly>> coproduct(const SymPoly& p);

// delta ∈ S(g*) acting on S(g) with b_i* ↦ ∂/∂b_i, extended multiplicatively.
SymPoly apply_diff_operator(const SymPoly& delta, const SymPoly& p);

// --- exact dense linear algebra (row reduction over the rationals) ---

struct Matrix {
  std::size_t rows = 0, cols = 0;
  std::vector<Rational> a;  // row-major

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}
  Rational& at(std::size_t r, std::size_t c) { return a[r * cols + c]; }
  const Rational& at(std::size_t r, std::size_t c) const {
    return a[r * cols + c];
  }
};

// In-place reduced row echelon form; returns the pivot columns in order.
std::vector<std::size_t> rref_in_place(Matrix& m);

// Canonical kernel basis: solve m·v = 0, one vector per free column, then
// row-reduce the resulting basis so the output is in reduced echelon form
// with leading coefficient 1.
std::vector<std::vector<Rational>> kernel_basis(Matrix m);

// All multi-indices of total degree d over nvars variables, in the grlex
// order (the canonical enumeration used for matrix columns).
std::vector<MultiIndex> monomials_of_degree(unsigned nvars, unsigned d);

}  // namespace duflo
