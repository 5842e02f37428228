#include <duflo/actions.hpp>

#include <stdexcept>

namespace duflo {

SymPoly adjoint_action_sym(const StructureConstants& L, unsigned i,
                           const SymPoly& p) {
  if (i >= L.dim) throw std::invalid_argument("action index out of range");
  if (p.nvars != L.dim)
    throw std::invalid_argument("polynomial not over this algebra's basis");
  SymPoly out = SymPoly::zero(p.variance, p.nvars);
  for (const auto& [mi, coeff] : p.terms) {
    for (const auto& [var, exp] : mi.e) {
      // Leibniz: replace one factor b_var by its image under the action.
      SparseVec image = p.variance == Variance::Primal
                            ? L.bracket(i, var)
                            : coadjoint_row(L, i, var);
      if (image.empty()) continue;
      MultiIndex rest = mi;
      rest.set_exponent(var, exp - 1);
      for (const auto& [k, c] : image) {
        MultiIndex target = rest;
        target.set_exponent(k, target.exponent(k) + 1);
        out.add_term(target, coeff * Rational(exp) * c);
      }
    }
  }
  return out;
}

bool is_invariant(const StructureConstants& L, const SymPoly& p) {
  for (unsigned i = 0; i < L.dim; ++i)
    if (!adjoint_action_sym(L, i, p).is_zero()) return false;
  return true;
}

// Stacked action matrix: rows indexed by (generator i, target monomial),
// columns by source monomials of the degree; entry = coefficient of the
// target monomial in b_i · (source monomial).
static Matrix action_matrix(const StructureConstants& L, Variance v,
                            unsigned degree,
                            const std::vector<MultiIndex>& monomials) {
  std::map<MultiIndex, std::size_t, GrlexLess> col_of;
  for (std::size_t c = 0; c < monomials.size(); ++c)
    col_of.emplace(monomials[c], c);
  Matrix m(static_cast<std::size_t>(L.dim) * monomials.size(),
           monomials.size());
  for (unsigned i = 0; i < L.dim; ++i) {
    for (std::size_t src = 0; src < monomials.size(); ++src) {
      SymPoly image = adjoint_action_sym(
          L, i, SymPoly::monomial(v, L.dim, monomials[src], Rational(1)));
      for (const auto& [mi, c] : image.terms)
        m.at(i * monomials.size() + col_of.at(mi), src) = c;
    }
  }
  (void)degree;
  return m;
}

std::vector<SymPoly> invariants_basis(const StructureConstants& L, Variance v,
                                      unsigned degree) {
  std::vector<MultiIndex> monomials = monomials_of_degree(L.dim, degree);
  Matrix m = action_matrix(L, v, degree, monomials);
  std::vector<SymPoly> out;
  for (const auto& vec : kernel_basis(std::move(m))) {
    SymPoly p = SymPoly::zero(v, L.dim);
    for (std::size_t c = 0; c < monomials.size(); ++c)
      p.add_term(monomials[c], vec[c]);
    out.push_back(std::move(p));
  }
  return out;
}

SymPoly CoinvariantsReducer::reduce(const SymPoly& p) const {
  if (p.variance != Variance::Dual)
    throw std::invalid_argument("coinvariant reduction acts on S(g*)");
  if (p.nvars != nvars)
    throw std::invalid_argument("polynomial not over this algebra's basis");
  if (!p.is_zero() && !p.is_homogeneous(degree))
    throw std::invalid_argument("coinvariant reduction needs the fixed degree");
  std::map<MultiIndex, std::size_t, GrlexLess> col_of;
  for (std::size_t c = 0; c < monomials.size(); ++c)
    col_of.emplace(monomials[c], c);
  std::vector<Rational> vec(monomials.size(), Rational(0));
  for (const auto& [mi, c] : p.terms) vec[col_of.at(mi)] = c;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    Rational f = vec[pivots[r]];
    if (f == 0) continue;
    for (std::size_t c = 0; c < vec.size(); ++c) vec[c] -= f * rows[r][c];
  }
  SymPoly out = SymPoly::zero(Variance::Dual, nvars);
  for (std::size_t c = 0; c < vec.size(); ++c)
    out.add_term(monomials[c], vec[c]);
  return out;
}

CoinvariantsReducer coinvariants_reducer(const StructureConstants& L,
                                         unsigned degree) {
  CoinvariantsReducer red;
  red.nvars = L.dim;
  red.degree = degree;
  red.monomials = monomials_of_degree(L.dim, degree);
  std::map<MultiIndex, std::size_t, GrlexLess> col_of;
  for (std::size_t c = 0; c < red.monomials.size(); ++c)
    col_of.emplace(red.monomials[c], c);
  // One row per (generator, source monomial): the image vector
  // b_i · mon_src written over the degree-d monomial columns.  Its RREF is
  // the canonical reduction basis for the quotient.
  Matrix image(static_cast<std::size_t>(L.dim) * red.monomials.size(),
               red.monomials.size());
  for (unsigned i = 0; i < L.dim; ++i) {
    for (std::size_t src = 0; src < red.monomials.size(); ++src) {
      SymPoly img = adjoint_action_sym(
          L, i,
          SymPoly::monomial(Variance::Dual, L.dim, red.monomials[src],
                            Rational(1)));
      for (const auto& [mi, c] : img.terms)
        image.at(i * red.monomials.size() + src, col_of.at(mi)) = c;
    }
  }
  std::vector<std::size_t> pivots = rref_in_place(image);
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    std::vector<Rational> row(red.monomials.size());
    for (std::size_t c = 0; c < red.monomials.size(); ++c)
      row[c] = image.at(r, c);
    red.rows.push_back(std::move(row));
  }
  red.pivots = std::move(pivots);
  return red;
}

}  // namespace duflo
