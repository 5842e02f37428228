#pragma once

// U(g) (and U of the double) with the PBW normal form: words are sequences
// of generator indices, a word is normal when its indices are nondecreasing
// (for the double this automatically puts all dual generators before all
// primal ones), and normalization rewrites b_j b_i -> b_i b_j + [b_j, b_i]
// at an inversion.  The number of inversions drops at the swap and the word
// shortens at the bracket, so rewriting terminates; confluence is a tested
// property, not an assumption.

#include <duflo/liealg.hpp>
#include <duflo/scalar.hpp>
#include <duflo/sympoly.hpp>

#include <map>
#include <vector>

namespace duflo {

// A product of generators by 0-based index; empty = the unit.
using Word = std::vector<unsigned>;

// (length, lexicographic) order — the canonical term order for U elements.
struct WordLess {
  bool operator()(const Word& a, const Word& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

bool is_pbw_ordered(const Word& w);

struct UElement {
  std::map<Word, Rational, WordLess> terms;

  static UElement zero() { return {}; }
  static UElement one();
  static UElement generator(unsigned i);
  static UElement from_word(const Word& w, const Rational& c = Rational(1));

  bool is_zero() const { return terms.empty(); }
  // Maximum word length (the PBW filtration degree); 0 for 0 and scalars.
  unsigned filtration_degree() const;
  Rational coefficient(const Word& w) const;
  void add_term(const Word& w, const Rational& c);

  UElement& operator+=(const UElement& other);
  UElement& operator-=(const UElement& other);
  UElement operator+(const UElement& other) const;
  UElement operator-(const UElement& other) const;
  UElement& operator*=(const Rational& c);
  UElement operator*(const Rational& c) const;
  bool operator==(const UElement& other) const { return terms == other.terms; }
};

// Rewrites to PBW normal form, resolving the leftmost inversion first and
// memoizing normal forms of subwords across calls.  The memo is evicted
// wholesale once it holds more than a fixed number of terms, so long-running
// sessions stay within a bounded footprint.  One instance per algebra; not
// shared across threads (each worker owns its own).
class PbwNormalizer {
 public:
  explicit PbwNormalizer(const StructureConstants& L) : L_(&L) {}
  const StructureConstants& algebra() const { return *L_; }

  UElement normalize_word(const Word& w);
  UElement normalize(const UElement& x);

 private:
  UElement normalize_word_impl(const Word& w);

  static constexpr std::size_t kCacheTermBudget = 1'500'000;
  const StructureConstants* L_;
  std::map<Word, UElement, WordLess> cache_;
  std::size_t cached_terms_ = 0;
};

// One-shot helpers (fresh normalizer per call).
UElement pbw_normalize(const StructureConstants& L, const UElement& x);
// Same rewriting system resolved rightmost-inversion-first; used as the
// confluence cross-check against the leftmost strategy.
UElement pbw_normalize_rightmost(const StructureConstants& L,
                                 const UElement& x);

UElement u_multiply(PbwNormalizer& norm, const UElement& a, const UElement& b);
UElement u_multiply(const StructureConstants& L, const UElement& a,
                    const UElement& b);

// PBW symmetrization S: b^α ↦ (1/|α|!) Σ_{σ} b_{σ(1)}···b_{σ(|α|)},
// extended linearly from monomials of S(g).
UElement symmetrize(PbwNormalizer& norm, const SymPoly& p);
UElement symmetrize(const StructureConstants& L, const SymPoly& p);

// ad_{b_i}(x) = b_i x - x b_i, normalized.
UElement adjoint_action_u(const StructureConstants& L, unsigned i,
                          const UElement& x);

// Leading symbol in the PBW filtration: words of length exactly d become
// monomials of S, shorter words are dropped, longer words are an error.
SymPoly symbol(const StructureConstants& L, const UElement& x, unsigned d);

}  // namespace duflo
