#include <duflo/enveloping.hpp>

#include <algorithm>
#include <stdexcept>

namespace duflo {

bool is_pbw_ordered(const Word& w) {
  return std::is_sorted(w.begin(), w.end());
}

UElement UElement::one() { return from_word({}); }

UElement UElement::generator(unsigned i) { return from_word({i}); }

UElement UElement::from_word(const Word& w, const Rational& c) {
  UElement x;
  if (c != 0) x.terms.emplace(w, c);
  return x;
}

unsigned UElement::filtration_degree() const {
  unsigned d = 0;
  for (const auto& [w, c] : terms) d = std::max(d, unsigned(w.size()));
  return d;
}

Rational UElement::coefficient(const Word& w) const {
  auto it = terms.find(w);
  return it == terms.end() ? Rational(0) : it->second;
}

void UElement::add_term(const Word& w, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms.emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms.erase(it);
  }
}

UElement& UElement::operator+=(const UElement& other) {
  for (const auto& [w, c] : other.terms) add_term(w, c);
  return *this;
}

UElement& UElement::operator-=(const UElement& other) {
  for (const auto& [w, c] : other.terms) add_term(w, -c);
  return *this;
}

UElement UElement::operator+(const UElement& other) const {
  UElement out = *this;
  out += other;
  return out;
}

UElement UElement::operator-(const UElement& other) const {
  UElement out = *this;
  out -= other;
  return out;
}

UElement& UElement::operator*=(const Rational& c) {
  if (c == 0) {
    terms.clear();
    return *this;
  }
  for (auto& [w, coeff] : terms) coeff *= c;
  return *this;
}

UElement UElement::operator*(const Rational& c) const {
  UElement out = *this;
  out *= c;
  return out;
}

UElement PbwNormalizer::normalize_word(const Word& w) {
  if (cached_terms_ > kCacheTermBudget) {
    cache_.clear();
    cached_terms_ = 0;
  }
  return normalize_word_impl(w);
}

UElement PbwNormalizer::normalize_word_impl(const Word& w) {
  if (is_pbw_ordered(w)) return UElement::from_word(w);
  auto hit = cache_.find(w);
  if (hit != cache_.end()) return hit->second;
  // Leftmost inversion.
  std::size_t i = 0;
  while (w[i] <= w[i + 1]) ++i;
  // b_j b_i = b_i b_j + [b_j, b_i]  at positions (i, i+1).
  Word swapped = w;
  std::swap(swapped[i], swapped[i + 1]);
  UElement result = normalize_word_impl(swapped);
  Word shorter = w;
  shorter.erase(shorter.begin() + static_cast<std::ptrdiff_t>(i));
  for (const auto& [k, c] : L_->bracket(w[i], w[i + 1])) {
    shorter[i] = k;
    UElement sub = normalize_word_impl(shorter);
    sub *= c;
    result += sub;
  }
  cached_terms_ += result.terms.size();
  cache_.emplace(w, result);
  return result;
}

UElement PbwNormalizer::normalize(const UElement& x) {
  UElement out;
  for (const auto& [w, c] : x.terms) {
    UElement n = normalize_word(w);
    n *= c;
    out += n;
  }
  return out;
}

UElement pbw_normalize(const StructureConstants& L, const UElement& x) {
  PbwNormalizer norm(L);
  return norm.normalize(x);
}

// Rightmost-first rewriting; deliberately cache-free and structurally
// separate from PbwNormalizer so the confluence test compares two honest
// implementations.
static UElement normalize_rightmost_word(const StructureConstants& L,
                                         const Word& w) {
  std::size_t n = w.size();
  std::size_t i = n;
  for (std::size_t t = 0; t + 1 < n; ++t)
    if (w[t] > w[t + 1]) i = t;
  if (i == n) return UElement::from_word(w);
  Word swapped = w;
  std::swap(swapped[i], swapped[i + 1]);
  UElement result = normalize_rightmost_word(L, swapped);
  Word shorter = w;
  shorter.erase(shorter.begin() + static_cast<std::ptrdiff_t>(i));
  for (const auto& [k, c] : L.bracket(w[i], w[i + 1])) {
    shorter[i] = k;
    UElement sub = normalize_rightmost_word(L, shorter);
    sub *= c;
    result += sub;
  }
  return result;
}

UElement pbw_normalize_rightmost(const StructureConstants& L,
                                 const UElement& x) {
  UElement out;
  for (const auto& [w, c] : x.terms) {
    UElement n = normalize_rightmost_word(L, w);
    n *= c;
    out += n;
  }
  return out;
}

UElement u_multiply(PbwNormalizer& norm, const UElement& a, const UElement& b) {
  UElement out;
  for (const auto& [wa, ca] : a.terms) {
    for (const auto& [wb, cb] : b.terms) {
      Word w = wa;
      w.insert(w.end(), wb.begin(), wb.end());
      UElement n = norm.normalize_word(w);
      n *= ca * cb;
      out += n;
    }
  }
  return out;
}

UElement u_multiply(const StructureConstants& L, const UElement& a,
                    const UElement& b) {
  PbwNormalizer norm(L);
  return u_multiply(norm, a, b);
}

UElement symmetrize(PbwNormalizer& norm, const SymPoly& p) {
  if (p.variance != Variance::Primal)
    throw std::invalid_argument("symmetrize takes elements of S(g)");
  if (p.nvars != norm.algebra().dim)
    throw std::invalid_argument("polynomial not over this algebra's basis");
  UElement out;
  for (const auto& [mi, c] : p.terms) {
    std::vector<unsigned> letters = mi.letters();
    unsigned d = static_cast<unsigned>(letters.size());
    // Σ over distinct arrangements, each standing for Π α_i! equal summands
    // of the full permutation sum, so the weight is c·α!/d!.
    Rational weight = c * mi.factorial_product() / factorial(d);
    std::sort(letters.begin(), letters.end());
    do {
      UElement n = norm.normalize_word(letters);
      n *= weight;
      out += n;
    } while (std::next_permutation(letters.begin(), letters.end()));
  }
  return out;
}

UElement symmetrize(const StructureConstants& L, const SymPoly& p) {
  PbwNormalizer norm(L);
  return symmetrize(norm, p);
}

UElement adjoint_action_u(const StructureConstants& L, unsigned i,
                          const UElement& x) {
  if (i >= L.dim) throw std::invalid_argument("action index out of range");
  UElement g = UElement::generator(i);
  PbwNormalizer norm(L);
  return u_multiply(norm, g, x) - u_multiply(norm, x, g);
}

SymPoly symbol(const StructureConstants& L, const UElement& x, unsigned d) {
  SymPoly out = SymPoly::zero(Variance::Primal, L.dim);
  for (const auto& [w, c] : x.terms) {
    if (w.size() > d)
      throw std::invalid_argument(
          "symbol: element exceeds the stated filtration degree");
    if (w.size() < d) continue;
    MultiIndex mi;
    for (unsigned g : w) mi.set_exponent(g, mi.exponent(g) + 1);
    out.add_term(mi, c);
  }
  return out;
}

}  // namespace duflo
