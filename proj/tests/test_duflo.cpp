#include <doctest.h>

#include <duflo/actions.hpp>
#include <duflo/diagrams.hpp>
#include <duflo/duflo_map.hpp>
#include <duflo/enveloping.hpp>
#include <duflo/liealg.hpp>
#include <duflo/series.hpp>
#include <duflo/sympoly.hpp>
#include <duflo/textio.hpp>

#include <random>
#include <stdexcept>
#include <vector>

using namespace duflo;

namespace {

// (1/4)·log(sinh(x/2)/(x/2)) summed naively: the inner series from the
// factorial formula, the log as Σ (-1)^{k+1} (f-1)^k / k.  No code shared
// with the production series module beyond the coefficient container.
std::vector<Rational> naive_wheel_series(unsigned order) {
  std::vector<Rational> f(order + 1, Rational(0));
  f[0] = 1;
  for (unsigned n = 1; 2 * n <= order; ++n) {
    BigInt denom = 1;
    for (unsigned j = 2; j <= 2 * n + 1; ++j) denom *= j;  // (2n+1)!
    for (unsigned j = 0; j < n; ++j) denom *= 4;           // 4^n
    f[2 * n] = Rational(BigInt(1), denom);
  }
  std::vector<Rational> u = f;
  u[0] = 0;  // u = f - 1
  std::vector<Rational> power(order + 1, Rational(0)), result(order + 1);
  power[0] = 1;  // u^0
  for (unsigned k = 1; k <= order; ++k) {
    std::vector<Rational> next(order + 1, Rational(0));
    for (unsigned a = 0; a <= order; ++a) {
      if (power[a] == 0) continue;
      for (unsigned b = 0; a + b <= order; ++b) next[a + b] += power[a] * u[b];
    }
    power = next;  // u^k
    Rational sign = (k % 2 == 1) ? Rational(1) : Rational(-1);
    for (unsigned d = 0; d <= order; ++d) result[d] += power[d] * sign / k;
  }
  for (auto& c : result) c /= 4;
  return result;
}

SymPoly primal_poly(const StructureConstants& L, const std::string& text) {
  return parse_poly(L, Variance::Primal, text);
}

SymPoly sl2_casimir() {
  return primal_poly(preset("sl2"), "h^2 + 4*e*f");
}

SymPoly random_primal(std::mt19937_64& rng, unsigned nvars, unsigned max_deg) {
  SymPoly p = SymPoly::zero(Variance::Primal, nvars);
  std::uniform_int_distribution<unsigned> deg(0, max_deg), var(0, nvars - 1);
  std::uniform_int_distribution<int> coeff(-3, 3);
  for (int t = 0; t < 4; ++t) {
    MultiIndex m;
    unsigned d = deg(rng);
    for (unsigned i = 0; i < d; ++i) {
      unsigned x = var(rng);
      m.set_exponent(x, m.exponent(x) + 1);
    }
    p.add_term(m, Rational(coeff(rng)));
  }
  return p;
}

}  // namespace

TEST_SUITE("duflo") {

TEST_CASE("wheel coefficients are the frozen exact values") {
  WheelSeries w = wheel_coefficients(8);
  CHECK(w.order == 8);
  CHECK(w.c.size() == 4);
  CHECK(w.c.at(2) == Rational(1, 96));
  CHECK(w.c.at(4) == Rational(-1, 11520));
  CHECK(w.c.at(6) == Rational(1, 725760));
  CHECK(w.c.at(8) == Rational(-1, 38707200));
  // The value 1/752776 (a plausible-looking digit transposition) is wrong:
  // 725760 = 6! * 1008 divides out exactly, 752776 does not.
  CHECK(w.c.at(6) != Rational(1, 752776));

  WheelSeries w2 = wheel_coefficients(2);
  CHECK(w2.c.size() == 1);
  CHECK(w2.c.at(2) == Rational(1, 96));

  CHECK_THROWS_AS(wheel_coefficients(0), std::invalid_argument);
  CHECK_THROWS_AS(wheel_coefficients(5), std::invalid_argument);
}

TEST_CASE("a naive series composition reproduces every coefficient") {
  std::vector<Rational> naive = naive_wheel_series(12);
  WheelSeries w = wheel_coefficients(12);
  for (unsigned d = 0; d <= 12; ++d) {
    if (d >= 2 && d % 2 == 0) {
      CHECK(naive[d] == w.c.at(d));
    } else {
      CHECK(naive[d] == 0);  // no odd or constant terms anywhere
    }
  }
}

TEST_CASE("the quadratic operator term over sl2") {
  StructureConstants sl2 = preset("sl2");
  DufloOperator op = j_half_operator(sl2, 2);
  CHECK(op.delta(0) == SymPoly::constant(Variance::Dual, 3, Rational(1)));
  CHECK(op.delta(1).is_zero());
  CHECK(op.delta(2) ==
        parse_poly(sl2, Variance::Dual, "1/6*h*^2 + 1/6*e**f*"));
  CHECK(op.total == op.delta(0) + op.delta(2));
}

TEST_CASE("the exponential structure of the operator") {
  // δ = exp(Σ 2 c_{2n} Tr(ad^{2n})), so the degree-4 layer must equal
  // 2 c_4 Tr(ad^4) + (1/2)(2 c_2 Tr(ad^2))^2, assembled here by hand.
  for (const char* name : {"sl2", "gl2", "axb2"}) {
    StructureConstants L = preset(name);
    SymPoly t2 = trace_ad_power(L, 2), t4 = trace_ad_power(L, 4);
    WheelSeries w = wheel_coefficients(4);
    SymPoly lin2 = t2 * (w.c.at(2) * 2), lin4 = t4 * (w.c.at(4) * 2);
    DufloOperator op = j_half_operator(L, 4);
    CHECK_MESSAGE(op.delta(2) == lin2, name);
    CHECK_MESSAGE(op.delta(4) == lin4 + lin2 * lin2 * Rational(1, 2), name);
    for (unsigned r : {1u, 3u}) CHECK(op.delta(r).is_zero());
  }
}

TEST_CASE("wheel diagrams feed the operator") {
  // The trace polynomials entering δ are exactly the projected wheel
  // values: δ_2 = 2 c_2 · T(wheel(2)) as an identity of dual polynomials.
  for (const char* name : {"sl2", "axb2"}) {
    StructureConstants L = preset(name);
    DiagramInterpreter interp(L);
    SymPoly w2 = project_to_dual(L, interp.interpret(wheel(2)));
    SymPoly w4 = project_to_dual(L, interp.interpret(wheel(4)));
    WheelSeries w = wheel_coefficients(4);
    DufloOperator op = j_half_operator(L, 4);
    CHECK(op.delta(2) == w2 * (w.c.at(2) * 2));
    CHECK(op.delta(4) == w4 * (w.c.at(4) * 2) +
                             (w2 * (w.c.at(2) * 2)) * (w2 * (w.c.at(2) * 2)) *
                                 Rational(1, 2));
  }
}

TEST_CASE("the determinant route agrees with the wheel route") {
  for (const std::string& name : preset_names()) {
    StructureConstants L = preset(name);
    CHECK_MESSAGE(j_half_operator(L, 6).total == j_half_via_det(L, 6), name);
  }
  CHECK_THROWS_AS(j_half_operator(preset("sl2"), 3), std::invalid_argument);
}

TEST_CASE("nilpotent and abelian algebras have trivial operators") {
  // Every Tr(ad^k), k >= 1, vanishes there, so δ collapses to 1.
  for (const char* name : {"abelian3", "heisenberg3"}) {
    StructureConstants L = preset(name);
    DufloOperator op = j_half_operator(L, 8);
    CHECK_MESSAGE(
        op.total == SymPoly::constant(Variance::Dual, L.dim, Rational(1)),
        name);
  }
  // axb2 is solvable but not nilpotent: Tr(ad^2) = a*^2 survives.
  DufloOperator ax = j_half_operator(preset("axb2"), 2);
  CHECK(ax.delta(2) == parse_poly(preset("axb2"), Variance::Dual, "1/48*a*^2"));

  // Disabling the wheels forces δ = 1 everywhere.
  DufloOperator off = j_half_disabled(preset("sl2"), 6);
  CHECK(off.total == SymPoly::constant(Variance::Dual, 3, Rational(1)));
}

TEST_CASE("the pairing kernel over a one-dimensional algebra") {
  StructureConstants ab = preset("abelian1");
  UpsilonTruncation up = build_upsilon(ab, 2);
  CHECK(up.order == 2);
  REQUIRE(up.terms.size() == 3);  // α = (), (1), (2)

  // Σ_α (1/α!)(b*)^α ⊗ S(b^α) with δ = 1: the reproducing kernel of ⟨,⟩.
  bool saw_unit = false, saw_linear = false, saw_square = false;
  for (const UpsilonTerm& t : up.terms) {
    if (t.u == UElement::one()) {
      saw_unit = t.dual == SymPoly::constant(Variance::Dual, 1, Rational(1));
    } else if (t.u == UElement::from_word({0})) {
      saw_linear = t.dual == SymPoly::generator(Variance::Dual, 1, 0);
    } else if (t.u == UElement::from_word({0, 0})) {
      MultiIndex m;
      m.set_exponent(0, 2);
      saw_square =
          t.dual == SymPoly::monomial(Variance::Dual, 1, m, Rational(1, 2));
    }
  }
  CHECK(saw_unit);
  CHECK(saw_linear);
  CHECK(saw_square);

  // Consequently the map is symmetrization on an abelian algebra.
  SymPoly p = primal_poly(ab, "b1^2 + 3*b1");
  CHECK(duflo_pairing(ab, up, p) ==
        UElement::from_word({0, 0}) + UElement::from_word({0}, Rational(3)));
}

TEST_CASE("the two forms of the map agree on arbitrary inputs") {
  std::mt19937_64 rng(314159);
  for (const char* name : {"sl2", "heisenberg3", "axb2", "abelian2"}) {
    StructureConstants L = preset(name);
    const unsigned order = 4;
    UpsilonTruncation up = build_upsilon(L, order);
    DufloOperator op = j_half_operator(L, order);
    for (int trial = 0; trial < 12; ++trial) {
      SymPoly P = random_primal(rng, L.dim, order);
      CHECK_MESSAGE(duflo_pairing(L, up, P) == duflo_operator_form(L, op, P),
                    name);
    }
  }
}

TEST_CASE("the canonical quadratic invariant of sl2") {
  StructureConstants sl2 = preset("sl2");
  SymPoly q = sl2_casimir();
  UElement expected = UElement::one() -
                      UElement::generator(0) * Rational(2) +
                      UElement::from_word({1, 2}, Rational(4)) +
                      UElement::from_word({0, 0});
  for (unsigned order : {2u, 4u, 6u}) {
    UElement image = duflo_map(sl2, q, order);
    CHECK(image == expected);  // stable once the order covers deg P
  }
  CHECK(print_uelement(sl2, duflo_map(sl2, q, 4)) ==
        "1 - 2*h + 4*e·f + h·h");

  // The image is central: every generator's adjoint action kills it.
  for (unsigned i = 0; i < 3; ++i)
    CHECK(adjoint_action_u(sl2, i, expected).is_zero());

  // Degree guard: the truncation order must cover the input degree.
  CHECK_THROWS_AS((void)duflo_map(sl2, q * q, 2), std::invalid_argument);
}

TEST_CASE("central generators map to plain words") {
  StructureConstants h3 = preset("heisenberg3");
  for (unsigned k = 1; k <= 4; ++k) {
    MultiIndex m;
    m.set_exponent(2, k);  // z^k
    SymPoly p = SymPoly::monomial(Variance::Primal, 3, m, Rational(1));
    CHECK(duflo_map(h3, p, 4) == UElement::from_word(Word(k, 2)));
  }
}

TEST_CASE("multiplicativity on invariants") {
  StructureConstants sl2 = preset("sl2");
  UpsilonTruncation up = build_upsilon(sl2, 6);
  SymPoly q = sl2_casimir();

  CheckReport r = check_multiplicative(sl2, up, q, q);
  CHECK_MESSAGE(r.ok, r.detail);

  // The same statement by direct computation.
  PbwNormalizer norm(sl2);
  UElement dq = duflo_pairing(sl2, up, q);
  CHECK(duflo_pairing(sl2, up, q * q) == u_multiply(norm, dq, dq));

  StructureConstants h3 = preset("heisenberg3");
  UpsilonTruncation up3 = build_upsilon(h3, 6);
  SymPoly z = primal_poly(h3, "z"), z2 = primal_poly(h3, "z^2");
  CheckReport r3 = check_multiplicative(h3, up3, z, z2);
  CHECK_MESSAGE(r3.ok, r3.detail);

  // Convenience overload builds the truncation itself.
  CHECK(check_multiplicative(sl2, q, q, 6).ok);
}

TEST_CASE("invariance and the graded identity") {
  StructureConstants sl2 = preset("sl2");
  UpsilonTruncation up = build_upsilon(sl2, 6);
  SymPoly q = sl2_casimir();

  CheckReport inv = check_invariance(sl2, up, q);
  CHECK_MESSAGE(inv.ok, inv.detail);
  CheckReport grd = check_graded_identity(sl2, up, q);
  CHECK_MESSAGE(grd.ok, grd.detail);
  CHECK(symbol(sl2, duflo_pairing(sl2, up, q * q), 4) == q * q);

  // A non-invariant input has a non-central image, and the report says so.
  SymPoly h2 = primal_poly(sl2, "h^2");
  CheckReport bad = check_invariance(sl2, up, h2);
  CHECK(!bad.ok);
  CHECK(!bad.detail.empty());
}

TEST_CASE("without the wheel terms multiplicativity fails") {
  StructureConstants sl2 = preset("sl2");
  SymPoly q = sl2_casimir();
  UpsilonTruncation plain = build_upsilon(sl2, 6, /*wheels=*/false);

  PbwNormalizer norm(sl2);
  UElement dq = duflo_pairing(sl2, plain, q);
  UElement dqq = duflo_pairing(sl2, plain, q * q);
  UElement difference = dqq - u_multiply(norm, dq, dq);
  CHECK(!difference.is_zero());
  CHECK(!check_multiplicative(sl2, q, q, 6, /*wheels=*/false).ok);

  // With the wheels restored the very same computation closes exactly.
  UpsilonTruncation full = build_upsilon(sl2, 6);
  UElement fq = duflo_pairing(sl2, full, q);
  CHECK(duflo_pairing(sl2, full, q * q) == u_multiply(norm, fq, fq));
}

TEST_CASE("odd truncation orders round down") {
  StructureConstants sl2 = preset("sl2");
  SymPoly q = sl2_casimir();
  CHECK(duflo_map(sl2, q, 5) == duflo_map(sl2, q, 4));
  UpsilonTruncation up5 = build_upsilon(sl2, 5);
  CHECK(up5.order == 5);  // α-degrees up to 5, wheel layers up to 4
  CHECK(duflo_pairing(sl2, up5, q) == duflo_map(sl2, q, 4));
}

}  // TEST_SUITE
