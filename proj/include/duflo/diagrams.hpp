#pragma once

// Arrow diagrams on a skeleton of capped and string strands, with internal
// two-in-one-out trivalent vertices, and their tensor interpretation T over
// the double of a Lie algebra:
//
//   * arrows are labeled by basis indices 1..m,
//   * a tail sitting on a strand slot contributes the dual generator b_ℓ*,
//     a head contributes the primal generator b_ℓ,
//   * an internal vertex with ordered inputs (a1, a2) and output a3
//     contributes the structure constant c_{ℓ(a1) ℓ(a2)}^{ℓ(a3)},
//   * each strand's slot word is multiplied in slot order and PBW-normalized
//     in U of the double; the result is a sum of word tuples.
//
// The interpreter binds vertex labels to nonzero structure-constant triples
// first (backtracking), then enumerates the remaining free arrows, so the
// cost is O(m^{free} · nnz^{V}) rather than m^{arrows}.

#include <duflo/actions.hpp>
#include <duflo/enveloping.hpp>
#include <duflo/liealg.hpp>

#include <map>
#include <random>
#include <string>
#include <vector>

namespace duflo {

enum class StrandKind { Capped, String };

struct Skeleton {
  struct Strand {
    StrandKind kind = StrandKind::Capped;
    unsigned slots = 0;  // ordered attachment points along the strand
  };
  std::vector<Strand> strands;
};

struct Endpoint {
  enum class Kind { Slot, VertexIn1, VertexIn2, VertexOut };
  Kind kind = Kind::Slot;
  unsigned strand = 0, slot = 0;  // valid when kind == Slot (0-based)
  unsigned vertex = 0;            // valid for the vertex kinds

  static Endpoint at_slot(unsigned strand, unsigned slot) {
    return {Kind::Slot, strand, slot, 0};
  }
  static Endpoint at_vertex(unsigned vertex, Kind port) {
    Endpoint e;
    e.kind = port;
    e.vertex = vertex;
    return e;
  }
  bool operator==(const Endpoint& other) const = default;
};

struct Arrow {
  Endpoint tail, head;
};

struct ArrowDiagram {
  Skeleton skeleton;
  unsigned vertices = 0;
  std::vector<Arrow> arrows;
  Rational coefficient{1};
};

// Structural invariants: every skeleton slot and every vertex port is used
// by exactly one arrow end, vertex inputs receive heads and outputs emit
// tails.  Throws std::invalid_argument with a description on violation.
void validate_diagram(const ArrowDiagram& d);

// Tails-forbidden check for diagrams meant to descend: no arrow tail may sit
// on a string strand.
void validate_tails_forbidden(const ArrowDiagram& d);

// The 2n-wheel (n >= 1 meaningful; k >= 1 accepted): one capped strand with
// k slots, k internal vertices in a directed cycle, spoke tails on the
// strand; each vertex takes the incoming cycle arrow as first input and its
// spoke as second.
ArrowDiagram wheel(unsigned k);

// Two or more wheels sharing one capped strand (disjoint union along the
// strand); spokes of the a-th wheel occupy the next block of slots.
ArrowDiagram wheels_on_strand(const std::vector<unsigned>& ks);

// One arrow from a 1-slot capped strand to a 1-slot string strand; T of it
// is Σ_i b_i* ⊗ b_i.
ArrowDiagram single_arrow();

// A sum of tensors of PBW words over the double of the base algebra, one
// word per strand (in strand order).
struct VecWordLess {
  bool operator()(const std::vector<Word>& a,
                  const std::vector<Word>& b) const {
    WordLess less;
    if (a.size() != b.size()) return a.size() < b.size();
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (less(a[i], b[i])) return true;
      if (less(b[i], a[i])) return false;
    }
    return false;
  }
};

struct TensorValue {
  unsigned factors = 0;
  std::map<std::vector<Word>, Rational, VecWordLess> terms;

  bool is_zero() const { return terms.empty(); }
  void add_term(const std::vector<Word>& key, const Rational& c);
  TensorValue& operator+=(const TensorValue& other);
  TensorValue& operator-=(const TensorValue& other);
  TensorValue& operator*=(const Rational& c);
  bool operator==(const TensorValue& other) const {
    return factors == other.factors && terms == other.terms;
  }
};

class DiagramInterpreter {
 public:
  explicit DiagramInterpreter(const StructureConstants& L);

  const StructureConstants& base() const { return base_; }
  const StructureConstants& doubled() const { return doubled_; }

  TensorValue interpret(const ArrowDiagram& d);

 private:
  StructureConstants base_, doubled_;
  PbwNormalizer norm_;
  std::vector<BracketTriple> triples_;
};

// Convenience wrapper (fresh interpreter per call).
TensorValue tensor_interpret(const StructureConstants& L,
                             const ArrowDiagram& d);

// For single-strand values whose words use only dual generators: reads the
// value as an element of S(g*).  Errors on multiple factors or primal
// letters.
SymPoly project_to_dual(const StructureConstants& L, const TensorValue& v);

// Descent to (S(g*)_g)^{⊗ capped} ⊗ U(g)^{⊗ string}: capped factors must be
// purely dual after normalization (a surviving primal generator at a cap is
// an error), then are reduced modulo the coadjoint image; string factors
// must be purely primal and stay as U(g) words over the base algebra.
struct DescendedValue {
  std::vector<unsigned> capped_strands, string_strands;
  // (capped monomials, string words) -> coefficient.
  std::map<std::pair<std::vector<MultiIndex>, std::vector<Word>>, Rational,
           bool (*)(const std::pair<std::vector<MultiIndex>, std::vector<Word>>&,
                    const std::pair<std::vector<MultiIndex>, std::vector<Word>>&)>
      terms;

  DescendedValue();
  bool is_zero() const { return terms.empty(); }
  void add_term(const std::vector<MultiIndex>& caps,
                const std::vector<Word>& strings, const Rational& c);
  bool operator==(const DescendedValue& other) const {
    return capped_strands == other.capped_strands &&
           string_strands == other.string_strands && terms == other.terms;
  }
};

DescendedValue descend(const StructureConstants& L, const Skeleton& skeleton,
                       const TensorValue& v);

// --- relation sites -------------------------------------------------------
//
// A site is a local configuration (vertex plus neighborhood, embedded among
// random spectator arrows) whose signed resolution must interpret to zero
// for every Lie algebra:
//   STU1: vertex output head on a strand vs the two ordered head resolutions,
//   STU2: vertex with a tail-on-cap first input vs head/tail resolutions,
//   STU3: two adjacent tails on a strand commute,
//   AS:   swapping the two vertex inputs negates the value,
//   IHX:  the Jacobi identity for two chained vertices,
//   4T:   the four-term relation on three strands.

enum class Relation { STU1, STU2, STU3, AS, IHX, FourT };

std::string relation_name(Relation r);

struct SignedDiagram {
  Rational sign{1};
  ArrowDiagram diagram;
};

struct RelationSite {
  Relation relation = Relation::STU1;
  std::vector<SignedDiagram> terms;
  std::string description;
};

// Deterministic smallest site for each relation (no spectators).
RelationSite minimal_relation_site(Relation r);

// Randomized site: 1..3 capped strands (3 for 4T), up to max_spectators
// spectator arrows in random positions.
RelationSite random_relation_site(Relation r, std::mt19937_64& rng,
                                  unsigned max_spectators = 4);

// Σ sign · T(diagram); zero iff the relation holds at the site.
TensorValue relation_residual(DiagramInterpreter& interp,
                              const RelationSite& site);
TensorValue relation_residual(const StructureConstants& L,
                              const RelationSite& site);

}  // namespace duflo
