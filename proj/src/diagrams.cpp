#include <duflo/diagrams.hpp>

#include <algorithm>
#include <functional>
#include <optional>
#include <set>
#include <stdexcept>

namespace duflo {

void validate_diagram(const ArrowDiagram& d) {
  // Slot occupancy: exactly one arrow end per skeleton slot.
  std::vector<std::vector<unsigned>> seen(d.skeleton.strands.size());
  for (std::size_t s = 0; s < d.skeleton.strands.size(); ++s)
    seen[s].assign(d.skeleton.strands[s].slots, 0);
  // Vertex occupancy: heads at in1/in2, tails at out, once each.
  std::vector<unsigned> in1(d.vertices, 0), in2(d.vertices, 0),
      out(d.vertices, 0);
  auto visit = [&](const Endpoint& e, bool is_tail) {
    switch (e.kind) {
      case Endpoint::Kind::Slot:
        if (e.strand >= d.skeleton.strands.size() ||
            e.slot >= d.skeleton.strands[e.strand].slots)
          throw std::invalid_argument("arrow endpoint off the skeleton");
        ++seen[e.strand][e.slot];
        break;
      case Endpoint::Kind::VertexIn1:
      case Endpoint::Kind::VertexIn2:
        if (e.vertex >= d.vertices)
          throw std::invalid_argument("arrow endpoint at missing vertex");
        if (is_tail)
          throw std::invalid_argument("vertex input must receive an arrow head");
        ++(e.kind == Endpoint::Kind::VertexIn1 ? in1 : in2)[e.vertex];
        break;
      case Endpoint::Kind::VertexOut:
        if (e.vertex >= d.vertices)
          throw std::invalid_argument("arrow endpoint at missing vertex");
        if (!is_tail)
          throw std::invalid_argument("vertex output must emit an arrow tail");
        ++out[e.vertex];
        break;
    }
  };
  for (const Arrow& a : d.arrows) {
    visit(a.tail, true);
    visit(a.head, false);
  }
  for (std::size_t s = 0; s < seen.size(); ++s)
    for (std::size_t p = 0; p < seen[s].size(); ++p)
      if (seen[s][p] != 1)
        throw std::invalid_argument(
            "skeleton slot " + std::to_string(s + 1) + "." +
            std::to_string(p + 1) + " used " + std::to_string(seen[s][p]) +
            " times");
  for (unsigned v = 0; v < d.vertices; ++v)
    if (in1[v] != 1 || in2[v] != 1 || out[v] != 1)
      throw std::invalid_argument("vertex " + std::to_string(v + 1) +
                                  " is not two-in-one-out");
}

void validate_tails_forbidden(const ArrowDiagram& d) {
  for (const Arrow& a : d.arrows)
    if (a.tail.kind == Endpoint::Kind::Slot &&
        d.skeleton.strands[a.tail.strand].kind == StrandKind::String)
      throw std::invalid_argument("tail on a string strand (tails forbidden)");
}

ArrowDiagram wheel(unsigned k) { return wheels_on_strand({k}); }

ArrowDiagram wheels_on_strand(const std::vector<unsigned>& ks) {
  ArrowDiagram d;
  unsigned total = 0;
  for (unsigned k : ks) {
    if (k == 0) throw std::invalid_argument("wheel needs at least one spoke");
    total += k;
  }
  d.skeleton.strands.push_back({StrandKind::Capped, total});
  unsigned base = 0;
  for (unsigned k : ks) {
    // Vertices base..base+k-1 in a directed cycle; the incoming cycle arrow
    // is each vertex's first input, its spoke the second.
    for (unsigned a = 0; a < k; ++a) {
      d.arrows.push_back(
          {Endpoint::at_vertex(base + a, Endpoint::Kind::VertexOut),
           Endpoint::at_vertex(base + (a + 1) % k, Endpoint::Kind::VertexIn1)});
      d.arrows.push_back(
          {Endpoint::at_slot(0, base + a),
           Endpoint::at_vertex(base + a, Endpoint::Kind::VertexIn2)});
    }
    base += k;
  }
  d.vertices = base;
  return d;
}

ArrowDiagram single_arrow() {
  ArrowDiagram d;
  d.skeleton.strands.push_back({StrandKind::Capped, 1});
  d.skeleton.strands.push_back({StrandKind::String, 1});
  d.arrows.push_back({Endpoint::at_slot(0, 0), Endpoint::at_slot(1, 0)});
  return d;
}

void TensorValue::add_term(const std::vector<Word>& key, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms.emplace(key, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms.erase(it);
  }
}

TensorValue& TensorValue::operator+=(const TensorValue& other) {
  if (factors != other.factors && !other.terms.empty() && !terms.empty())
    throw std::invalid_argument("tensor values with different factor counts");
  if (terms.empty()) factors = other.factors;
  for (const auto& [key, c] : other.terms) add_term(key, c);
  return *this;
}

TensorValue& TensorValue::operator-=(const TensorValue& other) {
  if (factors != other.factors && !other.terms.empty() && !terms.empty())
    throw std::invalid_argument("tensor values with different factor counts");
  if (terms.empty()) factors = other.factors;
  for (const auto& [key, c] : other.terms) add_term(key, -c);
  return *this;
}

TensorValue& TensorValue::operator*=(const Rational& c) {
  if (c == 0) {
    terms.clear();
    return *this;
  }
  for (auto& [key, coeff] : terms) coeff *= c;
  return *this;
}

DiagramInterpreter::DiagramInterpreter(const StructureConstants& L)
    : base_(L),
      doubled_(double_algebra(L)),
      norm_(doubled_),
      triples_(bracket_triples(L)) {}

TensorValue DiagramInterpreter::interpret(const ArrowDiagram& d) {
  validate_diagram(d);
  const unsigned m = base_.dim;
  const std::size_t n_arrows = d.arrows.size();
  const std::size_t n_strands = d.skeleton.strands.size();

  // Arrow ends sitting on each vertex port.
  struct VertexArrows {
    std::size_t in1 = 0, in2 = 0, out = 0;
  };
  std::vector<VertexArrows> vertex_arrows(d.vertices);
  // Occupant of each skeleton slot: (arrow id, is_tail).
  std::vector<std::vector<std::pair<std::size_t, bool>>> slot_occupant(
      n_strands);
  for (std::size_t s = 0; s < n_strands; ++s)
    slot_occupant[s].assign(d.skeleton.strands[s].slots, {0, false});
  for (std::size_t a = 0; a < n_arrows; ++a) {
    const Arrow& ar = d.arrows[a];
    auto place = [&](const Endpoint& e, bool is_tail) {
      switch (e.kind) {
        case Endpoint::Kind::Slot:
          slot_occupant[e.strand][e.slot] = {a, is_tail};
          break;
        case Endpoint::Kind::VertexIn1:
          vertex_arrows[e.vertex].in1 = a;
          break;
        case Endpoint::Kind::VertexIn2:
          vertex_arrows[e.vertex].in2 = a;
          break;
        case Endpoint::Kind::VertexOut:
          vertex_arrows[e.vertex].out = a;
          break;
      }
    };
    place(ar.tail, true);
    place(ar.head, false);
  }

  // Free arrows: skeleton-to-skeleton, enumerated after vertex binding.
  std::vector<bool> touches_vertex(n_arrows, false);
  for (unsigned v = 0; v < d.vertices; ++v) {
    touches_vertex[vertex_arrows[v].in1] = true;
    touches_vertex[vertex_arrows[v].in2] = true;
    touches_vertex[vertex_arrows[v].out] = true;
  }
  std::vector<std::size_t> free_arrows;
  for (std::size_t a = 0; a < n_arrows; ++a)
    if (!touches_vertex[a]) free_arrows.push_back(a);

  TensorValue result;
  result.factors = static_cast<unsigned>(n_strands);
  constexpr unsigned kUnlabeled = ~0u;
  std::vector<unsigned> label(n_arrows, kUnlabeled);

  // With every arrow labeled: multiply slot letters along each strand,
  // normalize in U(double), expand the tensor product of the factors.
  auto emit = [&](const Rational& coeff) {
    std::vector<UElement> factors(n_strands);
    for (std::size_t s = 0; s < n_strands; ++s) {
      Word w;
      w.reserve(slot_occupant[s].size());
      for (const auto& [a, is_tail] : slot_occupant[s])
        w.push_back(is_tail ? label[a] : m + label[a]);
      factors[s] = norm_.normalize_word(w);
    }
    std::vector<Word> key(n_strands);
    std::function<void(std::size_t, const Rational&)> expand =
        [&](std::size_t s, const Rational& c) {
          if (s == n_strands) {
            result.add_term(key, c);
            return;
          }
          for (const auto& [w, cw] : factors[s].terms) {
            key[s] = w;
            expand(s + 1, c * cw);
          }
        };
    expand(0, coeff);
  };

  std::function<void(unsigned, const Rational&)> bind_free =
      [&](unsigned idx, const Rational& coeff) {
        if (idx == free_arrows.size()) {
          emit(coeff);
          return;
        }
        for (unsigned l = 0; l < m; ++l) {
          label[free_arrows[idx]] = l;
          bind_free(idx + 1, coeff);
        }
        label[free_arrows[idx]] = kUnlabeled;
      };

  // Backtrack over vertices, binding (in1, in2, out) to nonzero structure
  // constants; repeated arrows (self-loops) constrain naturally because we
  // check against the running assignment.
  std::function<void(unsigned, const Rational&)> bind_vertex =
      [&](unsigned v, const Rational& coeff) {
        if (v == d.vertices) {
          bind_free(0, coeff);
          return;
        }
        const VertexArrows& va = vertex_arrows[v];
        for (const BracketTriple& t : triples_) {
          std::vector<std::pair<std::size_t, unsigned>> bound;
          auto try_bind = [&](std::size_t arrow, unsigned want) {
            if (label[arrow] == want) return true;
            if (label[arrow] != kUnlabeled) return false;
            label[arrow] = want;
            bound.emplace_back(arrow, want);
            return true;
          };
          if (try_bind(va.in1, t.a) && try_bind(va.in2, t.b) &&
              try_bind(va.out, t.k)) {
            bind_vertex(v + 1, coeff * t.coeff);
          }
          for (auto& [arrow, want] : bound) label[arrow] = kUnlabeled;
        }
      };

  if (d.coefficient != 0) bind_vertex(0, d.coefficient);
  return result;
}

TensorValue tensor_interpret(const StructureConstants& L,
                             const ArrowDiagram& d) {
  DiagramInterpreter interp(L);
  return interp.interpret(d);
}

SymPoly project_to_dual(const StructureConstants& L, const TensorValue& v) {
  if (!v.terms.empty() && v.factors != 1)
    throw std::invalid_argument("project_to_dual needs a single factor");
  SymPoly out = SymPoly::zero(Variance::Dual, L.dim);
  for (const auto& [key, c] : v.terms) {
    MultiIndex mi;
    for (unsigned g : key[0]) {
      if (g >= L.dim)
        throw std::invalid_argument(
            "project_to_dual: primal generator in the value");
      mi.set_exponent(g, mi.exponent(g) + 1);
    }
    out.add_term(mi, c);
  }
  return out;
}

static bool descended_key_less(
    const std::pair<std::vector<MultiIndex>, std::vector<Word>>& a,
    const std::pair<std::vector<MultiIndex>, std::vector<Word>>& b) {
  GrlexLess mless;
  if (a.first.size() != b.first.size()) return a.first.size() < b.first.size();
  for (std::size_t i = 0; i < a.first.size(); ++i) {
    if (mless(a.first[i], b.first[i])) return true;
    if (mless(b.first[i], a.first[i])) return false;
  }
  VecWordLess wless;
  return wless(a.second, b.second);
}

DescendedValue::DescendedValue() : terms(&descended_key_less) {}

void DescendedValue::add_term(const std::vector<MultiIndex>& caps,
                              const std::vector<Word>& strings,
                              const Rational& c) {
  if (c == 0) return;
  auto key = std::make_pair(caps, strings);
  auto [it, inserted] = terms.emplace(key, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms.erase(it);
  }
}

DescendedValue descend(const StructureConstants& L, const Skeleton& skeleton,
                       const TensorValue& v) {
  const unsigned m = L.dim;
  DescendedValue out;
  for (unsigned s = 0; s < skeleton.strands.size(); ++s)
    (skeleton.strands[s].kind == StrandKind::Capped ? out.capped_strands
                                                    : out.string_strands)
        .push_back(s);
  if (!v.terms.empty() && v.factors != skeleton.strands.size())
    throw std::invalid_argument("skeleton does not match the tensor value");
  std::map<unsigned, CoinvariantsReducer> reducers;
  for (const auto& [key, c] : v.terms) {
    // Split the factors, enforcing the cap/tails-forbidden constraints.
    std::vector<MultiIndex> caps;
    std::vector<Word> strings;
    for (unsigned s = 0; s < skeleton.strands.size(); ++s) {
      if (skeleton.strands[s].kind == StrandKind::Capped) {
        MultiIndex mi;
        for (unsigned g : key[s]) {
          if (g >= m)
            throw std::invalid_argument(
                "descend: primal generator survives at a cap");
          mi.set_exponent(g, mi.exponent(g) + 1);
        }
        caps.push_back(mi);
      } else {
        Word w;
        for (unsigned g : key[s]) {
          if (g < m)
            throw std::invalid_argument(
                "descend: dual generator on a string strand");
          w.push_back(g - m);
        }
        strings.push_back(w);
      }
    }
    // Reduce each cap factor to its coinvariant representative and expand
    // the resulting sums multilinearly.
    std::vector<SymPoly> reduced;
    for (const MultiIndex& mi : caps) {
      unsigned deg = mi.degree();
      auto it = reducers.find(deg);
      if (it == reducers.end())
        it = reducers.emplace(deg, coinvariants_reducer(L, deg)).first;
      reduced.push_back(it->second.reduce(
          SymPoly::monomial(Variance::Dual, m, mi, Rational(1))));
    }
    std::vector<MultiIndex> cap_key(caps.size());
    std::function<void(std::size_t, const Rational&)> expand =
        [&](std::size_t idx, const Rational& coeff) {
          if (idx == reduced.size()) {
            out.add_term(cap_key, strings, coeff);
            return;
          }
          for (const auto& [mi, cr] : reduced[idx].terms) {
            cap_key[idx] = mi;
            expand(idx + 1, coeff * cr);
          }
        };
    expand(0, c);
  }
  return out;
}

// --- relation sites -------------------------------------------------------

std::string relation_name(Relation r) {
  switch (r) {
    case Relation::STU1: return "STU1";
    case Relation::STU2: return "STU2";
    case Relation::STU3: return "STU3";
    case Relation::AS: return "AS";
    case Relation::IHX: return "IHX";
    case Relation::FourT: return "4T";
  }
  return "?";
}

namespace {

// Site diagrams are assembled with symbolic slot keys and materialized per
// term, so the same spectator context can surround local configurations
// with different attachment counts.  Relation-local pairs use keys ≡ 1, 2
// (mod 10), far ends of relation arrows keys ≡ 5, spectators multiples of
// 10 — so nothing ever lands between an adjacent relation pair.
struct PendingEndpoint {
  bool on_skeleton = true;
  unsigned strand = 0;
  long key = 0;
  Endpoint::Kind port = Endpoint::Kind::Slot;
  unsigned vertex = 0;
};

PendingEndpoint sk(unsigned strand, long key) {
  PendingEndpoint e;
  e.strand = strand;
  e.key = key;
  return e;
}

PendingEndpoint vx(unsigned vertex, Endpoint::Kind port) {
  PendingEndpoint e;
  e.on_skeleton = false;
  e.vertex = vertex;
  e.port = port;
  return e;
}

struct PendingArrow {
  PendingEndpoint tail, head;
};

ArrowDiagram materialize(const std::vector<Skeleton::Strand>& strands,
                         unsigned vertices,
                         const std::vector<PendingArrow>& arrows) {
  // Sort each strand's keys to assign slot indices.
  std::vector<std::vector<long>> keys(strands.size());
  for (const PendingArrow& a : arrows)
    for (const PendingEndpoint* e : {&a.tail, &a.head})
      if (e->on_skeleton) keys[e->strand].push_back(e->key);
  for (auto& ks : keys) {
    std::sort(ks.begin(), ks.end());
    if (std::adjacent_find(ks.begin(), ks.end()) != ks.end())
      throw std::logic_error("site builder assigned a slot key twice");
  }
  ArrowDiagram d;
  d.vertices = vertices;
  for (std::size_t s = 0; s < strands.size(); ++s)
    d.skeleton.strands.push_back(
        {strands[s].kind, static_cast<unsigned>(keys[s].size())});
  auto resolve = [&](const PendingEndpoint& e) {
    if (!e.on_skeleton) return Endpoint::at_vertex(e.vertex, e.port);
    auto& ks = keys[e.strand];
    auto it = std::lower_bound(ks.begin(), ks.end(), e.key);
    return Endpoint::at_slot(e.strand,
                             static_cast<unsigned>(it - ks.begin()));
  };
  for (const PendingArrow& a : arrows)
    d.arrows.push_back({resolve(a.tail), resolve(a.head)});
  return d;
}

struct SiteBuilder {
  // Per-strand slot cap: keeps the strand words short enough that PBW
  // normalization over the double stays cheap on dense algebras.
  static constexpr unsigned kStrandSlotCap = 6;

  std::mt19937_64& rng;
  std::vector<Skeleton::Strand> strands;
  std::set<std::pair<unsigned, long>> used;
  std::vector<unsigned> load;  // skeleton endpoints claimed per strand
  long far_counter = 0;
  long spectator_counter = 0;

  explicit SiteBuilder(std::mt19937_64& r, unsigned nstrands) : rng(r) {
    strands.assign(nstrands, {StrandKind::Capped, 0});
    load.assign(nstrands, 0);
  }

  unsigned rand_strand() {
    return std::uniform_int_distribution<unsigned>(
        0, static_cast<unsigned>(strands.size()) - 1)(rng);
  }

  long claim(unsigned strand, long key) {
    if (!used.emplace(strand, key).second)
      throw std::logic_error("site builder reused a slot key");
    ++load[strand];
    return key;
  }

  // Far end of a relation arrow: random strand, fresh key ≡ 5 (mod 10),
  // alternating around zero so context lands on both sides of the local
  // configuration.
  PendingEndpoint far() {
    unsigned s = rand_strand();
    while (true) {
      long k = 10 * std::uniform_int_distribution<long>(-12, 12)(rng) + 5;
      if (used.emplace(s, k).second) {
        ++load[s];
        return sk(s, k);
      }
      ++far_counter;
      if (far_counter > 10000) throw std::logic_error("key space exhausted");
    }
  }

  std::optional<PendingEndpoint> spectator_end() {
    std::vector<unsigned> open;
    for (unsigned s = 0; s < strands.size(); ++s)
      if (load[s] < kStrandSlotCap) open.push_back(s);
    if (open.empty()) return std::nullopt;
    unsigned s = open[std::uniform_int_distribution<std::size_t>(
        0, open.size() - 1)(rng)];
    while (true) {
      long k = 10 * std::uniform_int_distribution<long>(-12, 12)(rng);
      if (k == 0) continue;
      if (used.emplace(s, k).second) {
        ++load[s];
        return sk(s, k);
      }
      ++spectator_counter;
      if (spectator_counter > 10000)
        throw std::logic_error("key space exhausted");
    }
  }

  std::vector<PendingArrow> spectators(unsigned max_count) {
    unsigned n = std::uniform_int_distribution<unsigned>(0, max_count)(rng);
    std::vector<PendingArrow> out;
    for (unsigned i = 0; i < n; ++i) {
      std::optional<PendingEndpoint> tail = spectator_end();
      if (!tail) break;
      std::optional<PendingEndpoint> head = spectator_end();
      if (!head) break;
      out.push_back({*tail, *head});
    }
    return out;
  }
};

RelationSite build_site(Relation r, std::mt19937_64& rng,
                        unsigned max_spectators, unsigned nstrands) {
  SiteBuilder b(rng, nstrands);
  RelationSite site;
  site.relation = r;
  // The local configurations claim their slots first; spectators then fill
  // whatever per-strand capacity is left, and every term is materialized
  // over the same spectator context.
  struct PendingTerm {
    Rational sign;
    unsigned vertices;
    std::vector<PendingArrow> local;
  };
  std::vector<PendingTerm> pending;
  auto add_term = [&](const Rational& sign, unsigned vertices,
                      std::vector<PendingArrow> local) {
    pending.push_back({sign, vertices, std::move(local)});
  };

  switch (r) {
    case Relation::STU1: {
      // Vertex output head on a strand vs the two head orders.
      unsigned s = b.rand_strand();
      b.claim(s, 1);
      b.claim(s, 2);
      PendingEndpoint e1 = b.far(), e2 = b.far();
      add_term(Rational(1), 1,
               {{e1, vx(0, Endpoint::Kind::VertexIn1)},
                {e2, vx(0, Endpoint::Kind::VertexIn2)},
                {vx(0, Endpoint::Kind::VertexOut), sk(s, 1)}});
      add_term(Rational(-1), 0, {{e1, sk(s, 1)}, {e2, sk(s, 2)}});
      add_term(Rational(1), 0, {{e2, sk(s, 1)}, {e1, sk(s, 2)}});
      site.description = "STU1 on strand " + std::to_string(s + 1);
      break;
    }
    case Relation::STU2: {
      // First input is a tail on a cap; resolutions put the incoming head
      // and the outgoing tail on the strand in both orders.
      unsigned s = b.rand_strand();
      b.claim(s, 1);
      b.claim(s, 2);
      PendingEndpoint e_tail = b.far();  // far tail of the incoming arrow
      PendingEndpoint f_head = b.far();  // far head of the outgoing arrow
      add_term(Rational(1), 1,
               {{sk(s, 1), vx(0, Endpoint::Kind::VertexIn1)},
                {e_tail, vx(0, Endpoint::Kind::VertexIn2)},
                {vx(0, Endpoint::Kind::VertexOut), f_head}});
      add_term(Rational(-1), 0, {{e_tail, sk(s, 1)}, {sk(s, 2), f_head}});
      add_term(Rational(1), 0, {{sk(s, 1), f_head}, {e_tail, sk(s, 2)}});
      site.description = "STU2 on strand " + std::to_string(s + 1);
      break;
    }
    case Relation::STU3: {
      // Two adjacent tails commute (tail commutativity).
      unsigned s = b.rand_strand();
      b.claim(s, 1);
      b.claim(s, 2);
      PendingEndpoint h1 = b.far(), h2 = b.far();
      add_term(Rational(1), 0, {{sk(s, 1), h1}, {sk(s, 2), h2}});
      add_term(Rational(-1), 0, {{sk(s, 2), h1}, {sk(s, 1), h2}});
      site.description = "STU3 on strand " + std::to_string(s + 1);
      break;
    }
    case Relation::AS: {
      // Swapping the ordered inputs of a vertex negates the diagram.
      unsigned s = b.rand_strand();
      b.claim(s, 1);
      PendingEndpoint e1 = b.far(), e2 = b.far();
      add_term(Rational(1), 1,
               {{e1, vx(0, Endpoint::Kind::VertexIn1)},
                {e2, vx(0, Endpoint::Kind::VertexIn2)},
                {vx(0, Endpoint::Kind::VertexOut), sk(s, 1)}});
      add_term(Rational(1), 1,
               {{e2, vx(0, Endpoint::Kind::VertexIn1)},
                {e1, vx(0, Endpoint::Kind::VertexIn2)},
                {vx(0, Endpoint::Kind::VertexOut), sk(s, 1)}});
      site.description = "AS on strand " + std::to_string(s + 1);
      break;
    }
    case Relation::IHX: {
      // Two chained vertices; I = H - X is the Jacobi identity.
      PendingEndpoint ul = b.far(), ur = b.far(), ll = b.far(), lr = b.far();
      add_term(Rational(1), 2,
               {{ul, vx(0, Endpoint::Kind::VertexIn1)},
                {ur, vx(0, Endpoint::Kind::VertexIn2)},
                {vx(0, Endpoint::Kind::VertexOut),
                 vx(1, Endpoint::Kind::VertexIn2)},
                {ll, vx(1, Endpoint::Kind::VertexIn1)},
                {vx(1, Endpoint::Kind::VertexOut), lr}});
      add_term(Rational(-1), 2,
               {{ll, vx(0, Endpoint::Kind::VertexIn1)},
                {ul, vx(0, Endpoint::Kind::VertexIn2)},
                {vx(0, Endpoint::Kind::VertexOut),
                 vx(1, Endpoint::Kind::VertexIn1)},
                {ur, vx(1, Endpoint::Kind::VertexIn2)},
                {vx(1, Endpoint::Kind::VertexOut), lr}});
      add_term(Rational(1), 2,
               {{ll, vx(0, Endpoint::Kind::VertexIn1)},
                {ur, vx(0, Endpoint::Kind::VertexIn2)},
                {vx(0, Endpoint::Kind::VertexOut),
                 vx(1, Endpoint::Kind::VertexIn1)},
                {ul, vx(1, Endpoint::Kind::VertexIn2)},
                {vx(1, Endpoint::Kind::VertexOut), lr}});
      site.description = "IHX";
      break;
    }
    case Relation::FourT: {
      // Three distinct strands; the four sliding positions of two arrows.
      std::vector<unsigned> order = {0, 1, 2};
      std::shuffle(order.begin(), order.end(), b.rng);
      unsigned sa = order[0], sb = order[1], sc = order[2];
      b.claim(sa, 1);
      b.claim(sb, 1);
      b.claim(sb, 2);
      b.claim(sc, 1);
      b.claim(sc, 2);
      add_term(Rational(1), 0,
               {{sk(sa, 1), sk(sb, 2)}, {sk(sb, 1), sk(sc, 1)}});
      add_term(Rational(1), 0,
               {{sk(sa, 1), sk(sc, 2)}, {sk(sb, 1), sk(sc, 1)}});
      add_term(Rational(-1), 0,
               {{sk(sa, 1), sk(sb, 1)}, {sk(sb, 2), sk(sc, 1)}});
      add_term(Rational(-1), 0,
               {{sk(sa, 1), sk(sc, 1)}, {sk(sb, 1), sk(sc, 2)}});
      site.description = "4T on strands " + std::to_string(sa + 1) + "," +
                         std::to_string(sb + 1) + "," + std::to_string(sc + 1);
      break;
    }
  }
  std::vector<PendingArrow> spect = b.spectators(max_spectators);
  for (PendingTerm& t : pending) {
    t.local.insert(t.local.end(), spect.begin(), spect.end());
    site.terms.push_back({t.sign, materialize(b.strands, t.vertices, t.local)});
  }
  if (!spect.empty())
    site.description += " with " + std::to_string(spect.size()) +
                        " spectator arrow(s)";
  return site;
}

}  // namespace

RelationSite minimal_relation_site(Relation r) {
  std::mt19937_64 rng(0);
  return build_site(r, rng, 0, r == Relation::FourT ? 3 : 1);
}

RelationSite random_relation_site(Relation r, std::mt19937_64& rng,
                                  unsigned max_spectators) {
  unsigned nstrands =
      r == Relation::FourT
          ? 3
          : std::uniform_int_distribution<unsigned>(1, 3)(rng);
  return build_site(r, rng, max_spectators, nstrands);
}

TensorValue relation_residual(DiagramInterpreter& interp,
                              const RelationSite& site) {
  TensorValue total;
  for (const SignedDiagram& sd : site.terms) {
    TensorValue v = interp.interpret(sd.diagram);
    v *= sd.sign;
    total += v;
  }
  return total;
}

TensorValue relation_residual(const StructureConstants& L,
                              const RelationSite& site) {
  DiagramInterpreter interp(L);
  return relation_residual(interp, site);
}

}  // namespace duflo
