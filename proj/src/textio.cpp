#include <duflo/textio.hpp>

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace duflo {

namespace {

bool valid_name(const std::string& s) {
  if (s.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_')
    return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

// Renders one coefficient-and-body term; body empty means a constant term.
void append_term(std::string& out, const Rational& coeff,
                 const std::string& body) {
  Rational mag = coeff < 0 ? Rational(-coeff) : coeff;
  if (out.empty()) {
    if (coeff < 0) out += "-";
  } else {
    out += coeff < 0 ? " - " : " + ";
  }
  if (body.empty()) {
    out += to_string(mag);
  } else if (mag == 1) {
    out += body;
  } else {
    out += to_string(mag) + "*" + body;
  }
}

std::string monomial_body(const StructureConstants& L, Variance v,
                          const MultiIndex& mi) {
  std::string body;
  for (const auto& [var, exp] : mi.e) {
    if (!body.empty()) body += "*";
    body += L.basis_names.at(var);
    if (v == Variance::Dual) body += "*";
    if (exp > 1) body += "^" + std::to_string(exp);
  }
  return body;
}

}  // namespace

std::string print_poly(const StructureConstants& L, const SymPoly& p) {
  if (p.nvars != L.dim)
    throw std::invalid_argument("polynomial not over this algebra's basis");
  if (p.is_zero()) return "0";
  // (degree ascending, lex descending within a degree).
  std::vector<const std::pair<const MultiIndex, Rational>*> order;
  for (const auto& term : p.terms) order.push_back(&term);
  GrlexLess less;
  std::sort(order.begin(), order.end(), [&](const auto* a, const auto* b) {
    unsigned da = a->first.degree(), db = b->first.degree();
    if (da != db) return da < db;
    return less(b->first, a->first);
  });
  std::string out;
  for (const auto* term : order)
    append_term(out, term->second, monomial_body(L, p.variance, term->first));
  return out;
}

std::string print_poly_cleared(const StructureConstants& L, const SymPoly& p) {
  if (p.is_zero()) return "0";
  BigInt lcm_den = 1;
  for (const auto& [mi, c] : p.terms) {
    BigInt den = denominator(c);
    lcm_den = lcm_den / gcd(lcm_den, den) * den;
  }
  SymPoly scaled = p * Rational(lcm_den);
  // Positive leading coefficient, leading = highest in the print order.
  const Rational* lead = nullptr;
  GrlexLess less;
  const MultiIndex* lead_mi = nullptr;
  for (const auto& [mi, c] : scaled.terms) {
    if (!lead_mi || mi.degree() > lead_mi->degree() ||
        (mi.degree() == lead_mi->degree() && less(*lead_mi, mi))) {
      lead_mi = &mi;
      lead = &c;
    }
  }
  if (lead && *lead < 0) scaled *= Rational(-1);
  return print_poly(L, scaled);
}

namespace {

struct TermScanner {
  // Splits "a + b - c" into signed chunks with whitespace removed.
  static std::vector<std::pair<int, std::string>> split(
      const std::string& text) {
    std::string s;
    for (char c : text)
      if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw std::invalid_argument("empty expression");
    std::vector<std::pair<int, std::string>> out;
    int sign = 1;
    std::string cur;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i] == '+' || s[i] == '-') {
        if (!cur.empty()) {
          out.emplace_back(sign, cur);
          cur.clear();
          sign = 1;
        } else if (!out.empty()) {
          throw std::invalid_argument("dangling sign in expression");
        }
        if (s[i] == '-') sign = -sign;
        continue;
      }
      cur += s[i];
    }
    if (cur.empty()) throw std::invalid_argument("trailing sign in expression");
    out.emplace_back(sign, cur);
    return out;
  }
};

// Reads digits[/digits] starting at pos; returns false if pos is not a digit.
bool scan_rational(const std::string& s, std::size_t& pos, Rational& out) {
  std::size_t start = pos;
  while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
    ++pos;
  if (pos == start) return false;
  if (pos < s.size() && s[pos] == '/') {
    std::size_t den_start = ++pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
      ++pos;
    if (pos == den_start)
      throw std::invalid_argument("bad rational in expression");
  }
  out = parse_rational(s.substr(start, pos - start));
  return true;
}

std::size_t scan_name(const std::string& s, std::size_t pos) {
  std::size_t end = pos;
  if (end < s.size() && (std::isalpha(static_cast<unsigned char>(s[end])) ||
                         s[end] == '_'))
    ++end;
  while (end < s.size() && (std::isalnum(static_cast<unsigned char>(s[end])) ||
                            s[end] == '_'))
    ++end;
  return end;
}

unsigned lookup_name(const StructureConstants& L, const std::string& name) {
  for (unsigned i = 0; i < L.dim; ++i)
    if (L.basis_names[i] == name) return i;
  throw std::invalid_argument("unknown generator name: " + name);
}

}  // namespace

SymPoly parse_poly(const StructureConstants& L, Variance v,
                   const std::string& text) {
  SymPoly p = SymPoly::zero(v, L.dim);
  for (const auto& [sign, chunk] : TermScanner::split(text)) {
    std::size_t pos = 0;
    Rational coeff(sign);
    Rational lead;
    if (scan_rational(chunk, pos, lead)) {
      coeff *= lead;
      if (pos < chunk.size()) {
        if (chunk[pos] != '*')
          throw std::invalid_argument("expected '*' after coefficient in: " +
                                      chunk);
        ++pos;
      }
    }
    MultiIndex mi;
    while (pos < chunk.size()) {
      std::size_t end = scan_name(chunk, pos);
      if (end == pos)
        throw std::invalid_argument("expected generator name in: " + chunk);
      unsigned var = lookup_name(L, chunk.substr(pos, end - pos));
      pos = end;
      if (v == Variance::Dual) {
        if (pos >= chunk.size() || chunk[pos] != '*')
          throw std::invalid_argument(
              "dual generator needs a trailing '*' in: " + chunk);
        ++pos;
      }
      unsigned exp = 1;
      if (pos < chunk.size() && chunk[pos] == '^') {
        ++pos;
        std::size_t d0 = pos;
        while (pos < chunk.size() &&
               std::isdigit(static_cast<unsigned char>(chunk[pos])))
          ++pos;
        if (d0 == pos) throw std::invalid_argument("bad exponent in: " + chunk);
        exp = static_cast<unsigned>(std::stoul(chunk.substr(d0, pos - d0)));
        if (exp == 0) throw std::invalid_argument("zero exponent in: " + chunk);
      }
      mi.set_exponent(var, mi.exponent(var) + exp);
      if (pos < chunk.size()) {
        if (chunk[pos] != '*')
          throw std::invalid_argument("expected '*' between factors in: " +
                                      chunk);
        ++pos;
        if (pos == chunk.size())
          throw std::invalid_argument("trailing '*' in: " + chunk);
      }
    }
    p.add_term(mi, coeff);
  }
  return p;
}

std::string print_uelement(const StructureConstants& L, const UElement& x) {
  if (x.is_zero()) return "0";
  // Canonical term order: word length ascending, then lexicographic on the
  // printed generator names (storage order is by basis index, so "h" would
  // otherwise sort before "e").
  std::vector<std::pair<std::vector<std::string>, const Rational*>> rows;
  rows.reserve(x.terms.size());
  for (const auto& [w, c] : x.terms) {
    std::vector<std::string> names;
    names.reserve(w.size());
    for (unsigned g : w) names.push_back(L.basis_names.at(g));
    rows.emplace_back(std::move(names), &c);
  }
  std::sort(rows.begin(), rows.end(),
            [](const auto& a, const auto& b) {
              if (a.first.size() != b.first.size())
                return a.first.size() < b.first.size();
              return a.first < b.first;
            });
  std::string out;
  for (const auto& [names, c] : rows) {
    std::string body;
    for (const std::string& n : names) {
      if (!body.empty()) body += "·";
      body += n;
    }
    append_term(out, *c, body);
  }
  return out;
}

UElement parse_uelement(const StructureConstants& L, const std::string& text) {
  UElement x;
  for (const auto& [sign, chunk] : TermScanner::split(text)) {
    std::size_t pos = 0;
    Rational coeff(sign);
    Rational lead;
    bool have_coeff = scan_rational(chunk, pos, lead);
    if (have_coeff) {
      coeff *= lead;
      if (pos < chunk.size()) {
        if (chunk[pos] != '*')
          throw std::invalid_argument("expected '*' after coefficient in: " +
                                      chunk);
        ++pos;
      }
    }
    Word w;
    while (pos < chunk.size()) {
      // Generator names may themselves end in '*' (doubled algebras), so
      // match against the catalog: name chars then an optional star.
      std::size_t end = scan_name(chunk, pos);
      if (end == pos)
        throw std::invalid_argument("expected generator name in: " + chunk);
      if (end < chunk.size() && chunk[end] == '*') ++end;
      w.push_back(lookup_name(L, chunk.substr(pos, end - pos)));
      pos = end;
      if (pos < chunk.size()) {
        // The '·' separator is the two bytes 0xC2 0xB7.
        if (pos + 1 < chunk.size() &&
            static_cast<unsigned char>(chunk[pos]) == 0xC2 &&
            static_cast<unsigned char>(chunk[pos + 1]) == 0xB7) {
          pos += 2;
        } else {
          throw std::invalid_argument("expected '·' between factors in: " +
                                      chunk);
        }
        if (pos == chunk.size())
          throw std::invalid_argument("trailing separator in: " + chunk);
      }
    }
    x.add_term(w, coeff);
  }
  return x;
}

StructureConstants parse_structure_constants_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("bad JSON: ") + e.what());
  }
  if (!j.is_object()) throw std::invalid_argument("top level must be an object");
  StructureConstants L;
  if (!j.contains("dim") || !j["dim"].is_number_integer())
    throw std::invalid_argument("missing integer field: dim");
  long long dim = j["dim"].get<long long>();
  if (dim < 1 || dim > 16)
    throw std::invalid_argument("dim must be between 1 and 16");
  L.dim = static_cast<unsigned>(dim);
  L.name = j.value("name", std::string("unnamed"));
  if (!j.contains("basis") || !j["basis"].is_array() ||
      j["basis"].size() != L.dim)
    throw std::invalid_argument("basis must list exactly dim names");
  for (const auto& b : j["basis"]) {
    if (!b.is_string() || !valid_name(b.get<std::string>()))
      throw std::invalid_argument("bad basis name");
    L.basis_names.push_back(b.get<std::string>());
  }
  for (unsigned i = 0; i < L.dim; ++i)
    for (unsigned k = i + 1; k < L.dim; ++k)
      if (L.basis_names[i] == L.basis_names[k])
        throw std::invalid_argument("duplicate basis name: " +
                                    L.basis_names[i]);
  if (!j.contains("brackets") || !j["brackets"].is_array())
    throw std::invalid_argument("missing array field: brackets");
  for (const auto& entry : j["brackets"]) {
    if (!entry.is_object() || !entry.contains("i") || !entry.contains("j") ||
        !entry.contains("terms") || !entry["i"].is_number_integer() ||
        !entry["j"].is_number_integer() || !entry["terms"].is_array())
      throw std::invalid_argument("bad bracket entry");
    long long i = entry["i"].get<long long>();
    long long jj = entry["j"].get<long long>();
    if (i < 1 || jj < 1 || i > L.dim || jj > L.dim)
      throw std::invalid_argument("bracket index out of range");
    if (i >= jj)
      throw std::invalid_argument("bracket entries need i < j (store the "
                                  "antisymmetric partner implicitly)");
    if (L.table.count({static_cast<unsigned>(i - 1),
                       static_cast<unsigned>(jj - 1)}))
      throw std::invalid_argument("duplicate bracket entry for (i, j) = (" +
                                  std::to_string(i) + ", " +
                                  std::to_string(jj) + ")");
    SparseVec terms;
    for (const auto& t : entry["terms"]) {
      if (!t.is_object() || !t.contains("k") || !t.contains("coeff") ||
          !t["k"].is_number_integer())
        throw std::invalid_argument("bad bracket term");
      long long k = t["k"].get<long long>();
      if (k < 1 || k > L.dim)
        throw std::invalid_argument("bracket target out of range");
      Rational c;
      if (t["coeff"].is_string())
        c = parse_rational(t["coeff"].get<std::string>());
      else if (t["coeff"].is_number_integer())
        c = Rational(t["coeff"].get<long long>());
      else
        throw std::invalid_argument(
            "coeff must be an exact \"p/q\" string or integer");
      terms.emplace_back(static_cast<unsigned>(k - 1), c);
    }
    // set_bracket validates duplicates among targets and drops zeros; an
    // all-zero list must still mark (i, j) as seen, so probe first.
    auto key = std::make_pair(static_cast<unsigned>(i - 1),
                              static_cast<unsigned>(jj - 1));
    L.set_bracket(key.first, key.second, terms);
    if (!L.table.count(key) )
      L.table[key] = {};
  }
  // Normalize: drop the empty rows that only marked duplicates.
  for (auto it = L.table.begin(); it != L.table.end();)
    it = it->second.empty() ? L.table.erase(it) : std::next(it);
  return L;
}

std::string structure_constants_to_json(const StructureConstants& L) {
  nlohmann::json j;
  j["name"] = L.name;
  j["dim"] = L.dim;
  j["basis"] = L.basis_names;
  nlohmann::json brackets = nlohmann::json::array();
  for (const auto& [ij, terms] : L.table) {
    nlohmann::json entry;
    entry["i"] = ij.first + 1;
    entry["j"] = ij.second + 1;
    nlohmann::json jterms = nlohmann::json::array();
    for (const auto& [k, c] : terms)
      jterms.push_back({{"k", k + 1}, {"coeff", to_string(c)}});
    entry["terms"] = std::move(jterms);
    brackets.push_back(std::move(entry));
  }
  j["brackets"] = std::move(brackets);
  return j.dump(2);
}

StructureConstants load_structure_constants_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_structure_constants_json(buf.str());
}

std::string print_diagram(const ArrowDiagram& d) {
  std::ostringstream os;
  if (d.coefficient != 1) os << "coeff: " << d.coefficient << "; ";
  os << "skeleton: ";
  for (std::size_t s = 0; s < d.skeleton.strands.size(); ++s) {
    if (s) os << ", ";
    os << (d.skeleton.strands[s].kind == StrandKind::Capped ? "capped"
                                                            : "string")
       << "(" << d.skeleton.strands[s].slots << ")";
  }
  os << "; vertices: " << d.vertices << "; arrows:";
  auto endpoint = [&](const Endpoint& e) {
    std::ostringstream t;
    switch (e.kind) {
      case Endpoint::Kind::Slot:
        t << "s" << e.strand + 1 << "." << e.slot + 1;
        break;
      case Endpoint::Kind::VertexIn1:
        t << "v" << e.vertex + 1 << ".in1";
        break;
      case Endpoint::Kind::VertexIn2:
        t << "v" << e.vertex + 1 << ".in2";
        break;
      case Endpoint::Kind::VertexOut:
        t << "v" << e.vertex + 1 << ".out";
        break;
    }
    return t.str();
  };
  for (std::size_t a = 0; a < d.arrows.size(); ++a) {
    os << (a ? ", " : " ") << endpoint(d.arrows[a].tail) << "->"
       << endpoint(d.arrows[a].head);
  }
  return os.str();
}

namespace {

struct DiagramScanner {
  std::string s;
  std::size_t pos = 0;

  explicit DiagramScanner(const std::string& text) {
    for (char c : text)
      if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  }
  bool eat(const std::string& lit) {
    if (s.compare(pos, lit.size(), lit) == 0) {
      pos += lit.size();
      return true;
    }
    return false;
  }
  void expect(const std::string& lit) {
    if (!eat(lit))
      throw std::invalid_argument("diagram literal: expected '" + lit +
                                  "' at offset " + std::to_string(pos));
  }
  unsigned number() {
    std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
      ++pos;
    if (start == pos)
      throw std::invalid_argument("diagram literal: expected a number");
    return static_cast<unsigned>(std::stoul(s.substr(start, pos - start)));
  }
  bool done() const { return pos == s.size(); }
};

Endpoint parse_endpoint(DiagramScanner& sc) {
  if (sc.eat("s")) {
    unsigned strand = sc.number();
    sc.expect(".");
    unsigned slot = sc.number();
    if (strand == 0 || slot == 0)
      throw std::invalid_argument("diagram literal: indices are 1-based");
    return Endpoint::at_slot(strand - 1, slot - 1);
  }
  sc.expect("v");
  unsigned vertex = sc.number();
  if (vertex == 0)
    throw std::invalid_argument("diagram literal: indices are 1-based");
  sc.expect(".");
  if (sc.eat("in1"))
    return Endpoint::at_vertex(vertex - 1, Endpoint::Kind::VertexIn1);
  if (sc.eat("in2"))
    return Endpoint::at_vertex(vertex - 1, Endpoint::Kind::VertexIn2);
  sc.expect("out");
  return Endpoint::at_vertex(vertex - 1, Endpoint::Kind::VertexOut);
}

}  // namespace

ArrowDiagram parse_diagram(const std::string& text) {
  DiagramScanner sc(text);
  ArrowDiagram d;
  if (sc.eat("coeff:")) {
    std::size_t start = sc.pos;
    if (sc.pos < sc.s.size() && (sc.s[sc.pos] == '-' || sc.s[sc.pos] == '+'))
      ++sc.pos;
    while (sc.pos < sc.s.size() &&
           (std::isdigit(static_cast<unsigned char>(sc.s[sc.pos])) ||
            sc.s[sc.pos] == '/'))
      ++sc.pos;
    d.coefficient = parse_rational(sc.s.substr(start, sc.pos - start));
    sc.expect(";");
  }
  sc.expect("skeleton:");
  while (true) {
    StrandKind kind;
    if (sc.eat("capped"))
      kind = StrandKind::Capped;
    else {
      sc.expect("string");
      kind = StrandKind::String;
    }
    sc.expect("(");
    unsigned slots = sc.number();
    sc.expect(")");
    d.skeleton.strands.push_back({kind, slots});
    if (!sc.eat(",")) break;
  }
  sc.expect(";");
  sc.expect("vertices:");
  d.vertices = sc.number();
  sc.expect(";");
  sc.expect("arrows:");
  if (!sc.done()) {
    while (true) {
      Endpoint tail = parse_endpoint(sc);
      sc.expect("->");
      Endpoint head = parse_endpoint(sc);
      d.arrows.push_back({tail, head});
      if (!sc.eat(",")) break;
    }
  }
  if (!sc.done())
    throw std::invalid_argument("diagram literal: trailing input");
  return d;
}

}  // namespace duflo
