#pragma once

// Declarative session files. A session is a list of statements separated by
// newlines or ';'. '#' starts a comment.
//
//   ring Z | Q | Zmod n | Fp p        (shorthands Z4, F5)
//   <kind> <name> = <expr>            kind: algebra coalgebra hopf action
//                                     coaction pairing ideal dualelem
//   <task> <op>(<args>)               task: check dual rat smash purity
//   bm(<coaction>, <pairing>)
//
// Expressions are atoms, calls name(arg, ...) and lists [a, b, ...].
// Numbers are exact integers or fractions p/q; polynomials are written as
// 2x^2 - x + 1 or x^-1 + y.

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "hopfdual/smash.hpp"

namespace hopfdual::session {

using Json = nlohmann::ordered_json;

struct Node {
  enum class Kind { Atom, Call, List };
  Kind kind = Kind::Atom;
  std::string text;  // atom text or call name
  std::vector<Node> args;
  std::size_t line = 0, col = 0;

  bool is_ident() const {
    if (kind != Kind::Atom || text.empty() || !(std::isalpha(static_cast<unsigned char>(text[0])) || text[0] == '_')) return false;
    for (char c : text)
      if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'')) return false;
    return true;
  }
};

/// Structural equality, positions ignored.
inline bool same_tree(const Node& a, const Node& b) {
  if (a.kind != b.kind || a.text != b.text || a.args.size() != b.args.size()) return false;
  for (std::size_t i = 0; i < a.args.size(); ++i)
    if (!same_tree(a.args[i], b.args[i])) return false;
  return true;
}

inline std::string print(const Node& n) {
  std::string out;
  auto join = [&](const std::vector<Node>& xs) {
    for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? ", " : "") + print(xs[i]);
  };
  switch (n.kind) {
    case Node::Kind::Atom: return n.text;
    case Node::Kind::Call:
      out = n.text + "(";
      join(n.args);
      return out + ")";
    case Node::Kind::List:
      out = "[";
      join(n.args);
      return out + "]";
  }
  return out;
}

enum class StmtKind { Ring, Decl, Task };

struct Statement {
  StmtKind kind = StmtKind::Task;
  std::string word;  // ring, declaration kind or task name
  std::string name;  // declared name
  Node body;         // ring atom, declaration expression or task call
  bool call_form = false;  // task written as word(args), e.g. bm(c, p)
  std::size_t line = 0, col = 0;

  std::string str() const {
    switch (kind) {
      case StmtKind::Ring: return "ring " + body.text;
      case StmtKind::Decl: return word + " " + name + " = " + print(body);
      case StmtKind::Task: return call_form ? print(body) : word + " " + print(body);
    }
    return "";
  }
};

inline bool same_statement(const Statement& a, const Statement& b) {
  return a.kind == b.kind && a.word == b.word && a.name == b.name && a.call_form == b.call_form && same_tree(a.body, b.body);
}

struct Diagnostic {
  ErrorKind kind;
  std::size_t line, col;
  std::string message;
  std::string str() const {
    return std::to_string(line) + ":" + std::to_string(col) + ": " + to_string(kind) + ": " + message;
  }
};

/// Thrown by parse_session_or_throw; carries every diagnostic.
class SessionError : public Error {
 public:
  explicit SessionError(std::vector<Diagnostic> d)
      : Error(d.empty() ? ErrorKind::ParseError : d.front().kind, d.empty() ? "" : d.front().str()), diagnostics_(std::move(d)) {}
  const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

 private:
  std::vector<Diagnostic> diagnostics_;
};

// ---------------------------------------------------------------------------
// Syntax

namespace detail {

struct NodeError {
  ErrorKind kind;
  std::size_t line, col;
  std::string message;
};

[[noreturn]] inline void fail_at(const Node& n, ErrorKind k, const std::string& msg) { throw NodeError{k, n.line, n.col, msg}; }

class Parser {
 public:
  explicit Parser(const std::string& text) : s_(text) {}

  std::vector<Statement> statements() {
    std::vector<Statement> out;
    for (;;) {
      skip(true);
      if (eof()) break;
      if (peek() == ';') {
        advance();
        continue;
      }
      out.push_back(statement());
      skip(false);
      if (eof()) break;
      if (peek() == ';' || peek() == '\n') {
        advance();
        continue;
      }
      error("expected end of statement");
    }
    return out;
  }

 private:
  const std::string& s_;
  std::size_t i_ = 0, line_ = 1, col_ = 1;

  bool eof() const { return i_ >= s_.size(); }
  char peek() const { return eof() ? '\0' : s_[i_]; }
  void advance() {
    if (s_[i_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++i_;
  }
  [[noreturn]] void error(const std::string& msg) const { throw NodeError{ErrorKind::ParseError, line_, col_, msg}; }

  void skip(bool newlines) {
    while (!eof()) {
      const char c = peek();
      if (c == ' ' || c == '\t' || c == '\r' || (newlines && c == '\n')) {
        advance();
      } else if (c == '#') {
        while (!eof() && peek() != '\n') advance();
      } else {
        break;
      }
    }
  }

  std::string word() {
    std::string w;
    while (!eof() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_' || peek() == '\'')) {
      w += peek();
      advance();
    }
    return w;
  }

  Statement statement() {
    Statement st;
    st.line = line_;
    st.col = col_;
    st.word = word();
    if (st.word.empty()) error("expected a keyword");
    static const std::vector<std::string> decls{"algebra", "coalgebra", "hopf", "action", "coaction", "pairing", "ideal", "dualelem"};
    static const std::vector<std::string> tasks{"check", "dual", "rat", "smash", "bm", "purity"};
    skip(false);
    if (st.word == "ring") {
      st.kind = StmtKind::Ring;
      st.body = atom();
      return st;
    }
    if (std::find(decls.begin(), decls.end(), st.word) != decls.end()) {
      st.kind = StmtKind::Decl;
      const std::size_t l = line_, c = col_;
      st.name = word();
      if (st.name.empty()) throw NodeError{ErrorKind::ParseError, l, c, "expected a name after '" + st.word + "'"};
      skip(false);
      if (peek() != '=') error("expected '='");
      advance();
      st.body = expr();
      return st;
    }
    if (std::find(tasks.begin(), tasks.end(), st.word) != tasks.end()) {
      st.kind = StmtKind::Task;
      if (peek() == '(') {
        st.call_form = true;
        st.body.kind = Node::Kind::Call;
        st.body.text = st.word;
        st.body.line = st.line;
        st.body.col = st.col;
        st.body.args = arguments(')');
      } else {
        st.body = expr();
      }
      return st;
    }
    throw NodeError{ErrorKind::ParseError, st.line, st.col, "unknown statement '" + st.word + "'"};
  }

  std::vector<Node> arguments(char close) {
    advance();  // opening bracket
    std::vector<Node> out;
    skip(true);
    if (peek() == close) {
      advance();
      return out;
    }
    for (;;) {
      out.push_back(expr());
      skip(true);
      if (peek() == ',') {
        advance();
        continue;
      }
      if (peek() == close) {
        advance();
        return out;
      }
      error(std::string("expected ',' or '") + close + "'");
    }
  }

  Node atom() {
    Node n;
    n.line = line_;
    n.col = col_;
    std::string raw;
    while (!eof() && std::string("()[],;#=\n").find(peek()) == std::string::npos) {
      raw += peek();
      advance();
    }
    // collapse whitespace
    std::string t;
    for (char c : raw) {
      if (c == ' ' || c == '\t' || c == '\r') {
        if (!t.empty() && t.back() != ' ') t += ' ';
      } else {
        t += c;
      }
    }
    while (!t.empty() && t.back() == ' ') t.pop_back();
    if (t.empty()) throw NodeError{ErrorKind::ParseError, n.line, n.col, "expected an expression"};
    n.text = t;
    return n;
  }

  Node expr() {
    skip(true);
    if (peek() == '[') {
      Node n;
      n.kind = Node::Kind::List;
      n.line = line_;
      n.col = col_;
      n.args = arguments(']');
      return n;
    }
    Node n = atom();
    if (peek() == '(') {
      if (!n.is_ident()) throw NodeError{ErrorKind::ParseError, n.line, n.col, "'" + n.text + "' is not a function name"};
      n.kind = Node::Kind::Call;
      n.args = arguments(')');
    }
    return n;
  }
};

inline Scalar parse_number(const CoeffRing& R, const Node& n) {
  if (n.kind != Node::Kind::Atom) fail_at(n, ErrorKind::ParseError, "expected a number");
  std::string t;
  for (char c : n.text)
    if (c != ' ') t += c;
  const std::size_t start = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
  const std::size_t slash = t.find('/');
  auto digits = [&](std::size_t a, std::size_t b) {
    if (a >= b) return false;
    for (std::size_t k = a; k < b; ++k)
      if (!std::isdigit(static_cast<unsigned char>(t[k]))) return false;
    return true;
  };
  const bool ok = slash == std::string::npos ? digits(start, t.size()) : digits(start, slash) && digits(slash + 1, t.size());
  if (!ok) fail_at(n, ErrorKind::ParseError, "'" + n.text + "' is not a number");
  Scalar v(t[0] == '+' ? t.substr(1) : t);
  if (sgn(v.get_den()) == 0) fail_at(n, ErrorKind::ParseError, "zero denominator");
  v.canonicalize();
  if (!is_integral(v) && R.kind() != RingKind::Rationals) {
    const mpz_class den = v.get_den();
    if (!R.is_unit(Scalar(den))) fail_at(n, ErrorKind::ParseError, n.text + " is not defined in " + R.name());
    return R.canon(R.mul(Scalar(v.get_num()), R.inverse(Scalar(den))));
  }
  return R.canon(v);
}

inline long parse_int(const Node& n) {
  const Scalar v = parse_number(CoeffRing::integers(), n);
  if (!is_integral(v) || !v.get_num().fits_slong_p()) fail_at(n, ErrorKind::ParseError, "expected an integer");
  return v.get_num().get_si();
}

/// Sum of terms c * v1^e1 * v2^e2 ... over the given variables.
inline LaurentPoly parse_poly(const CoeffRing& R, const std::vector<std::string>& vars, const Node& n, bool allow_negative) {
  if (n.kind != Node::Kind::Atom) fail_at(n, ErrorKind::ParseError, "expected a polynomial");
  std::string t;
  for (char c : n.text)
    if (c != ' ') t += c;
  std::size_t i = 0;
  auto bad = [&](const std::string& why) { fail_at(n, ErrorKind::ParseError, "polynomial '" + n.text + "': " + why); };
  auto read_digits = [&]() {
    std::string d;
    while (i < t.size() && std::isdigit(static_cast<unsigned char>(t[i]))) d += t[i++];
    return d;
  };
  LaurentPoly out(R, vars.size());
  if (t.empty()) bad("empty");
  while (i < t.size()) {
    bool neg = false;
    if (t[i] == '+' || t[i] == '-') {
      neg = t[i] == '-';
      ++i;
    } else if (i != 0) {
      bad("expected '+' or '-'");
    }
    Scalar coef(1);
    bool have_coef = false;
    if (i < t.size() && std::isdigit(static_cast<unsigned char>(t[i]))) {
      std::string num = read_digits();
      if (i < t.size() && t[i] == '/') {
        ++i;
        const std::string den = read_digits();
        if (den.empty()) bad("missing denominator");
        num += "/" + den;
      }
      Node tmp = n;
      tmp.text = num;
      coef = parse_number(R, tmp);
      have_coef = true;
      if (i < t.size() && t[i] == '*') ++i;
    }
    Exponent e(vars.size(), 0);
    bool have_var = false;
    while (i < t.size() && t[i] != '+' && t[i] != '-') {
      std::size_t best = vars.size(), len = 0;
      for (std::size_t v = 0; v < vars.size(); ++v)
        if (t.compare(i, vars[v].size(), vars[v]) == 0 && vars[v].size() > len) {
          best = v;
          len = vars[v].size();
        }
      if (best == vars.size()) bad("unknown symbol at '" + t.substr(i) + "'");
      i += len;
      long power = 1;
      if (i < t.size() && t[i] == '^') {
        ++i;
        bool pneg = false;
        if (i < t.size() && t[i] == '-') {
          pneg = true;
          ++i;
        }
        const std::string d = read_digits();
        if (d.empty()) bad("missing exponent");
        power = std::stol(d) * (pneg ? -1 : 1);
      }
      if (power < 0 && !allow_negative) bad("negative exponent outside a Laurent family");
      e[best] += power;
      have_var = true;
      if (i < t.size() && t[i] == '*') ++i;
    }
    if (!have_coef && !have_var) bad("empty term");
    out.add_term(e, neg ? R.neg(coef) : coef);
  }
  return out;
}

inline UPoly to_upoly(const LaurentPoly& p, const Node& n) {
  if (p.nvars() != 1) fail_at(n, ErrorKind::InvalidArgument, "expected a polynomial in one variable");
  Vector c;
  for (const auto& [e, a] : p.terms()) {
    if (e[0] < 0) fail_at(n, ErrorKind::InvalidArgument, "negative exponent");
    const auto k = static_cast<std::size_t>(e[0]);
    if (c.size() <= k) c.resize(k + 1, Scalar(0));
    c[k] = a;
  }
  return UPoly(p.ring(), c);
}

inline Vector parse_vector(const CoeffRing& R, const Node& n) {
  if (n.kind != Node::Kind::List) fail_at(n, ErrorKind::ParseError, "expected a list of numbers");
  Vector v;
  for (const auto& x : n.args) v.push_back(parse_number(R, x));
  return v;
}

/// Rows of a matrix written as [[..], [..]]; cols is required when there are no rows.
inline RMatrix parse_matrix(const CoeffRing& R, const Node& n, std::optional<std::size_t> cols = std::nullopt) {
  if (n.kind != Node::Kind::List) fail_at(n, ErrorKind::ParseError, "expected a matrix [[...], ...]");
  std::vector<Vector> rows;
  for (const auto& r : n.args) rows.push_back(parse_vector(R, r));
  const std::size_t c = rows.empty() ? cols.value_or(0) : rows.front().size();
  for (std::size_t k = 0; k < rows.size(); ++k)
    if (rows[k].size() != c) fail_at(n.args[k], ErrorKind::ShapeMismatch, "row " + std::to_string(k) + " has " + std::to_string(rows[k].size()) + " entries, expected " + std::to_string(c));
  if (cols && c != *cols) fail_at(n, ErrorKind::ShapeMismatch, "expected " + std::to_string(*cols) + " columns");
  return RMatrix::from_rows(R, c, rows);
}

inline std::vector<std::string> parse_labels(const Node& n) {
  if (n.kind != Node::Kind::List) fail_at(n, ErrorKind::ParseError, "expected a list of labels");
  std::vector<std::string> out;
  for (const auto& x : n.args) {
    if (x.kind != Node::Kind::Atom) fail_at(x, ErrorKind::ParseError, "expected a label");
    out.push_back(x.text);
  }
  return out;
}

inline GroupTable parse_group(const Node& n) {
  if (n.kind != Node::Kind::Atom) fail_at(n, ErrorKind::ParseError, "expected a group name");
  auto one = [&](const std::string& g) -> GroupTable {
    if (g == "S3") return symmetric_group_s3();
    if (g == "V4" || g == "Klein") return klein_group();
    if (g == "C1" || g == "trivial") return trivial_group();
    if (g.size() > 1 && g[0] == 'C' && g.find_first_not_of("0123456789", 1) == std::string::npos) {
      const unsigned long k = std::stoul(g.substr(1));
      if (k == 0 || k > 64) fail_at(n, ErrorKind::InvalidArgument, "cyclic group order must be in 1..64");
      return cyclic_group(k);
    }
    fail_at(n, ErrorKind::InvalidArgument, "unknown group '" + g + "' (C<n>, V4, S3 or products like C2xC3)");
  };
  std::optional<GroupTable> g;
  std::size_t start = 0;
  const std::string& t = n.text;
  for (;;) {
    const std::size_t x = t.find('x', start);
    const GroupTable f = one(t.substr(start, x == std::string::npos ? std::string::npos : x - start));
    g = g ? direct_product(*g, f) : f;
    if (x == std::string::npos) break;
    start = x + 1;
  }
  return *g;
}

inline std::optional<Flavor> parse_flavor_text(const std::string& t) {
  if (t == "primitive") return Flavor::Primitive;
  if (t == "group_like" || t == "grouplike") return Flavor::GroupLike;
  return std::nullopt;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Objects

/// A finite free algebra, a monomial family, or a presented quotient
/// R[x]/(relations) of a univariate polynomial ring (possibly not free).
struct AlgebraObj {
  std::optional<SCAlgebra> finite;
  std::optional<FilteredAlgebra> family;
  std::vector<UPoly> relations;
  bool presented = false;

  const FilteredAlgebra& filtered() const { return *family; }
};

struct IdealObj {
  FilteredAlgebra owner;
  IdealSpec ideal;
};

struct PairingObj {
  std::optional<HopfPairing> hopf;
  Pairing rational;
};

using Object = std::variant<AlgebraObj, CoalgebraData, HopfData, ModuleAlgebraAction, ComoduleAlgebraData, PairingObj, IdealObj, DualElement>;

inline const char* object_kind(const Object& o) {
  static const char* names[] = {"algebra", "coalgebra", "hopf", "action", "coaction", "pairing", "ideal", "dualelem"};
  return names[o.index()];
}

struct Entry {
  Object object;
  CoeffRing ring;
};

/// One resolved task argument.
using Value = std::variant<AlgebraObj, CoalgebraData, HopfData, ModuleAlgebraAction, ComoduleAlgebraData, PairingObj, IdealObj, DualElement,
                           long, Flavor, RMatrix, std::vector<RMatrix>, Node>;

struct TaskSpec {
  std::size_t statement;  // index into SessionSpec::statements
  std::string key;        // e.g. "check hopf", "bm"
  CoeffRing ring;
  std::vector<Value> args;
};

struct SessionSpec {
  std::vector<Statement> statements;
  std::map<std::string, Entry> objects;
  std::vector<TaskSpec> tasks;

  /// Canonical text: one statement per line.
  std::string print() const {
    std::string out;
    for (const auto& s : statements) out += s.str() + "\n";
    return out;
  }
};

struct ParseResult {
  std::optional<SessionSpec> spec;
  std::vector<Diagnostic> errors;
  bool ok() const { return errors.empty(); }
};

namespace detail {

class Resolver {
 public:
  std::map<std::string, Entry> objects;
  std::optional<CoeffRing> ring;

  const CoeffRing& R(const Node& at) const {
    if (!ring) fail_at(at, ErrorKind::InvalidArgument, "no ring declared yet");
    return *ring;
  }

  const Object& lookup(const Node& n) const {
    if (!n.is_ident()) fail_at(n, ErrorKind::ParseError, "expected a name, got '" + print(n) + "'");
    const auto it = objects.find(n.text);
    if (it == objects.end()) fail_at(n, ErrorKind::UnknownReference, "'" + n.text + "' is not declared");
    if (it->second.ring != R(n)) fail_at(n, ErrorKind::RingMismatch, "'" + n.text + "' lives over " + it->second.ring.name() + ", session ring is " + R(n).name());
    return it->second.object;
  }

  template <class T>
  const T& lookup_as(const Node& n, const char* kind) const {
    const Object& o = lookup(n);
    if (const T* t = std::get_if<T>(&o)) return *t;
    fail_at(n, ErrorKind::InvalidArgument, "'" + n.text + "' is a " + object_kind(o) + ", expected " + kind);
  }

  static void arity(const Node& n, std::size_t lo, std::size_t hi) {
    if (n.args.size() < lo || n.args.size() > hi)
      fail_at(n, ErrorKind::ParseError, n.text + "(...) takes " + (lo == hi ? std::to_string(lo) : std::to_string(lo) + ".." + std::to_string(hi)) + " arguments");
  }

  static AlgebraObj finite_obj(SCAlgebra a) {
    AlgebraObj o;
    o.family = FilteredAlgebra::finite(a);
    o.finite = std::move(a);
    return o;
  }

  AlgebraObj algebra(const Node& n) const {
    const CoeffRing& r = R(n);
    if (n.kind == Node::Kind::Atom) {
      const Object& o = lookup(n);
      if (const auto* a = std::get_if<AlgebraObj>(&o)) return *a;
      if (const auto* h = std::get_if<HopfData>(&o)) return finite_obj(h->alg);
      fail_at(n, ErrorKind::InvalidArgument, "'" + n.text + "' is not an algebra");
    }
    if (n.kind != Node::Kind::Call) fail_at(n, ErrorKind::ParseError, "expected an algebra expression");
    const std::string& f = n.text;
    if (f == "group") {
      arity(n, 1, 1);
      return finite_obj(group_algebra(r, parse_group(n.args[0])));
    }
    if (f == "poly" || f == "laurent") {
      arity(n, 1, 8);
      std::vector<std::string> vars;
      for (const auto& v : n.args) {
        if (!v.is_ident()) fail_at(v, ErrorKind::ParseError, "expected a variable name");
        vars.push_back(v.text);
      }
      AlgebraObj o;
      o.family = f == "poly" ? FilteredAlgebra::polynomial(r, vars) : FilteredAlgebra::laurent(r, vars);
      return o;
    }
    if (f == "quotient") {
      arity(n, 2, 2);
      AlgebraObj base = algebra(n.args[0]);
      if (!base.family || base.family->kind() != FamilyKind::Polynomial || base.family->nvars() != 1 || base.presented)
        fail_at(n.args[0], ErrorKind::InvalidArgument, "quotient needs a polynomial ring in one variable");
      if (n.args[1].kind != Node::Kind::List || n.args[1].args.empty()) fail_at(n.args[1], ErrorKind::ParseError, "expected a nonempty list of relations");
      AlgebraObj o;
      o.family = base.family;
      o.presented = true;
      for (const auto& g : n.args[1].args) o.relations.push_back(to_upoly(parse_poly(r, base.family->vars(), g, false), g));
      if (o.relations.size() == 1 && o.relations[0].degree() > 0 && r.is_unit(o.relations[0].leading()))
        o.finite = univariate_quotient(o.relations[0].scale(r.inverse(o.relations[0].leading())), base.family->vars()[0]);
      return o;
    }
    if (f == "table") {
      arity(n, 3, 3);
      const auto labels = parse_labels(n.args[0]);
      return finite_obj(SCAlgebra::make(r, labels, parse_vector(r, n.args[2]), parse_vector(r, n.args[1])));
    }
    if (f == "tensor") {
      arity(n, 2, 2);
      const AlgebraObj a = algebra(n.args[0]), b = algebra(n.args[1]);
      if (a.presented || b.presented) fail_at(n, ErrorKind::InvalidArgument, "tensor of presented quotients is not supported");
      if (a.finite && b.finite) return finite_obj(tensor_algebra(*a.finite, *b.finite));
      AlgebraObj o;
      o.family = FilteredAlgebra::tensor(*a.family, *b.family);
      return o;
    }
    if (f == "dual") {
      arity(n, 1, 1);
      return finite_obj(dual_algebra(coalgebra(n.args[0])));
    }
    if (f == "truncate") {
      arity(n, 1, 1);
      const IdealObj i = ideal(n.args[0]);
      return finite_obj(Truncation(i.owner, i.ideal).quotient());
    }
    if (f == "smash") {
      arity(n, 1, 1);
      return finite_obj(smash_product(action(n.args[0])).alg);
    }
    fail_at(n, ErrorKind::ParseError, "unknown algebra constructor '" + f + "'");
  }

  SCAlgebra finite_algebra(const Node& n) const {
    const AlgebraObj a = algebra(n);
    if (!a.finite) fail_at(n, ErrorKind::InvalidArgument, "expected a finite free algebra");
    return *a.finite;
  }

  CoalgebraData coalgebra(const Node& n) const {
    const CoeffRing& r = R(n);
    if (n.kind == Node::Kind::Atom) {
      const Object& o = lookup(n);
      if (const auto* c = std::get_if<CoalgebraData>(&o)) return *c;
      if (const auto* h = std::get_if<HopfData>(&o)) return h->coalg;
      fail_at(n, ErrorKind::InvalidArgument, "'" + n.text + "' is not a coalgebra");
    }
    if (n.kind != Node::Kind::Call) fail_at(n, ErrorKind::ParseError, "expected a coalgebra expression");
    if (n.text == "table") {
      arity(n, 3, 3);
      return CoalgebraData(r, parse_labels(n.args[0]), parse_vector(r, n.args[2]), parse_vector(r, n.args[1]));
    }
    if (n.text == "dual") {
      arity(n, 1, 1);
      return dual_coalgebra(finite_algebra(n.args[0]));
    }
    if (n.text == "tensor") {
      arity(n, 2, 2);
      return tensor_coalgebra(coalgebra(n.args[0]), coalgebra(n.args[1]));
    }
    fail_at(n, ErrorKind::ParseError, "unknown coalgebra constructor '" + n.text + "'");
  }

  Flavor flavor(const Node& n) const {
    if (n.kind == Node::Kind::Atom)
      if (auto f = parse_flavor_text(n.text)) return *f;
    fail_at(n, ErrorKind::ParseError, "expected primitive or group_like");
  }

  HopfData hopf(const Node& n) const {
    const CoeffRing& r = R(n);
    if (n.kind == Node::Kind::Atom) return lookup_as<HopfData>(n, "hopf");
    if (n.kind != Node::Kind::Call) fail_at(n, ErrorKind::ParseError, "expected a hopf expression");
    if (n.text == "group") {
      arity(n, 1, 1);
      return group_hopf(r, parse_group(n.args[0]));
    }
    if (n.text == "dual") {
      arity(n, 1, 1);
      return convolution_dual(hopf(n.args[0]));
    }
    if (n.text == "truncation") {
      arity(n, 2, 2);
      const IdealObj i = ideal(n.args[0]);
      return polynomial_bialgebras(i.owner, flavor(n.args[1]), i.ideal);
    }
    if (n.text == "table") {
      arity(n, 2, 3);
      HopfData h(finite_algebra(n.args[0]), coalgebra(n.args[1]));
      if (n.args.size() == 3) {
        h.antipode = parse_matrix(r, n.args[2], h.rank());
        if (h.antipode->rows() != h.rank()) fail_at(n.args[2], ErrorKind::ShapeMismatch, "antipode must be rank x rank");
      } else {
        h.antipode = solve_antipode(h);
      }
      return h;
    }
    fail_at(n, ErrorKind::ParseError, "unknown hopf constructor '" + n.text + "'");
  }

  IdealObj ideal(const Node& n) const {
    if (n.kind == Node::Kind::Atom) return lookup_as<IdealObj>(n, "ideal");
    if (n.kind != Node::Kind::Call) fail_at(n, ErrorKind::ParseError, "expected an ideal expression");
    if (n.text == "generated") {
      arity(n, 2, 2);
      const AlgebraObj a = algebra(n.args[0]);
      if (a.presented || !a.family || (a.family->kind() != FamilyKind::Polynomial && a.family->kind() != FamilyKind::Laurent))
        fail_at(n.args[0], ErrorKind::InvalidArgument, "generated(...) needs a polynomial or Laurent family");
      const FilteredAlgebra& fa = *a.family;
      if (n.args[1].kind != Node::Kind::List || n.args[1].args.size() != fa.nvars())
        fail_at(n.args[1], ErrorKind::InvalidArgument, "expected one generator per variable");
      std::vector<UPoly> gens;
      for (std::size_t v = 0; v < fa.nvars(); ++v) {
        const Node& g = n.args[1].args[v];
        const LaurentPoly p = parse_poly(R(n), fa.vars(), g, false);
        for (const auto& [e, c] : p.terms())
          for (std::size_t w = 0; w < e.size(); ++w)
            if (w != v && e[w] != 0) fail_at(g, ErrorKind::InvalidArgument, "generator " + std::to_string(v) + " must only involve " + fa.vars()[v]);
        Vector c;
        for (const auto& [e, a2] : p.terms()) {
          const auto k = static_cast<std::size_t>(e[v]);
          if (c.size() <= k) c.resize(k + 1, Scalar(0));
          c[k] = a2;
        }
        gens.push_back(UPoly(R(n), c));
      }
      IdealObj o{fa, IdealSpec::per_variable(fa.kind(), gens)};
      validate_ideal(o.owner, o.ideal);
      return o;
    }
    if (n.text == "zero") {
      arity(n, 1, 1);
      return IdealObj{FilteredAlgebra::finite(finite_algebra(n.args[0])), IdealSpec::zero()};
    }
    if (n.text == "tensor") {
      arity(n, 2, 2);
      const IdealObj a = ideal(n.args[0]), b = ideal(n.args[1]);
      return IdealObj{FilteredAlgebra::tensor(a.owner, b.owner), IdealSpec::tensor(a.ideal, b.ideal)};
    }
    if (n.text == "product") {
      arity(n, 2, 2);
      const IdealObj a = ideal(n.args[0]), b = ideal(n.args[1]);
      if (a.owner != b.owner) fail_at(n, ErrorKind::OwnerMismatch, "ideals of different algebras");
      return IdealObj{a.owner, product_ideal(a.owner, a.ideal, b.ideal)};
    }
    fail_at(n, ErrorKind::ParseError, "unknown ideal constructor '" + n.text + "'");
  }

  ModuleAlgebraAction action(const Node& n) const {
    if (n.kind == Node::Kind::Atom) return lookup_as<ModuleAlgebraAction>(n, "action");
    if (n.kind != Node::Kind::Call) fail_at(n, ErrorKind::ParseError, "expected an action expression");
    if (n.text == "matrix") {
      arity(n, 3, 3);
      const HopfData h = hopf(n.args[0]);
      const SCAlgebra a = finite_algebra(n.args[1]);
      const RMatrix m = parse_matrix(R(n), n.args[2], a.rank());
      if (m.rows() != h.rank() * a.rank()) fail_at(n.args[2], ErrorKind::ShapeMismatch, "action needs rank(H) rank(A) rows");
      return ModuleAlgebraAction{h, a, m};
    }
    if (n.text == "u_on_h") {
      arity(n, 1, 1);
      return u_on_h(hopf_pairing(n.args[0]));
    }
    if (n.text == "h_on_u") {
      arity(n, 1, 1);
      return h_on_u(hopf_pairing(n.args[0]));
    }
    if (n.text == "induced") {
      arity(n, 2, 2);
      return action_from_coaction(coaction(n.args[0]), hopf_pairing(n.args[1]));
    }
    fail_at(n, ErrorKind::ParseError, "unknown action constructor '" + n.text + "'");
  }

  ComoduleAlgebraData coaction(const Node& n) const {
    const CoeffRing& r = R(n);
    if (n.kind == Node::Kind::Atom) return lookup_as<ComoduleAlgebraData>(n, "coaction");
    if (n.kind != Node::Kind::Call) fail_at(n, ErrorKind::ParseError, "expected a coaction expression");
    if (n.text == "matrix") {
      arity(n, 3, 3);
      const HopfData u = hopf(n.args[0]);
      const SCAlgebra a = finite_algebra(n.args[1]);
      const RMatrix m = parse_matrix(r, n.args[2], a.rank() * u.rank());
      if (m.rows() != a.rank()) fail_at(n.args[2], ErrorKind::ShapeMismatch, "coaction needs rank(A) rows");
      return ComoduleAlgebraData{u, a, m};
    }
    if (n.text == "regular") {
      arity(n, 1, 1);
      const HopfData u = hopf(n.args[0]);
      return ComoduleAlgebraData{u, u.alg, u.coalg.delta_matrix()};
    }
    if (n.text == "trivial") {
      arity(n, 2, 2);
      const HopfData u = hopf(n.args[0]);
      const SCAlgebra a = finite_algebra(n.args[1]);
      RMatrix m(r, a.rank(), a.rank() * u.rank());
      for (std::size_t j = 0; j < a.rank(); ++j)
        for (std::size_t i = 0; i < u.rank(); ++i) m.set(j, j * u.rank() + i, u.alg.unit()[i]);
      return ComoduleAlgebraData{u, a, m};
    }
    fail_at(n, ErrorKind::ParseError, "unknown coaction constructor '" + n.text + "'");
  }

  PairingObj pairing(const Node& n) const {
    if (n.kind == Node::Kind::Atom) return lookup_as<PairingObj>(n, "pairing");
    if (n.kind != Node::Kind::Call) fail_at(n, ErrorKind::ParseError, "expected a pairing expression");
    auto from_hopf = [](HopfPairing p) { return PairingObj{p, as_pairing(p)}; };
    if (n.text == "full") {
      arity(n, 1, 1);
      return from_hopf(full_dual_pairing(hopf(n.args[0])));
    }
    if (n.text == "counit") {
      arity(n, 1, 1);
      return from_hopf(counit_pairing(hopf(n.args[0])));
    }
    if (n.text == "matrix") {
      arity(n, 3, 3);
      const HopfData h = hopf(n.args[0]), u = hopf(n.args[1]);
      const RMatrix g = parse_matrix(R(n), n.args[2], h.rank());
      if (g.rows() != u.rank()) fail_at(n.args[2], ErrorKind::ShapeMismatch, "gram matrix must be rank(U) x rank(H)");
      return from_hopf(HopfPairing{h, u, g});
    }
    if (n.text == "canonical") {
      arity(n, 1, 1);
      return PairingObj{std::nullopt, canonical_pairing(coalgebra(n.args[0]))};
    }
    if (n.text == "finite") {
      arity(n, 1, 1);
      const IdealObj i = ideal(n.args[0]);
      return PairingObj{std::nullopt, finite_dual_pairing(i.owner, i.ideal)};
    }
    if (n.text == "tensor") {
      arity(n, 2, 2);
      return PairingObj{std::nullopt, induced_tensor_pairing(pairing(n.args[0]).rational, pairing(n.args[1]).rational)};
    }
    fail_at(n, ErrorKind::ParseError, "unknown pairing constructor '" + n.text + "'");
  }

  HopfPairing hopf_pairing(const Node& n) const {
    const PairingObj p = pairing(n);
    if (!p.hopf) fail_at(n, ErrorKind::InvalidArgument, "expected a Hopf pairing (full, counit or matrix)");
    return *p.hopf;
  }

  DualElement dualelem(const Node& n) const {
    const CoeffRing& r = R(n);
    if (n.kind == Node::Kind::Atom) return lookup_as<DualElement>(n, "dualelem");
    if (n.kind != Node::Kind::Call) fail_at(n, ErrorKind::ParseError, "expected a dual element expression");
    if (n.text == "functional") {
      arity(n, 2, 2);
      const IdealObj i = ideal(n.args[0]);
      return dual_element(i.owner, i.ideal, parse_vector(r, n.args[1]));
    }
    if (n.text == "eval") {
      arity(n, 2, 2);
      const AlgebraObj a = algebra(n.args[0]);
      return evaluation_functional(a.filtered(), parse_vector(r, n.args[1]));
    }
    if (n.text == "sequence") {
      arity(n, 3, 3);
      const AlgebraObj a = algebra(n.args[0]);
      if (a.family->nvars() != 1) fail_at(n.args[0], ErrorKind::InvalidArgument, "sequence(...) needs a family in one variable");
      const UPoly q = to_upoly(parse_poly(r, a.family->vars(), n.args[1], false), n.args[1]);
      return functional_from_sequence(a.filtered(), q, parse_vector(r, n.args[2]));
    }
    fail_at(n, ErrorKind::ParseError, "unknown dual element constructor '" + n.text + "'");
  }

  Object declare(const std::string& kind, const Node& body) const {
    if (kind == "algebra") return algebra(body);
    if (kind == "coalgebra") return coalgebra(body);
    if (kind == "hopf") return hopf(body);
    if (kind == "action") return action(body);
    if (kind == "coaction") return coaction(body);
    if (kind == "pairing") return pairing(body);
    if (kind == "ideal") return ideal(body);
    return dualelem(body);
  }

  // Argument codes: A algebra, C coalgebra, H hopf, a action, c coaction,
  // P pairing, I ideal, D dual element, n integer, f flavor, M matrix,
  // L list of matrices, X raw node.
  static const std::map<std::string, std::string>& signatures() {
    static const std::map<std::string, std::string> s{
        {"check algebra", "A"},     {"check coalgebra", "C"}, {"check bialgebra", "H"}, {"check hopf", "H"},
        {"check action", "a"},      {"check coaction", "c"},  {"check pairing", "P"},   {"check purity", "P"},
        {"dual comultiply", "D"},   {"dual product", "DDf"},  {"dual antipode", "Df"},  {"dual counit", "Df"},
        {"dual member", "Dn"},      {"dual tensor", "DD"},    {"dual refine", "DI"},    {"rat pairing", "P"},
        {"rat tensor", "PP"},       {"rat alpha", "Pn"},      {"rat submodule", "PXL"}, {"rat comodule", "PL"},
        {"smash product", "a"},     {"smash lambda", "P"},    {"smash rho", "P"},       {"smash psi", "P"},
        {"smash rl", "P"},          {"bm", "cP"},             {"purity explore", "Ann"}, {"purity probe", "Ann"},
        {"purity inclusion", "XX"},
    };
    return s;
  }

  TaskSpec task(const Statement& st, std::size_t index) const {
    const Node& b = st.body;
    std::string key = st.word;
    if (!st.call_form) {
      if (b.kind != Node::Kind::Call) fail_at(b, ErrorKind::ParseError, "expected " + st.word + " <op>(...)");
      key += " " + b.text;
    }
    const auto it = signatures().find(key);
    if (it == signatures().end()) fail_at(b, ErrorKind::ParseError, "unknown task '" + key + "'");
    const std::string& sig = it->second;
    if (b.args.size() != sig.size())
      fail_at(b, ErrorKind::ParseError, key + " takes " + std::to_string(sig.size()) + " arguments, got " + std::to_string(b.args.size()));
    TaskSpec t{index, key, R(b), {}};
    for (std::size_t k = 0; k < sig.size(); ++k) {
      const Node& a = b.args[k];
      switch (sig[k]) {
        case 'A': t.args.emplace_back(algebra(a)); break;
        case 'C': t.args.emplace_back(coalgebra(a)); break;
        case 'H': t.args.emplace_back(hopf(a)); break;
        case 'a': t.args.emplace_back(action(a)); break;
        case 'c': t.args.emplace_back(coaction(a)); break;
        case 'P': t.args.emplace_back(pairing(a)); break;
        case 'I': t.args.emplace_back(ideal(a)); break;
        case 'D': t.args.emplace_back(dualelem(a)); break;
        case 'n': t.args.emplace_back(parse_int(a)); break;
        case 'f': t.args.emplace_back(flavor(a)); break;
        case 'L': {
          if (a.kind != Node::Kind::List) fail_at(a, ErrorKind::ParseError, "expected a list of matrices");
          std::vector<RMatrix> ms;
          for (const auto& m : a.args) ms.push_back(parse_matrix(R(a), m));
          t.args.emplace_back(ms);
          break;
        }
        default: t.args.emplace_back(a); break;
      }
    }
    return t;
  }
};

}  // namespace detail

/// Parses and resolves a session. Objects are built and shape-checked here;
/// axioms are left to the tasks.
inline ParseResult parse_session(const std::string& text) {
  ParseResult out;
  SessionSpec spec;
  try {
    spec.statements = detail::Parser(text).statements();
  } catch (const detail::NodeError& e) {
    out.errors.push_back({e.kind, e.line, e.col, e.message});
    return out;
  }
  detail::Resolver res;
  for (std::size_t k = 0; k < spec.statements.size(); ++k) {
    const Statement& st = spec.statements[k];
    try {
      try {
        switch (st.kind) {
          case StmtKind::Ring:
            try {
              res.ring = parse_ring(st.body.text);
            } catch (const Error& e) {
              detail::fail_at(st.body, ErrorKind::ParseError, "unknown ring '" + st.body.text + "' (Z, Q, Zmod n, Fp p)");
            }
            break;
          case StmtKind::Decl: {
            if (res.objects.count(st.name)) throw detail::NodeError{ErrorKind::InvalidArgument, st.line, st.col, "'" + st.name + "' is already declared"};
            Object o = res.declare(st.word, st.body);
            res.objects.emplace(st.name, Entry{std::move(o), *res.ring});
            break;
          }
          case StmtKind::Task: spec.tasks.push_back(res.task(st, k)); break;
        }
      } catch (const Error& e) {
        throw detail::NodeError{e.kind(), st.body.line, st.body.col, e.what()};
      }
    } catch (const detail::NodeError& e) {
      out.errors.push_back({e.kind, e.line, e.col, e.message});
    }
  }
  spec.objects = std::move(res.objects);
  if (out.errors.empty()) out.spec = std::move(spec);
  return out;
}

inline SessionSpec parse_session_or_throw(const std::string& text) {
  ParseResult r = parse_session(text);
  if (!r.ok()) throw SessionError(r.errors);
  return std::move(*r.spec);
}

/// Syntax-only parse, used for the print/parse round trip.
inline std::vector<Statement> parse_statements(const std::string& text) {
  try {
    return detail::Parser(text).statements();
  } catch (const detail::NodeError& e) {
    throw SessionError({{e.kind, e.line, e.col, e.message}});
  }
}

// ---------------------------------------------------------------------------
// Reports

inline Json scalar_json(const Scalar& s) { return s.get_str(); }

inline Json vector_json(const Vector& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(scalar_json(x));
  return a;
}

inline Json matrix_json(const RMatrix& m) {
  Json a = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(vector_json(m.row(i)));
  return a;
}

inline Json dual_json(const DualElement& f) {
  return Json{{"ideal", ideal_str(f.owner(), f.ideal())}, {"values", vector_json(f.functional())}};
}

inline std::vector<std::string> failure_strings(const AxiomReport& r) {
  std::vector<std::string> out;
  for (const auto& f : r) out.push_back(report_str({f}));
  return out;
}

struct TaskResult {
  std::string task;
  std::string verdict;  // PASS, FAIL or ERROR
  std::vector<std::string> witnesses;
  Json artifacts = Json::object();
};

struct Report {
  std::vector<TaskResult> tasks;

  bool all_pass() const {
    for (const auto& t : tasks)
      if (t.verdict != "PASS") return false;
    return true;
  }

  Json to_json() const {
    Json j;
    j["schema"] = 1;
    j["tasks"] = Json::array();
    for (const auto& t : tasks) {
      Json e;
      e["task"] = t.task;
      e["verdict"] = t.verdict;
      e["witnesses"] = t.witnesses;
      e["artifacts"] = t.artifacts;
      j["tasks"].push_back(e);
    }
    return j;
  }

  std::string text(bool verbose) const {
    std::ostringstream os;
    for (const auto& t : tasks) {
      os << t.verdict << "  " << t.task << "\n";
      for (const auto& w : t.witnesses) os << "    " << w << "\n";
      if (verbose && !t.artifacts.empty()) {
        for (const auto& [k, v] : t.artifacts.items()) {
          if (v.is_string())
            os << "    " << k << ":\n" << indent(v.get<std::string>()) ;
          else
            os << "    " << k << " = " << v.dump() << "\n";
        }
      }
    }
    std::size_t pass = 0;
    for (const auto& t : tasks) pass += t.verdict == "PASS";
    os << pass << "/" << tasks.size() << " tasks passed\n";
    return os.str();
  }

 private:
  static std::string indent(const std::string& s) {
    std::string out, line;
    std::istringstream is(s);
    while (std::getline(is, line)) out += "      " + line + "\n";
    return out;
  }
};

namespace detail {

template <class T>
const T& arg(const TaskSpec& t, std::size_t k) {
  return std::get<T>(t.args[k]);
}

inline void verdict(TaskResult& r, const AxiomReport& fails) {
  r.verdict = fails.empty() ? "PASS" : "FAIL";
  r.witnesses = failure_strings(fails);
}

inline FPModule battery_module(const CoeffRing& R, long order) {
  return order == 0 ? FPModule::free(R, 1) : FPModule::cyclic(R, Scalar(order));
}

inline AModule inline_module(const PairingObj& p, const RMatrix& relations, const std::vector<RMatrix>& act) {
  const Pairing& pr = p.rational;
  const CoeffRing& R = pr.ring();
  if (act.empty()) throw Error(ErrorKind::InvalidArgument, "module needs action matrices");
  const std::size_t g = act.front().rows();
  for (const auto& m : act)
    if (m.rows() != g || m.cols() != g) throw Error(ErrorKind::ShapeMismatch, "action matrices must be square of equal size");
  if (relations.cols() != g) throw Error(ErrorKind::ShapeMismatch, "relations must have one column per generator");
  return AModule{FPModule(R, g, relations), pr.alg(), act};
}

inline void run_one(const SessionSpec& spec, const TaskSpec& t, TaskResult& r) {
  const std::string& k = t.key;
  const CoeffRing& R = t.ring;
  r.verdict = "PASS";
  if (k == "check algebra") {
    const AlgebraObj& a = arg<AlgebraObj>(t, 0);
    if (a.finite) {
      verdict(r, a.finite->check());
      r.artifacts["rank"] = a.finite->rank();
    } else if (a.presented) {
      std::string rels;
      for (const auto& q : a.relations) rels += (rels.empty() ? "" : ", ") + q.str(a.family->vars()[0]);
      r.artifacts["presentation"] = a.family->describe() + "/(" + rels + ")";
    } else {
      r.artifacts["family"] = a.family->describe();
    }
  } else if (k == "check coalgebra") {
    verdict(r, check_coalgebra(arg<CoalgebraData>(t, 0)));
  } else if (k == "check bialgebra") {
    verdict(r, check_bialgebra(arg<HopfData>(t, 0)));
  } else if (k == "check hopf") {
    const HopfData& h = arg<HopfData>(t, 0);
    verdict(r, check_hopf(h));
    if (h.antipode) r.artifacts["antipode"] = matrix_json(*h.antipode);
  } else if (k == "check action") {
    verdict(r, check_module_algebra(arg<ModuleAlgebraAction>(t, 0)));
  } else if (k == "check coaction") {
    verdict(r, check_comodule_algebra(arg<ComoduleAlgebraData>(t, 0)));
  } else if (k == "check pairing" || k == "rat pairing") {
    const PairingObj& p = arg<PairingObj>(t, 0);
    AxiomReport fails = (k == "check pairing" && p.hopf) ? check_hopf_pairing(*p.hopf) : AxiomReport{};
    const PairingReport pr = check_rational_pairing(p.rational);
    for (const auto& f : pr.axioms) fails.push_back(f);
    verdict(r, fails);
    for (const auto& [name, ok] : pr.battery) {
      r.artifacts["alpha injective"][name] = ok;
      if (!ok) r.witnesses.push_back("alpha not injective for " + name);
    }
    if (!pr.valid()) r.verdict = "FAIL";
  } else if (k == "check purity") {
    const PairingObj& p = arg<PairingObj>(t, 0);
    if (!p.hopf) throw Error(ErrorKind::InvalidArgument, "check purity needs a Hopf pairing");
    const PurityVerdict v = u_purity(*p.hopf);
    r.verdict = v.pure ? "PASS" : "FAIL";
    if (!v.pure) r.witnesses.push_back("U (x) " + v.witness_module->describe() + " -> H* (x) " + v.witness_module->describe() + " kills " + vec_str(v.kernel_element));
  } else if (k == "dual comultiply") {
    Json pairs = Json::array();
    for (const auto& [g, h] : dual_comultiply(arg<DualElement>(t, 0))) pairs.push_back(Json{{"left", dual_json(g)}, {"right", dual_json(h)}});
    r.artifacts["coproduct"] = pairs;
  } else if (k == "dual product" || k == "dual antipode" || k == "dual counit") {
    const DualElement& f = arg<DualElement>(t, 0);
    const DualBialgebra b(f.owner(), arg<Flavor>(t, k == "dual product" ? 2 : 1));
    if (k == "dual product")
      r.artifacts["product"] = dual_json(b.product(f, arg<DualElement>(t, 1)));
    else if (k == "dual antipode")
      r.artifacts["antipode"] = dual_json(b.antipode(f));
    else
      r.artifacts["counit"] = scalar_json(b.counit(f));
  } else if (k == "dual member") {
    const DualElement& f = arg<DualElement>(t, 0);
    const long bound = arg<long>(t, 1);
    if (bound <= 0) throw Error(ErrorKind::InvalidArgument, "bound must be positive");
    const auto q = membership_annihilator(sequence_of(f, 2 * static_cast<std::size_t>(bound)), static_cast<std::size_t>(bound));
    if (q) {
      r.artifacts["annihilator"] = q->str(f.owner().vars()[0]);
    } else {
      r.verdict = "FAIL";
      r.witnesses.push_back("no monic annihilator of degree <= " + std::to_string(bound));
      r.artifacts["annihilator"] = nullptr;
    }
  } else if (k == "dual tensor") {
    r.artifacts["tensor"] = dual_json(tensor_dual_forward(arg<DualElement>(t, 0), arg<DualElement>(t, 1)));
  } else if (k == "dual refine") {
    r.artifacts["refined"] = dual_json(refine(arg<DualElement>(t, 0), arg<IdealObj>(t, 1).ideal));
  } else if (k == "rat tensor") {
    const PairingReport pr = check_rational_pairing(induced_tensor_pairing(arg<PairingObj>(t, 0).rational, arg<PairingObj>(t, 1).rational));
    r.verdict = pr.valid() ? "PASS" : "FAIL";
    if (!pr.valid()) r.witnesses.push_back(pr.describe());
  } else if (k == "rat alpha") {
    const long order = arg<long>(t, 1);
    const AlphaReport a = alpha_map(battery_module(R, order), arg<PairingObj>(t, 0).rational);
    r.verdict = a.injective ? "PASS" : "FAIL";
    if (!a.injective) r.witnesses.push_back("kernel element " + vec_str(a.witness));
    r.artifacts["matrix"] = matrix_json(a.map.matrix());
  } else if (k == "rat submodule") {
    const PairingObj& p = arg<PairingObj>(t, 0);
    const auto& act = arg<std::vector<RMatrix>>(t, 2);
    const std::size_t g = act.empty() ? 0 : act.front().rows();
    const RMatrix rel = parse_matrix(R, arg<Node>(t, 1), g);
    const AModule mod = inline_module(p, rel, act);
    const AxiomReport mr = check_module(mod);
    if (!mr.empty()) {
      verdict(r, mr);
      return;
    }
    const Submodule s = rat_submodule(mod, p.rational);
    r.artifacts["generators"] = matrix_json(s.generators);
    r.artifacts["whole"] = is_whole(s);
    r.artifacts["zero"] = is_zero_submodule(s);
  } else if (k == "rat comodule") {
    const PairingObj& p = arg<PairingObj>(t, 0);
    const auto& act = arg<std::vector<RMatrix>>(t, 1);
    const std::size_t g = act.empty() ? 0 : act.front().rows();
    const AModule mod = inline_module(p, RMatrix(R, 0, g), act);
    const AxiomReport mr = check_module(mod);
    if (!mr.empty()) {
      verdict(r, mr);
      return;
    }
    const Comodule c = to_comodule(mod, p.rational);
    verdict(r, check_comodule(c));
    r.artifacts["coaction"] = matrix_json(c.coaction);
  } else if (k == "smash product") {
    const SmashAlgebra s = smash_product(arg<ModuleAlgebraAction>(t, 0));
    r.artifacts["labels"] = s.alg.labels();
    r.artifacts["structure"] = vector_json(s.alg.structure());
    r.artifacts["unit"] = vector_json(s.alg.unit());
  } else if (k == "smash lambda" || k == "smash rho") {
    const PairingObj& p = arg<PairingObj>(t, 0);
    if (!p.hopf) throw Error(ErrorKind::InvalidArgument, k + " needs a Hopf pairing");
    const EndoRepresentation e = k == "smash lambda" ? lambda_map(*p.hopf) : rho_map(*p.hopf);
    verdict(r, e.morphism);
    if (!e.injective) {
      r.verdict = "FAIL";
      r.witnesses.push_back("not injective");
    }
    r.artifacts["matrix"] = matrix_json(e.matrix);
    r.artifacts["rank"] = e.rank;
    r.artifacts["bijective"] = e.bijective;
  } else if (k == "smash psi") {
    const PairingObj& p = arg<PairingObj>(t, 0);
    if (!p.hopf) throw Error(ErrorKind::InvalidArgument, k + " needs a Hopf pairing");
    const LambdaPrimeReport lp = lambda_prime_psi_check(*p.hopf);
    verdict(r, lp.mismatches);
    r.artifacts["lambda_prime"] = matrix_json(lp.lambda_prime);
    r.artifacts["lambda_prime_injective"] = lp.lambda_prime_injective;
  } else if (k == "smash rl") {
    const PairingObj& p = arg<PairingObj>(t, 0);
    if (!p.hopf) throw Error(ErrorKind::InvalidArgument, k + " needs a Hopf pairing");
    const RLReport rl = check_rl_condition(*p.hopf);
    r.verdict = rl.holds ? "PASS" : "FAIL";
    if (!rl.holds) r.witnesses.push_back("rho(f # 1) not in lambda(H # U) for basis element " + std::to_string(*rl.failing) + " of U");
    Json sols = Json::array();
    for (const auto& s : rl.solutions) sols.push_back(vector_json(s));
    r.artifacts["solutions"] = sols;
  } else if (k == "bm") {
    const PairingObj& p = arg<PairingObj>(t, 1);
    if (!p.hopf) throw Error(ErrorKind::InvalidArgument, "bm needs a Hopf pairing");
    try {
      const BMIsomorphism bm = bm_isomorphism(arg<ComoduleAlgebraData>(t, 0), *p.hopf);
      r.artifacts["rank"] = bm.source.rank();
      r.artifacts["construction"] = bm.construction;
      r.artifacts["phi"] = matrix_json(bm.phi);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::HypothesisFailed && e.kind() != ErrorKind::NoIsomorphismFound) throw;
      r.verdict = "FAIL";
      r.witnesses.push_back(e.what());
    }
  } else if (k == "purity explore" || k == "purity probe") {
    const AlgebraObj& a = arg<AlgebraObj>(t, 0);
    if (!a.presented) throw Error(ErrorKind::InvalidArgument, k + " needs a presented quotient R[x]/(...)");
    const long kmax = arg<long>(t, 1), order = arg<long>(t, 2);
    if (kmax <= 0) throw Error(ErrorKind::InvalidArgument, "truncation degree must be positive");
    const FPModule x = battery_module(R, order);
    if (k == "purity explore") {
      r.artifacts["report"] = explore_truncation_duals(R, a.relations, static_cast<std::size_t>(kmax), x);
      Json levels = Json::array();
      for (std::size_t d = 1; d <= static_cast<std::size_t>(kmax); ++d) {
        const FPModule m = polynomial_quotient_module(R, a.relations, d);
        Json orders = Json::array();
        if (R.is_modular())
          for (const auto& e : enumerate_dual_orders(m)) orders.push_back(Json{{"values", vector_json(e.values)}, {"order", e.order.get_str()}});
        const ProbeReport pr = purity_probe(m, x);
        levels.push_back(Json{{"k", d}, {"quotient", m.describe()}, {"dual_orders", orders}, {"probe_injective", pr.injective},
                              {"kernel_witness", vector_json(pr.kernel_witness)}});
      }
      r.artifacts["levels"] = levels;
    } else {
      const ProbeReport pr = purity_probe(polynomial_quotient_module(R, a.relations, static_cast<std::size_t>(kmax)), x);
      r.verdict = pr.injective ? "PASS" : "FAIL";
      if (!pr.injective) r.witnesses.push_back(pr.describe());
      r.artifacts["probe"] = pr.describe();
    }
  } else if (k == "purity inclusion") {
    const RMatrix gens = parse_matrix(R, arg<Node>(t, 1));
    const RMatrix rel = parse_matrix(R, arg<Node>(t, 0), gens.cols());
    const PurityVerdict v = is_pure_submodule(submodule_inclusion(FPModule(R, gens.cols(), rel), gens));
    r.verdict = v.pure ? "PASS" : "FAIL";
    if (v.pure)
      r.artifacts["retraction"] = matrix_json(*v.retraction);
    else
      r.witnesses.push_back("N (x) " + v.witness_module->describe() + " -> M (x) " + v.witness_module->describe() + " kills " + vec_str(v.kernel_element));
  } else {
    throw Error(ErrorKind::InvalidArgument, "unhandled task " + k);
  }
  (void)spec;
}

}  // namespace detail

/// Runs the tasks in order. Library errors become ERROR verdicts.
inline Report run_tasks(const SessionSpec& spec) {
  Report rep;
  for (const auto& t : spec.tasks) {
    TaskResult r;
    r.task = spec.statements[t.statement].str();
    try {
      detail::run_one(spec, t, r);
    } catch (const Error& e) {
      r.verdict = "ERROR";
      r.witnesses = {e.what()};
      r.artifacts = Json::object();
    } catch (const std::exception& e) {
      r.verdict = "ERROR";
      r.witnesses = {std::string("internal: ") + e.what()};
      r.artifacts = Json::object();
    }
    rep.tasks.push_back(std::move(r));
  }
  return rep;
}

}  // namespace hopfdual::session
