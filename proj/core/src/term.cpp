#include "qalg/term.hpp"

#include <algorithm>
#include <cctype>

#include "qalg/error.hpp"

namespace qalg {

Signature::Signature(std::initializer_list<std::pair<std::string, std::size_t>> symbols) {
  for (const auto& [name, arity] : symbols) add(name, arity);
}

void Signature::add(std::string name, std::size_t arity) {
  if (name.empty()) throw ValidationError("empty operation symbol");
  if (is_formal_variable(name))
    throw ValidationError("operation symbol '" + name + "' collides with a formal variable");
  if (!index_.emplace(name, symbols_.size()).second)
    throw ValidationError("duplicate operation symbol '" + name + "'");
  symbols_.emplace_back(std::move(name), arity);
}

std::optional<std::size_t> Signature::arity(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return symbols_[it->second].second;
}

std::size_t Signature::max_arity() const {
  std::size_t m = 0;
  for (const auto& s : symbols_) m = std::max(m, s.second);
  return m;
}

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

}  // namespace

Term Term::leaf(std::string name) {
  const std::size_t h = mix(0x1234567ULL, std::hash<std::string>{}(name));
  return Term(std::make_shared<const Node>(Node{true, std::move(name), {}, h, 0, 1}));
}

Term Term::op(std::string symbol, std::vector<Term> children) {
  std::size_t h = mix(0x7654321ULL, std::hash<std::string>{}(symbol));
  std::size_t depth = 0, size = 1;
  for (const Term& c : children) {
    if (!c.valid()) throw PreconditionError("term child is an empty handle");
    h = mix(h, c.hash());
    depth = std::max(depth, c.depth() + 1);
    size += c.size();
  }
  return Term(std::make_shared<const Node>(
      Node{false, std::move(symbol), std::move(children), h, depth, size}));
}

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (!a.node_ || !b.node_) return false;
  if (a.hash() != b.hash() || a.is_leaf() != b.is_leaf() || a.label() != b.label() ||
      a.arity() != b.arity())
    return false;
  for (std::size_t i = 0; i < a.arity(); ++i)
    if (!(a.child(i) == b.child(i))) return false;
  return true;
}

std::strong_ordering operator<=>(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (a.is_leaf() != b.is_leaf())
    return a.is_leaf() ? std::strong_ordering::less : std::strong_ordering::greater;
  if (auto c = a.label() <=> b.label(); c != 0) return c;
  if (auto c = a.arity() <=> b.arity(); c != 0) return c;
  for (std::size_t i = 0; i < a.arity(); ++i)
    if (auto c = a.child(i) <=> b.child(i); c != 0) return c;
  return std::strong_ordering::equal;
}

namespace {

void print(const Term& t, std::string& out) {
  if (t.is_leaf()) {
    out += t.label();
    return;
  }
  out += '(';
  out += t.label();
  for (const Term& c : t.children()) {
    out += ' ';
    print(c, out);
  }
  out += ')';
}

class Parser {
 public:
  Parser(std::string_view text, const Signature* sig) : text_(text), sig_(sig) {}

  Term parse() {
    Term t = term();
    skip();
    if (pos_ != text_.size()) fail("trailing input");
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ValidationError("term syntax at offset " + std::to_string(pos_) + ": " + msg + " in '" +
                          std::string(text_) + "'");
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  std::string ident() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) &&
           text_[pos_] != '(' && text_[pos_] != ')')
      ++pos_;
    if (start == pos_) fail("expected identifier");
    return std::string(text_.substr(start, pos_ - start));
  }

  Term term() {
    skip();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    if (text_[pos_] == ')') fail("unexpected ')'");
    if (text_[pos_] != '(') {
      std::string name = ident();
      if (sig_ && sig_->contains(name)) fail("symbol '" + name + "' used as a leaf");
      return Term::leaf(std::move(name));
    }
    ++pos_;
    std::string sym = ident();
    std::vector<Term> kids;
    for (;;) {
      skip();
      if (pos_ >= text_.size()) fail("missing ')'");
      if (text_[pos_] == ')') {
        ++pos_;
        break;
      }
      kids.push_back(term());
    }
    if (sig_) {
      auto ar = sig_->arity(sym);
      if (!ar) fail("unknown operation symbol '" + sym + "'");
      if (*ar != kids.size())
        fail("symbol '" + sym + "' has arity " + std::to_string(*ar) + " but got " +
             std::to_string(kids.size()) + " arguments");
    }
    return Term::op(std::move(sym), std::move(kids));
  }

  std::string_view text_;
  const Signature* sig_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string to_string(const Term& t) {
  std::string out;
  print(t, out);
  return out;
}

Term parse_term(std::string_view text, const Signature& sig) { return Parser(text, &sig).parse(); }

Term parse_term_untyped(std::string_view text) { return Parser(text, nullptr).parse(); }

std::optional<std::size_t> formal_variable_index(std::string_view name) {
  if (name.size() < 2 || name[0] != 'x') return std::nullopt;
  if (name.size() > 2 && name[1] == '0') return std::nullopt;
  std::size_t v = 0;
  for (char c : name.substr(1)) {
    if (c < '0' || c > '9') return std::nullopt;
    v = v * 10 + static_cast<std::size_t>(c - '0');
  }
  return v;
}

bool is_formal_variable(std::string_view name) { return formal_variable_index(name).has_value(); }

std::string formal_variable(std::size_t i) { return "x" + std::to_string(i); }

namespace {

void collect_leaves(const Term& t, std::vector<std::string>& out) {
  if (t.is_leaf()) {
    out.push_back(t.label());
    return;
  }
  for (const Term& c : t.children()) collect_leaves(c, out);
}

}  // namespace

std::vector<std::string> leaves(const Term& t) {
  std::vector<std::string> out;
  collect_leaves(t, out);
  return out;
}

bool similar(const Term& t, const Term& u) {
  if (t.same_node(u)) return true;
  if (t.is_leaf() || u.is_leaf()) return t.is_leaf() && u.is_leaf();
  if (t.label() != u.label() || t.arity() != u.arity()) return false;
  for (std::size_t i = 0; i < t.arity(); ++i)
    if (!similar(t.child(i), u.child(i))) return false;
  return true;
}

Term skeleton(const Term& t) {
  return map_leaves(t, [](const std::string&) { return std::string("_"); });
}

void check_well_formed(const Term& t, const Signature& sig) {
  if (t.is_leaf()) {
    if (sig.contains(t.label()))
      throw ValidationError("symbol '" + t.label() + "' used as a leaf");
    return;
  }
  auto ar = sig.arity(t.label());
  if (!ar) throw ValidationError("unknown operation symbol '" + t.label() + "'");
  if (*ar != t.arity())
    throw ValidationError("symbol '" + t.label() + "' has arity " + std::to_string(*ar) +
                          " but got " + std::to_string(t.arity()) + " arguments");
  for (const Term& c : t.children()) check_well_formed(c, sig);
}

Distance dstar(const Term& t, const Term& u, const PseudoMetricSpace& x) {
  return dstar_with(t, u, [&](const std::string& a, const std::string& b) {
    return a == b ? 0.0 : x.distance(a, b);
  });
}

Term map_leaves(const Term& t, const std::function<std::string(const std::string&)>& f) {
  if (t.is_leaf()) return Term::leaf(f(t.label()));
  std::vector<Term> kids;
  kids.reserve(t.arity());
  for (const Term& c : t.children()) kids.push_back(map_leaves(c, f));
  return Term::op(t.label(), std::move(kids));
}

Term map_leaves(const Term& t, const std::unordered_map<std::string, std::string>& f) {
  return map_leaves(t, [&](const std::string& a) {
    auto it = f.find(a);
    if (it == f.end()) throw PreconditionError("map undefined on leaf '" + a + "'");
    return it->second;
  });
}

Term substitute_leaves(const Term& t, const std::unordered_map<std::string, Term>& sub) {
  if (t.is_leaf()) {
    auto it = sub.find(t.label());
    return it == sub.end() ? t : it->second;
  }
  std::vector<Term> kids;
  kids.reserve(t.arity());
  for (const Term& c : t.children()) kids.push_back(substitute_leaves(c, sub));
  return Term::op(t.label(), std::move(kids));
}

namespace {

Term hat(const Term& s, std::string_view gamma, const Term& t) {
  if (s.is_leaf()) return s;
  std::vector<Term> kids;
  kids.reserve(s.arity());
  for (const Term& c : s.children()) kids.push_back(hat(c, gamma, t));
  if (s.label() != gamma) return Term::op(s.label(), std::move(kids));
  std::unordered_map<std::string, Term> sub;
  for (std::size_t i = 0; i < kids.size(); ++i) sub.emplace(formal_variable(i), kids[i]);
  return substitute_leaves(t, sub);
}

}  // namespace

Term substitute_symbol(const Term& s, std::string_view gamma, const Term& t, const Signature& sig) {
  auto n = sig.arity(gamma);
  if (!n) throw PreconditionError("unknown symbol '" + std::string(gamma) + "'");
  for (const std::string& leaf : leaves(t)) {
    auto v = formal_variable_index(leaf);
    if (!v || *v >= *n)
      throw PreconditionError("substitute_symbol: leaf '" + leaf + "' of the replacement is not among x0..x" +
                              std::to_string(*n == 0 ? 0 : *n - 1) + " for symbol '" +
                              std::string(gamma) + "' of arity " + std::to_string(*n));
  }
  return hat(s, gamma, t);
}

}  // namespace qalg
