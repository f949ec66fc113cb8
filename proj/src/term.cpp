#include "polyring/term.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <utility>

namespace polyring {

Signature Signature::parse(const std::string& text) {
  Signature sig;
  std::size_t i = 0;
  while (i < text.size()) {
    std::size_t colon = text.find(':', i);
    if (colon == std::string::npos)
      throw ParseError("expected 'name:arity' in signature", i);
    std::size_t comma = text.find(',', colon);
    if (comma == std::string::npos) comma = text.size();
    std::string name = text.substr(i, colon - i);
    std::string arity_str = text.substr(colon + 1, comma - colon - 1);
    if (name.empty()) throw ParseError("empty op name in signature", i);
    try {
      int arity = std::stoi(arity_str);
      if (arity < 1) throw ParseError("op arity must be >= 1", colon + 1);
      sig.ops[name] = arity;
    } catch (const std::logic_error&) {
      throw ParseError("bad arity '" + arity_str + "' in signature", colon + 1);
    }
    i = comma + (comma < text.size() ? 1 : 0);
  }
  return sig;
}

TermPtr Term::zero() {
  static const TermPtr instance(new Term(TermKind::Zero));
  return instance;
}

TermPtr Term::var(int index) {
  auto t = new Term(TermKind::Var);
  t->var_ = index;
  return TermPtr(t);
}

TermPtr Term::elem_const(long long value) {
  auto t = new Term(TermKind::ConstElem);
  t->elem_ = value;
  return TermPtr(t);
}

TermPtr Term::sym_const(std::string name) {
  auto t = new Term(TermKind::ConstSym);
  t->name_ = std::move(name);
  return TermPtr(t);
}

TermPtr Term::neg(TermPtr t) {
  auto r = new Term(TermKind::Neg);
  r->args_.push_back(std::move(t));
  return TermPtr(r);
}

TermPtr Term::sum(TermPtr lhs, TermPtr rhs) {
  auto r = new Term(TermKind::Sum);
  r->args_.push_back(std::move(lhs));
  r->args_.push_back(std::move(rhs));
  return TermPtr(r);
}

TermPtr Term::app(std::string op, std::vector<TermPtr> args) {
  auto r = new Term(TermKind::App);
  r->name_ = std::move(op);
  r->args_ = std::move(args);
  return TermPtr(r);
}

namespace {

int kind_rank(TermKind k) {
  switch (k) {
    case TermKind::Var: return 0;
    case TermKind::App: return 1;
    case TermKind::ConstElem: return 2;
    case TermKind::ConstSym: return 3;
    case TermKind::Zero: return 4;
    case TermKind::Neg: return 5;
    case TermKind::Sum: return 6;
  }
  return 7;
}

}  // namespace

int compare(const Term& a, const Term& b) {
  int ra = kind_rank(a.kind()), rb = kind_rank(b.kind());
  if (ra != rb) return ra < rb ? -1 : 1;
  switch (a.kind()) {
    case TermKind::Zero:
      return 0;
    case TermKind::Var:
      return a.var_index() == b.var_index() ? 0 : (a.var_index() < b.var_index() ? -1 : 1);
    case TermKind::ConstElem:
      return a.elem() == b.elem() ? 0 : (a.elem() < b.elem() ? -1 : 1);
    case TermKind::ConstSym:
      return a.name().compare(b.name()) < 0 ? -1 : (a.name() == b.name() ? 0 : 1);
    case TermKind::App: {
      int c = a.name().compare(b.name());
      if (c != 0) return c < 0 ? -1 : 1;
      [[fallthrough]];
    }
    case TermKind::Neg:
    case TermKind::Sum: {
      if (a.args().size() != b.args().size())
        return a.args().size() < b.args().size() ? -1 : 1;
      for (std::size_t i = 0; i < a.args().size(); ++i) {
        int c = compare(*a.args()[i], *b.args()[i]);
        if (c != 0) return c;
      }
      return 0;
    }
  }
  return 0;
}

namespace {

void print_rec(const Term& t, int y_split, std::string& out) {
  switch (t.kind()) {
    case TermKind::Zero:
      out += '0';
      return;
    case TermKind::Var:
      if (y_split > 0 && t.var_index() > y_split) {
        out += 'y';
        out += std::to_string(t.var_index() - y_split);
      } else {
        out += 'x';
        out += std::to_string(t.var_index());
      }
      return;
    case TermKind::ConstElem:
      out += '#';
      out += std::to_string(t.elem());
      return;
    case TermKind::ConstSym:
      out += t.name();
      return;
    case TermKind::Neg:
      out += '-';
      print_rec(*t.args()[0], y_split, out);
      return;
    case TermKind::Sum:
      out += '(';
      print_rec(*t.args()[0], y_split, out);
      out += " + ";
      print_rec(*t.args()[1], y_split, out);
      out += ')';
      return;
    case TermKind::App:
      out += t.name();
      out += '(';
      for (std::size_t i = 0; i < t.args().size(); ++i) {
        if (i) out += ',';
        print_rec(*t.args()[i], y_split, out);
      }
      out += ')';
      return;
  }
}

}  // namespace

std::string to_string(const Term& t, int y_split) {
  std::string out;
  print_rec(t, y_split, out);
  return out;
}

std::string to_string(const TermPtr& t, int y_split) { return to_string(*t, y_split); }

namespace {

class Parser {
 public:
  Parser(const std::string& text, const Signature& sig, int var_count)
      : s_(text), sig_(sig), var_count_(var_count) {}

  TermPtr run() {
    TermPtr t = parse();
    skip_ws();
    if (pos_ != s_.size()) throw ParseError("trailing input after term", pos_);
    return t;
  }

 private:
  TermPtr parse() {
    skip_ws();
    if (pos_ >= s_.size()) throw ParseError("unexpected end of input", pos_);
    char c = s_[pos_];
    if (c == '0') {
      ++pos_;
      return Term::zero();
    }
    if (c == '(') {
      ++pos_;
      TermPtr lhs = parse();
      skip_ws();
      expect('+');
      TermPtr rhs = parse();
      skip_ws();
      expect(')');
      return Term::sum(std::move(lhs), std::move(rhs));
    }
    if (c == '-') {
      ++pos_;
      return Term::neg(parse());
    }
    if (c == '#') {
      std::size_t start = ++pos_;
      std::string digits = read_digits();
      if (digits.empty()) throw ParseError("expected digits after '#'", start);
      try {
        return Term::elem_const(std::stoll(digits));
      } catch (const std::out_of_range&) {
        throw ParseError("constant '#" + digits + "' out of range", start);
      }
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_name();
    throw ParseError(std::string("unexpected character '") + c + "'", pos_);
  }

  TermPtr parse_name() {
    std::size_t start = pos_;
    std::string word = read_word();
    // "x" + digits is a variable; everything else is an op or a constant.
    if (word.size() >= 2 && word[0] == 'x' &&
        std::all_of(word.begin() + 1, word.end(),
                    [](char d) { return std::isdigit(static_cast<unsigned char>(d)); })) {
      int index;
      try {
        index = std::stoi(word.substr(1));
      } catch (const std::out_of_range&) {
        throw ParseError("variable index out of range", start);
      }
      if (index < 1) throw ParseError("variable indices are 1-based", start);
      if (var_count_ >= 0 && index > var_count_)
        throw ParseError("variable x" + std::to_string(index) + " exceeds declared count " +
                             std::to_string(var_count_),
                         start);
      return Term::var(index);
    }
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == '(') {
      auto arity = sig_.arity_of(word);
      if (!arity) throw ParseError("unknown op symbol '" + word + "'", start);
      ++pos_;
      std::vector<TermPtr> args;
      args.push_back(parse());
      skip_ws();
      while (pos_ < s_.size() && s_[pos_] == ',') {
        ++pos_;
        args.push_back(parse());
        skip_ws();
      }
      expect(')');
      if (static_cast<int>(args.size()) != *arity)
        throw ParseError("op '" + word + "' expects " + std::to_string(*arity) +
                             " arguments, got " + std::to_string(args.size()),
                         start);
      return Term::app(word, std::move(args));
    }
    if (sig_.arity_of(word))
      throw ParseError("op symbol '" + word + "' used without arguments", start);
    return Term::sym_const(word);
  }

  std::string read_digits() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    return s_.substr(start, pos_ - start);
  }

  std::string read_word() {
    std::size_t start = pos_;
    while (pos_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
      ++pos_;
    return s_.substr(start, pos_ - start);
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  void expect(char c) {
    if (pos_ >= s_.size() || s_[pos_] != c)
      throw ParseError(std::string("expected '") + c + "'", pos_);
    ++pos_;
  }

  const std::string& s_;
  const Signature& sig_;
  int var_count_;
  std::size_t pos_ = 0;
};

}  // namespace

TermPtr parse_term(const std::string& text, const Signature& sig, int var_count) {
  return Parser(text, sig, var_count).run();
}

int max_var_index(const Term& t) {
  if (t.kind() == TermKind::Var) return t.var_index();
  int m = 0;
  for (const auto& a : t.args()) m = std::max(m, max_var_index(*a));
  return m;
}

namespace {

void vars_rec(const Term& t, std::set<int>& out) {
  if (t.kind() == TermKind::Var) {
    out.insert(t.var_index());
    return;
  }
  for (const auto& a : t.args()) vars_rec(*a, out);
}

}  // namespace

std::vector<int> vars_of(const Term& t) {
  std::set<int> s;
  vars_rec(t, s);
  return {s.begin(), s.end()};
}

bool is_ground(const Term& t) {
  if (t.kind() == TermKind::Var) return false;
  for (const auto& a : t.args())
    if (!is_ground(*a)) return false;
  return true;
}

TermPtr substitute(const TermPtr& t, const std::map<int, TermPtr>& bindings) {
  switch (t->kind()) {
    case TermKind::Var: {
      auto it = bindings.find(t->var_index());
      return it == bindings.end() ? t : it->second;
    }
    case TermKind::Zero:
    case TermKind::ConstElem:
    case TermKind::ConstSym:
      return t;
    case TermKind::Neg:
      return Term::neg(substitute(t->args()[0], bindings));
    case TermKind::Sum:
      return Term::sum(substitute(t->args()[0], bindings), substitute(t->args()[1], bindings));
    case TermKind::App: {
      std::vector<TermPtr> args;
      args.reserve(t->args().size());
      for (const auto& a : t->args()) args.push_back(substitute(a, bindings));
      return Term::app(t->name(), std::move(args));
    }
  }
  return t;
}

Polynomial Polynomial::from_monomials(std::vector<SignedMonomial> monos) {
  std::sort(monos.begin(), monos.end(), [](const SignedMonomial& a, const SignedMonomial& b) {
    return compare(*a.body, *b.body) < 0;
  });
  Polynomial p;
  std::size_t i = 0;
  while (i < monos.size()) {
    std::size_t j = i;
    long long net = 0;
    while (j < monos.size() && compare(*monos[i].body, *monos[j].body) == 0) {
      net += monos[j].sign;
      ++j;
    }
    int sign = net > 0 ? 1 : -1;
    for (long long k = 0; k < (net < 0 ? -net : net); ++k)
      p.monos_.push_back({sign, monos[i].body});
    i = j;
  }
  return p;
}

Polynomial Polynomial::operator+(const Polynomial& rhs) const {
  std::vector<SignedMonomial> all = monos_;
  all.insert(all.end(), rhs.monos_.begin(), rhs.monos_.end());
  return from_monomials(std::move(all));
}

Polynomial Polynomial::operator-() const {
  Polynomial p = *this;
  for (auto& m : p.monos_) m.sign = -m.sign;
  return p;  // body order and cancellation are sign-blind
}

Polynomial Polynomial::operator-(const Polynomial& rhs) const { return *this + (-rhs); }

bool Polynomial::operator==(const Polynomial& rhs) const {
  if (monos_.size() != rhs.monos_.size()) return false;
  for (std::size_t i = 0; i < monos_.size(); ++i)
    if (monos_[i].sign != rhs.monos_[i].sign || compare(*monos_[i].body, *rhs.monos_[i].body) != 0)
      return false;
  return true;
}

namespace {

// Raw (uncanceled) expansion. Sum concatenates, Neg flips, App distributes
// over the cartesian product of argument expansions; an empty argument
// expansion annihilates the whole application.
std::vector<SignedMonomial> expand(const TermPtr& t) {
  switch (t->kind()) {
    case TermKind::Zero:
      return {};
    case TermKind::Var:
    case TermKind::ConstElem:
    case TermKind::ConstSym:
      return {{1, t}};
    case TermKind::Neg: {
      auto m = expand(t->args()[0]);
      for (auto& sm : m) sm.sign = -sm.sign;
      return m;
    }
    case TermKind::Sum: {
      auto l = expand(t->args()[0]);
      auto r = expand(t->args()[1]);
      l.insert(l.end(), r.begin(), r.end());
      return l;
    }
    case TermKind::App: {
      std::vector<std::vector<SignedMonomial>> parts;
      parts.reserve(t->args().size());
      for (const auto& a : t->args()) {
        parts.push_back(expand(a));
        if (parts.back().empty()) return {};
      }
      std::vector<SignedMonomial> out;
      std::vector<std::size_t> idx(parts.size(), 0);
      while (true) {
        int sign = 1;
        std::vector<TermPtr> body;
        body.reserve(parts.size());
        for (std::size_t j = 0; j < parts.size(); ++j) {
          sign *= parts[j][idx[j]].sign;
          body.push_back(parts[j][idx[j]].body);
        }
        out.push_back({sign, Term::app(t->name(), std::move(body))});
        std::size_t j = parts.size();
        while (j > 0) {
          --j;
          if (++idx[j] < parts[j].size()) break;
          idx[j] = 0;
          if (j == 0) return out;
        }
      }
    }
  }
  return {};
}

}  // namespace

Polynomial normalize(const TermPtr& t) { return Polynomial::from_monomials(expand(t)); }

TermPtr to_term(const Polynomial& p) {
  if (p.is_zero()) return Term::zero();
  const auto& ms = p.monomials();
  auto signed_term = [](const SignedMonomial& m) {
    return m.sign > 0 ? m.body : Term::neg(m.body);
  };
  TermPtr acc = signed_term(ms.back());
  for (std::size_t i = ms.size() - 1; i-- > 0;)
    acc = Term::sum(signed_term(ms[i]), std::move(acc));
  return acc;
}

std::string to_string(const Polynomial& p, int y_split) {
  if (p.is_zero()) return "0";
  std::string out;
  for (std::size_t i = 0; i < p.monomials().size(); ++i) {
    if (i) out += " + ";
    if (p.monomials()[i].sign < 0) out += "- ";
    out += to_string(*p.monomials()[i].body, y_split);
  }
  return out;
}

namespace {

int count_occurrences(const Term& t, const std::vector<int>& vars) {
  if (t.kind() == TermKind::Var)
    return std::binary_search(vars.begin(), vars.end(), t.var_index()) ? 1 : 0;
  int n = 0;
  for (const auto& a : t.args()) n += count_occurrences(*a, vars);
  return n;
}

std::vector<int> sorted_unique(std::vector<int> vars) {
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  return vars;
}

}  // namespace

Degree degree(const Polynomial& p, std::vector<int> vars) {
  Degree d;
  d.vars = sorted_unique(std::move(vars));
  for (const auto& m : p.monomials())
    d.value = std::max(d.value, count_occurrences(*m.body, d.vars));
  return d;
}

Degree degree(const TermPtr& t, std::vector<int> vars) {
  return degree(normalize(t), std::move(vars));
}

Degree degree(const TermPtr& t) { return degree(t, vars_of(*t)); }

Polynomial sum_decompose(const TermPtr& f, int var_count) {
  if (var_count < 1) throw InvalidInput("sum_decompose: variable count must be >= 1");
  if (max_var_index(*f) > var_count)
    throw InvalidInput("sum_decompose: term uses variables beyond the declared count");

  std::vector<int> xs(var_count);
  for (int i = 0; i < var_count; ++i) xs[i] = i + 1;
  Polynomial fx = normalize(f);
  Degree d = degree(fx, xs);
  if (d.value == 0)
    throw InvalidInput("sum_decompose: term has degree 0 in the declared variables");

  std::map<int, TermPtr> to_sum, to_y;
  for (int i = 1; i <= var_count; ++i) {
    to_sum[i] = Term::sum(Term::var(i), Term::var(var_count + i));
    to_y[i] = Term::var(var_count + i);
  }
  Polynomial g =
      normalize(substitute(f, to_sum)) - fx - normalize(substitute(f, to_y));

  if (degree(g, xs).value >= d.value)
    throw InvariantViolation("sum_decompose: degree descent failed for " + to_string(f));
  return g;
}

}  // namespace polyring
