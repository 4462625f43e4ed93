#include "difflam/syntax.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace difflam {
namespace {

enum class Tok { Ident, Zero, Lambda, Dot, LParen, RParen, Semi, Comma, Plus, LBrack, RBrack, Bang, DOpen, End, Bad };

struct Token {
  Tok kind;
  std::string text;
  int line;
  int column;
};

std::string describe(Tok k) {
  switch (k) {
    case Tok::Ident: return "variable";
    case Tok::Zero: return "'0'";
    case Tok::Lambda: return "'\\'";
    case Tok::Dot: return "'.'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Semi: return "';'";
    case Tok::Comma: return "','";
    case Tok::Plus: return "'+'";
    case Tok::LBrack: return "'['";
    case Tok::RBrack: return "']'";
    case Tok::Bang: return "'!'";
    case Tok::DOpen: return "'D('";
    case Tok::End: return "end of input";
    case Tok::Bad: return "invalid character";
  }
  return "?";
}

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    int l = line, cl = col;
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      std::string name(src.substr(i, j - i));
      if (name == "D") {
        std::size_t k = j;
        while (k < src.size() && std::isspace(static_cast<unsigned char>(src[k]))) ++k;
        if (k < src.size() && src[k] == '(') {
          out.push_back({Tok::DOpen, "D(", l, cl});
          advance(k + 1 - i);
          continue;
        }
      }
      out.push_back({Tok::Ident, name, l, cl});
      advance(j - i);
      continue;
    }
    Tok k = Tok::Bad;
    switch (c) {
      case '0': k = Tok::Zero; break;
      case '\\': k = Tok::Lambda; break;
      case '.': k = Tok::Dot; break;
      case '(': k = Tok::LParen; break;
      case ')': k = Tok::RParen; break;
      case ';': k = Tok::Semi; break;
      case ',': k = Tok::Comma; break;
      case '+': k = Tok::Plus; break;
      case '[': k = Tok::LBrack; break;
      case ']': k = Tok::RBrack; break;
      case '!': k = Tok::Bang; break;
      default: break;
    }
    out.push_back({k, std::string(1, c), l, cl});
    if (k == Tok::Bad) return out;
    advance(1);
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

class ParserBase {
 protected:
  ParserBase(std::string_view text, const Prelude& prelude, std::size_t n_defs)
      : toks_(lex(text)), prelude_(prelude), n_defs_(n_defs) {}

  const Token& peek() const { return toks_[pos_]; }
  bool at(Tok k) const { return peek().kind == k; }

  [[noreturn]] void fail(std::vector<Tok> expected) const {
    std::vector<std::string> names;
    for (Tok k : expected) names.push_back(describe(k));
    const Token& t = peek();
    std::string found = t.kind == Tok::End ? describe(Tok::End) : "'" + t.text + "'";
    throw ParseError(t.line, t.column, names, found);
  }

  const Token& expect(Tok k) {
    if (!at(k)) fail({k});
    return toks_[pos_++];
  }

  // Index of the prelude definition visible under this name, or -1.
  int definition(const std::string& name) const {
    for (int i = static_cast<int>(n_defs_) - 1; i >= 0; --i)
      if (prelude_[i].first == name) return i;
    return -1;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  const Prelude& prelude_;
  std::size_t n_defs_;
};

class DiffParser : ParserBase {
 public:
  DiffParser(std::string_view text, const Prelude& prelude, std::size_t n_defs)
      : ParserBase(text, prelude, n_defs) {}

  diff::Sum run() {
    diff::Sum s = sum();
    if (!at(Tok::End)) fail({Tok::Plus, Tok::End});
    return s;
  }

 private:
  bool starts_atom() const {
    return at(Tok::Ident) || at(Tok::LParen) || at(Tok::Lambda) || at(Tok::DOpen);
  }

  diff::Sum sum() {
    if (at(Tok::Zero)) {
      ++pos_;
      return {};
    }
    if (!starts_atom()) fail({Tok::Zero, Tok::Ident, Tok::LParen, Tok::Lambda, Tok::DOpen});
    diff::Sum s = sterm();
    while (at(Tok::Plus)) {
      ++pos_;
      s += sterm();
    }
    return s;
  }

  diff::Sum sterm() {
    diff::Sum s = atom();
    while (starts_atom()) s = diff::mk_app(s, atom());
    return s;
  }

  diff::Sum atom() {
    if (at(Tok::Ident)) {
      std::string name = toks_[pos_++].text;
      int d = definition(name);
      if (d >= 0) return DiffParser(prelude_[d].second, prelude_, d).run();
      return diff::single(diff::var(name));
    }
    if (at(Tok::LParen)) {
      ++pos_;
      diff::Sum s = sum();
      expect(Tok::RParen);
      return s;
    }
    if (at(Tok::Lambda)) {
      ++pos_;
      std::vector<Sym> xs;
      xs.push_back(intern(expect(Tok::Ident).text));
      while (at(Tok::Ident)) xs.push_back(intern(toks_[pos_++].text));
      expect(Tok::Dot);
      diff::Sum body = sterm();
      for (auto it = xs.rbegin(); it != xs.rend(); ++it) body = diff::mk_abs(*it, body);
      return body;
    }
    if (at(Tok::DOpen)) {
      ++pos_;
      diff::Sum head = sterm();
      expect(Tok::Semi);
      std::vector<diff::Sum> args;
      args.push_back(sterm());
      while (at(Tok::Comma)) {
        ++pos_;
        args.push_back(sterm());
      }
      if (!at(Tok::RParen)) fail({Tok::Comma, Tok::RParen});
      ++pos_;
      return diff::mk_dapp_multi(head, args);
    }
    fail({Tok::Ident, Tok::LParen, Tok::Lambda, Tok::DOpen});
  }
};

class ResParser : ParserBase {
 public:
  ResParser(std::string_view text, const Prelude& prelude, std::size_t n_defs)
      : ParserBase(text, prelude, n_defs) {}

  res::Sum run() {
    res::Sum s = rsum();
    if (!at(Tok::End)) fail({Tok::Plus, Tok::End});
    return s;
  }

 private:
  bool starts_ratom() const { return at(Tok::Ident) || at(Tok::LParen) || at(Tok::Lambda); }

  res::Sum rsum() {
    if (at(Tok::Zero)) {
      ++pos_;
      return {};
    }
    if (!starts_ratom()) fail({Tok::Zero, Tok::Ident, Tok::LParen, Tok::Lambda});
    res::Sum s = rterm();
    while (at(Tok::Plus)) {
      ++pos_;
      s += rterm();
    }
    return s;
  }

  res::Sum rterm() {
    res::Sum s = ratom();
    while (at(Tok::LBrack)) s = res::mk_app(s, bag());
    return s;
  }

  res::Sum ratom() {
    if (at(Tok::Ident)) {
      std::string name = toks_[pos_++].text;
      int d = definition(name);
      if (d >= 0) return ResParser(prelude_[d].second, prelude_, d).run();
      return res::single(res::var(name));
    }
    if (at(Tok::LParen)) {
      ++pos_;
      res::Sum s = rsum();
      expect(Tok::RParen);
      return s;
    }
    if (at(Tok::Lambda)) {
      ++pos_;
      std::vector<Sym> xs;
      xs.push_back(intern(expect(Tok::Ident).text));
      while (at(Tok::Ident)) xs.push_back(intern(toks_[pos_++].text));
      expect(Tok::Dot);
      res::Sum body = rterm();
      for (auto it = xs.rbegin(); it != xs.rend(); ++it) body = res::mk_abs(*it, body);
      return body;
    }
    fail({Tok::Ident, Tok::LParen, Tok::Lambda});
  }

  res::BagSum bag() {
    expect(Tok::LBrack);
    res::BagSum acc(res::empty_bag(), 1);
    if (at(Tok::RBrack)) {
      ++pos_;
      return acc;
    }
    while (true) {
      if (!starts_ratom()) fail({Tok::Ident, Tok::LParen, Tok::Lambda, Tok::RBrack});
      res::Sum r = rterm();
      bool banged = false;
      if (at(Tok::Bang)) {
        ++pos_;
        banged = true;
      }
      acc = res::mk_bag_cons(r, banged, acc);
      if (at(Tok::Comma)) {
        ++pos_;
        continue;
      }
      if (!at(Tok::RBrack)) fail({Tok::Comma, Tok::Bang, Tok::RBrack, Tok::LBrack});
      ++pos_;
      return acc;
    }
  }
};

// Display name for a binder: the hint unless it would capture a free
// variable of the body, in which case a numeric suffix is added.
Sym display_name(Sym hint, const std::vector<Sym>& body_fv) {
  std::string base = is_internal(hint) ? "v" : sym_name(hint);
  auto taken = [&](Sym s) { return std::binary_search(body_fv.begin(), body_fv.end(), s); };
  Sym cand = intern(base);
  for (int k = 1; taken(cand); ++k) cand = intern(base + std::to_string(k));
  return cand;
}

struct DiffPrinter {
  std::ostringstream out;

  void sum(const diff::Sum& s) {
    if (s.empty()) {
      out << "0";
      return;
    }
    bool first = true;
    for (auto& [t, n] : s)
      for (std::uint64_t k = 0; k < n; ++k) {
        if (!first) out << " + ";
        first = false;
        sterm(t);
      }
  }

  void sterm(const diff::Term& t) {
    using diff::Kind;
    switch (t->kind()) {
      case Kind::Bound:
        out << "#" << t->index();
        break;
      case Kind::Free:
        out << sym_name(t->sym());
        break;
      case Kind::Abs: {
        out << "\\";
        diff::Term cur = t;
        bool first = true;
        while (cur->kind() == Kind::Abs) {
          Sym d = display_name(cur->sym(), cur->head()->free_vars());
          out << (first ? "" : " ") << sym_name(d);
          first = false;
          cur = diff::open(cur->head(), d);
        }
        out << ".";
        sterm(cur);
        break;
      }
      case Kind::App:
        fun(t->head());
        out << " ";
        arg(t->arg());
        break;
      case Kind::Lin: {
        out << "D(";
        sterm(t->head());
        out << "; ";
        bool first = true;
        for (auto& a : t->args()) {
          if (!first) out << ", ";
          first = false;
          sterm(a);
        }
        out << ")";
        break;
      }
    }
  }

  void fun(const diff::Term& f) {
    if (f->kind() == diff::Kind::Abs) {
      out << "(";
      sterm(f);
      out << ")";
    } else {
      sterm(f);
    }
  }

  void arg(const diff::Sum& u) {
    if (u.distinct() == 1 && u[0].second == 1 &&
        (u[0].first->kind() == diff::Kind::Free || u[0].first->kind() == diff::Kind::Lin)) {
      sterm(u[0].first);
      return;
    }
    out << "(";
    sum(u);
    out << ")";
  }
};

struct ResPrinter {
  std::ostringstream out;

  void sum(const res::Sum& s) {
    if (s.empty()) {
      out << "0";
      return;
    }
    bool first = true;
    for (auto& [t, n] : s)
      for (std::uint64_t k = 0; k < n; ++k) {
        if (!first) out << " + ";
        first = false;
        rterm(t);
      }
  }

  void rterm(const res::Term& t) {
    using res::Kind;
    switch (t->kind()) {
      case Kind::Bound:
        out << "#" << t->index();
        break;
      case Kind::Free:
        out << sym_name(t->sym());
        break;
      case Kind::Abs: {
        out << "\\";
        res::Term cur = t;
        bool first = true;
        while (cur->kind() == Kind::Abs) {
          Sym d = display_name(cur->sym(), cur->head()->free_vars());
          out << (first ? "" : " ") << sym_name(d);
          first = false;
          cur = res::open(cur->head(), d);
        }
        out << ".";
        rterm(cur);
        break;
      }
      case Kind::App:
        if (t->head()->kind() == Kind::Abs) {
          out << "(";
          rterm(t->head());
          out << ")";
        } else {
          rterm(t->head());
        }
        bag(t->bag());
        break;
    }
  }

  void bag(const res::Bag& b) {
    out << "[";
    bool first = true;
    for (auto& [r, n] : b)
      for (std::uint64_t k = 0; k < n; ++k) {
        if (!first) out << ", ";
        first = false;
        rterm(r.term);
        if (r.banged) out << "!";
      }
    out << "]";
  }
};

}  // namespace

ParseError::ParseError(int line, int column, std::vector<std::string> expected, std::string found)
    : std::runtime_error([&] {
        std::string m = "line " + std::to_string(line) + ", column " + std::to_string(column) + ": expected ";
        for (std::size_t i = 0; i < expected.size(); ++i) m += (i ? " or " : "") + expected[i];
        return m + ", found " + found;
      }()),
      line_(line),
      column_(column),
      expected_(std::move(expected)) {}

diff::Sum parse_diff(std::string_view text, const Prelude& prelude) {
  return DiffParser(text, prelude, prelude.size()).run();
}

res::Sum parse_res(std::string_view text, const Prelude& prelude) {
  return ResParser(text, prelude, prelude.size()).run();
}

std::string print(const diff::Sum& s) {
  DiffPrinter p;
  p.sum(s);
  return p.out.str();
}

std::string print(const diff::Term& t) {
  DiffPrinter p;
  p.sterm(t);
  return p.out.str();
}

std::string print(const res::Sum& s) {
  ResPrinter p;
  p.sum(s);
  return p.out.str();
}

std::string print(const res::Term& t) {
  ResPrinter p;
  p.rterm(t);
  return p.out.str();
}

std::string print(const res::Bag& b) {
  ResPrinter p;
  p.bag(b);
  return p.out.str();
}

bool valid_var_name(std::string_view name) {
  if (name.empty() || !std::isalpha(static_cast<unsigned char>(name[0]))) return false;
  return std::all_of(name.begin(), name.end(),
                     [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

}  // namespace difflam
