// Recursive-descent parser for the formula grammar.
//
//   iff     := implies ('<->' iff)?
//   implies := or ('->' implies)?
//   or      := and ('|' and)*
//   and     := unary ('&' unary)*
//   unary   := '~' unary | ('all'|'ex') VAR '.' iff | '(' iff ')' | atom
//   atom    := VAR ('in' | 'in*' | '=' | '=*') VAR | PRED '(' VAR ')'

#include <cctype>

#include "coext/fol.hpp"

namespace coext {

ParseError::ParseError(std::size_t offset, const std::string& msg)
    : std::runtime_error("syntax error at offset " + std::to_string(offset) + ": " + msg), offset_(offset) {}

namespace {

bool is_keyword(std::string_view w) {
  return w == "in" || w == "all" || w == "ex" || w == "set" || w == "At" || w == "Pure";
}

class Parser {
 public:
  Parser(std::string_view text, ParseOptions opts) : text_(text), opts_(opts) {}

  Formula parse_all() {
    Formula f = parse_iff();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(pos_, msg); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool eat(std::string_view tok) {
    skip_ws();
    if (text_.substr(pos_, tok.size()) == tok) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }

  void expect(std::string_view tok) {
    if (!eat(tok)) fail("expected '" + std::string(tok) + "'");
  }

  static bool ident_start(char c, bool reserved) {
    return std::isalpha(static_cast<unsigned char>(c)) || (reserved && (c == '_' || c == '#'));
  }
  static bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

  // Reads an identifier without consuming it.
  std::string_view peek_word() {
    skip_ws();
    std::size_t end = pos_;
    if (end < text_.size() && ident_start(text_[end], opts_.allow_reserved)) {
      ++end;
      while (end < text_.size() && ident_char(text_[end])) ++end;
    }
    return text_.substr(pos_, end - pos_);
  }

  VarName parse_var() {
    std::string_view w = peek_word();
    if (w.empty()) {
      if (pos_ < text_.size() && text_[pos_] == '_') fail("names starting with '_' are reserved");
      fail("expected variable");
    }
    if (is_keyword(w)) fail("keyword '" + std::string(w) + "' used as variable");
    pos_ += w.size();
    return VarName(w);
  }

  Formula parse_iff() {
    Formula lhs = parse_implies();
    if (eat("<->")) return Iff(std::move(lhs), parse_iff());
    return lhs;
  }

  Formula parse_implies() {
    Formula lhs = parse_or();
    if (eat("->")) return Implies(std::move(lhs), parse_implies());
    return lhs;
  }

  Formula parse_or() {
    Formula lhs = parse_and();
    while (eat("|")) lhs = Or(std::move(lhs), parse_and());
    return lhs;
  }

  Formula parse_and() {
    Formula lhs = parse_unary();
    while (eat("&")) lhs = And(std::move(lhs), parse_unary());
    return lhs;
  }

  Formula parse_unary() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    if (eat("~")) return Not(parse_unary());
    if (eat("(")) {
      Formula f = parse_iff();
      expect(")");
      return f;
    }
    std::string_view w = peek_word();
    if (w == "all" || w == "ex") {
      pos_ += w.size();
      VarName v = parse_var();
      expect(".");
      Formula body = parse_iff();
      return w == "all" ? Forall(std::move(v), std::move(body)) : Exists(std::move(v), std::move(body));
    }
    return parse_atom();
  }

  Formula parse_unary_pred(Pred p) {
    expect("(");
    VarName v = parse_var();
    expect(")");
    return make_atom(p, {std::move(v)});
  }

  Formula parse_atom() {
    const std::size_t start = pos_;
    std::string_view w = peek_word();
    if (w.empty()) {
      if (text_[pos_] == '_') fail("names starting with '_' are reserved");
      fail("expected formula");
    }
    if (w == "set" || w == "At" || w == "Pure") {
      pos_ += w.size();
      return parse_unary_pred(w == "set" ? Pred::Set : w == "At" ? Pred::At : Pred::Pure);
    }
    VarName lhs = parse_var();
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == '(') {
      pos_ = start;
      fail("unknown predicate '" + lhs + "'");
    }
    Pred p;
    if (eat("=*")) {
      p = Pred::EqStar;
    } else if (eat("=")) {
      p = Pred::Eq;
    } else if (peek_word() == "in") {
      pos_ += 2;
      p = (pos_ < text_.size() && text_[pos_] == '*') ? (++pos_, Pred::InStar) : Pred::In;
    } else {
      fail("expected relation after '" + lhs + "'");
    }
    VarName rhs = parse_var();
    return make_atom(p, {std::move(lhs), std::move(rhs)});
  }

  std::string_view text_;
  ParseOptions opts_;
  std::size_t pos_ = 0;
};

}  // namespace

Formula parse(std::string_view text, ParseOptions opts) { return Parser(text, opts).parse_all(); }

}  // namespace coext
