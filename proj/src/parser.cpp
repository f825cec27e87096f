#include "travlab/parser.hpp"

#include <cctype>

#include "travlab/error.hpp"

namespace travlab {

namespace {

bool name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$' || c == '#' ||
         c == '\'' || c == '^';
}

class Parser {
public:
  Parser(const std::string& text, const Signature& sig) : text_(text), sig_(sig) {}

  Formula formula() {
    Formula f = implication();
    skip_ws();
    if (pos_ != text_.size()) throw ParseError("trailing input", pos_);
    return f;
  }

  Term term_only() {
    Term t = term();
    skip_ws();
    if (pos_ != text_.size()) throw ParseError("trailing input", pos_);
    return t;
  }

private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool eat(const std::string& tok) {
    skip_ws();
    if (text_.compare(pos_, tok.size(), tok) == 0) {
      // Keyword tokens must not be a prefix of a longer name.
      if (name_char(tok.back()) && pos_ + tok.size() < text_.size() &&
          name_char(text_[pos_ + tok.size()]))
        return false;
      pos_ += tok.size();
      return true;
    }
    return false;
  }

  void expect(const std::string& tok) {
    if (!eat(tok)) throw ParseError("expected '" + tok + "'", pos_);
  }

  std::string name() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() && name_char(text_[pos_])) ++pos_;
    if (pos_ == start) throw ParseError("expected an identifier", pos_);
    return text_.substr(start, pos_ - start);
  }

  Formula implication() {
    Formula lhs = disjunction();
    if (eat("->")) return implies(lhs, implication()); // right associative
    return lhs;
  }

  Formula disjunction() {
    Formula f = conjunction();
    while (true) {
      skip_ws();
      // don't swallow the '-' of '->'
      if (pos_ < text_.size() && text_[pos_] == '|') {
        ++pos_;
        f = lor(f, conjunction());
      } else {
        return f;
      }
    }
  }

  Formula conjunction() {
    Formula f = unary();
    while (eat("&")) f = land(f, unary());
    return f;
  }

  Formula unary() {
    if (eat("!")) return lnot(unary());
    if (eat("exists")) return quantifier(true);
    if (eat("forall")) return quantifier(false);
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == '(') {
      // Either a parenthesized formula or a term starting with '(': terms
      // never start with '(', so this is always a formula.
      ++pos_;
      Formula f = implication();
      expect(")");
      return f;
    }
    if (eat("true")) return truef();
    if (eat("false")) return falsef();
    return atomic();
  }

  Formula quantifier(bool is_exists) {
    std::string v = name();
    if (sig_.has_symbol(v)) throw ParseError("bound variable shadows symbol " + v, pos_);
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == '<') {
      ++pos_;
      Term bound = term();
      expect("(");
      Formula body = implication();
      expect(")");
      Formula guard = less(var(v), bound);
      return is_exists ? exists(v, land(guard, body)) : forall(v, implies(guard, body));
    }
    expect("(");
    Formula body = implication();
    expect(")");
    return is_exists ? exists(v, body) : forall(v, body);
  }

  Formula atomic() {
    std::size_t start = pos_;
    std::string head = name();
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == '(' && sig_.find_rel(head)) {
      ++pos_;
      std::vector<Term> args;
      if (!eat(")")) {
        args.push_back(term());
        while (eat(",")) args.push_back(term());
        expect(")");
      }
      if (static_cast<int>(args.size()) != sig_.find_rel(head)->arity)
        throw ParseError("arity mismatch for relation " + head, pos_);
      return atom(head, std::move(args));
    }
    // Otherwise `head` begins a term: back up and parse a comparison.
    pos_ = start;
    Term lhs = term();
    skip_ws();
    if (eat("!=")) return neq(lhs, term());
    if (eat("=")) return eq(lhs, term());
    if (pos_ < text_.size() && text_[pos_] == '<') {
      ++pos_;
      return less(lhs, term());
    }
    throw ParseError("expected '=', '!=' or '<' after term", pos_);
  }

  Term term() {
    std::string head = name();
    const FunSym* f = sig_.find_fun(head);
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == '(' && f && f->arity > 0) {
      ++pos_;
      std::vector<Term> args;
      args.push_back(term());
      while (eat(",")) args.push_back(term());
      expect(")");
      if (static_cast<int>(args.size()) != f->arity)
        throw ParseError("arity mismatch for function " + head, pos_);
      return apply(head, std::move(args));
    }
    if (f) {
      if (f->arity != 0) throw ParseError("function " + head + " needs arguments", pos_);
      return cnst(head);
    }
    if (sig_.find_rel(head)) throw ParseError("relation symbol used as a term: " + head, pos_);
    return var(head);
  }

  const std::string& text_;
  const Signature& sig_;
  std::size_t pos_ = 0;
};

} // namespace

Formula parse_formula(const std::string& text, const Signature& sig) {
  return Parser(text, sig).formula();
}

Term parse_term(const std::string& text, const Signature& sig) {
  return Parser(text, sig).term_only();
}

} // namespace travlab
