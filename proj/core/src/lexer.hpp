#pragma once

// Line-oriented tokenizer shared by the protocol and scenario parsers.

#include <string>
#include <string_view>
#include <vector>

#include "dbsolve/protocol.hpp"

namespace dbsolve::detail {

enum class TokenKind { Ident, Number, Punct, At, End };

struct Token {
  TokenKind kind = TokenKind::End;
  std::string text;
  int line = 0;
  int column = 0;
};

std::vector<Token> tokenize(std::string_view line, int line_no);

class Cursor {
 public:
  explicit Cursor(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  const Token& peek() const { return tokens_[pos_]; }
  Token next();
  bool at_end() const { return peek().kind == TokenKind::End; }
  bool accept(char punct);
  void expect(char punct);
  bool accept_word(std::string_view word);
  Token ident(const char* what);
  Rational rational(const char* what);
  void finish();
  ParseError error(const Token& t, const std::string& message) const;

 private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

// One cursor per non-blank line, comments stripped. line_count receives the
// number of physical lines.
std::vector<Cursor> split_lines(std::string_view source, int& line_count);

}  // namespace dbsolve::detail
