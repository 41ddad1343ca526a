#include "lexer.hpp"

#include <cctype>

namespace dbsolve::detail {

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

}  // namespace

std::vector<Token> tokenize(std::string_view line, int line_no) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto col = [&](std::size_t at) { return static_cast<int>(at) + 1; };
  while (i < line.size()) {
    char c = line[i];
    if (c == '#') break;
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    Token t;
    t.line = line_no;
    t.column = col(i);
    std::size_t start = i;
    if (ident_start(c)) {
      while (i < line.size() && ident_char(line[i])) ++i;
      t.kind = TokenKind::Ident;
    } else if (digit(c) || (c == '-' && i + 1 < line.size() && digit(line[i + 1]))) {
      ++i;
      while (i < line.size() && (digit(line[i]) || line[i] == '.' || line[i] == '/')) ++i;
      t.kind = TokenKind::Number;
    } else if (c == '@') {
      ++i;
      while (i < line.size() && ident_char(line[i])) ++i;
      t.kind = TokenKind::At;
    } else if (std::string_view("[]{}(),;:=").find(c) != std::string_view::npos) {
      ++i;
      t.kind = TokenKind::Punct;
    } else {
      throw ParseError(line_no, col(i), std::string("unexpected character '") + c + "'");
    }
    t.text = std::string(line.substr(start, i - start));
    out.push_back(std::move(t));
  }
  Token end;
  end.line = line_no;
  end.column = col(line.size());
  out.push_back(end);
  return out;
}

Token Cursor::next() {
  Token t = tokens_[pos_];
  if (pos_ + 1 < tokens_.size()) ++pos_;
  return t;
}

bool Cursor::accept(char punct) {
  if (peek().kind == TokenKind::Punct && peek().text[0] == punct) {
    next();
    return true;
  }
  return false;
}

void Cursor::expect(char punct) {
  if (!accept(punct)) {
    const Token& t = peek();
    throw error(t, std::string("expected '") + punct + "'" + (t.kind == TokenKind::End ? " before end of line" : ", got '" + t.text + "'"));
  }
}

bool Cursor::accept_word(std::string_view word) {
  if (peek().kind == TokenKind::Ident && peek().text == word) {
    next();
    return true;
  }
  return false;
}

Token Cursor::ident(const char* what) {
  const Token t = next();
  if (t.kind != TokenKind::Ident) throw error(t, std::string("expected ") + what);
  return t;
}

Rational Cursor::rational(const char* what) {
  const Token t = next();
  if (t.kind != TokenKind::Number) throw error(t, std::string("expected ") + what);
  try {
    return parse_rational(t.text);
  } catch (const std::exception& e) {
    throw error(t, e.what());
  }
}

void Cursor::finish() {
  if (!at_end()) throw error(peek(), "unexpected '" + peek().text + "'");
}

ParseError Cursor::error(const Token& t, const std::string& message) const { return ParseError(t.line, t.column, message); }

std::vector<Cursor> split_lines(std::string_view source, int& line_count) {
  std::vector<Cursor> out;
  int line_no = 0;
  std::size_t start = 0;
  while (start <= source.size()) {
    std::size_t end = source.find('\n', start);
    if (end == std::string_view::npos) end = source.size();
    std::string_view line = source.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    ++line_no;
    auto tokens = tokenize(line, line_no);
    if (tokens.size() > 1) out.emplace_back(std::move(tokens));
    if (end == source.size()) break;
    start = end + 1;
  }
  line_count = line_no;
  return out;
}

}  // namespace dbsolve::detail
