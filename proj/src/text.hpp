#pragma once

// Shared line tokenizer for the text formats. Internal to the library.

#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include "bcr/errors.hpp"

namespace bcr::detail {

// Splits the stream into whitespace-separated tokens per line, dropping blank
// lines and comments. A comment is a token starting with '#' and everything
// after it, so "W#3" stays a single token. Calls fn(tokens, line_number).
template <typename Fn>
void for_each_line(std::istream& in, Fn&& fn) {
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::vector<std::string> tokens;
    for (std::string tok; ls >> tok;) {
      if (tok.front() == '#') break;
      tokens.push_back(std::move(tok));
    }
    if (tokens.empty()) continue;
    fn(tokens, line_no);
  }
}

[[noreturn]] inline void parse_fail(int line_no, const std::string& what) {
  throw ParseError("line " + std::to_string(line_no) + ": " + what);
}

inline void expect_tokens(const std::vector<std::string>& tokens, std::size_t n, int line_no) {
  if (tokens.size() != n) {
    parse_fail(line_no, "'" + tokens[0] + "' expects " + std::to_string(n - 1) + " arguments");
  }
}

}  // namespace bcr::detail
