#pragma once

#include <stdexcept>
#include <string>

#include "vxa/engine.hpp"

namespace vxa {

struct ParseError : std::invalid_argument {
  ParseError(std::string msg, int line_, int col_)
      : std::invalid_argument(std::to_string(line_) + ":" + std::to_string(col_) + ": " + msg),
        line(line_),
        col(col_) {}
  int line;
  int col;
};

// Parses the expression grammar: generators by name, `d^k X` derivatives,
// `:A B:` Wick products, `A _n_ B` n-th products, scalar prefixes in the
// scalar syntax. The result is normalized.
FieldExpr parse_expression(const Engine& eng, const std::string& text);

// Structured algebra file text: `algebra NAME`, `[gen] name weight parity
// charge [filtered]` blocks, `[ope] A B n = <expr>` entries; `#` comments.
// Unspecified (A, B, n) entries are zero.
Algebra algebra_from_string(const std::string& text);
Algebra load_algebra_file(const std::string& path);

}  // namespace vxa
