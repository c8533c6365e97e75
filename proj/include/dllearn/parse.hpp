// Line-oriented text format for TBoxes.
//
//   concept := "top" | NAME | concept "&" concept | "some" ROLE "." concept
//   ROLE    := NAME | NAME "-"
//   axiom   := concept "<=" concept | concept "==" concept
//            | ROLE "[=" ROLE | ROLE "=[=" ROLE
//
// "&" binds tighter than the body of "some", which extends maximally to the
// right unless parenthesised. "#" starts a comment. "==" and "=[=" expand to
// the two directed inclusions.

#ifndef DLLEARN_PARSE_HPP
#define DLLEARN_PARSE_HPP

#include <string>

#include "dllearn/core.hpp"

namespace dllearn {

struct ParseError : std::runtime_error {
    int line;
    int column;
    ParseError(int l, int c, const std::string& msg)
        : std::runtime_error("line " + std::to_string(l) + ", column " + std::to_string(c) + ": " + msg),
          line(l),
          column(c) {}
};

TBox parse_tbox(const std::string& text);
ConceptRef parse_concept(const std::string& text);

// Round-trips through parse_tbox modulo whitespace; folds pairs of directed
// inclusions back into "==" / "=[=" lines when both directions are present.
std::string to_text(const TBox& t);

}  // namespace dllearn

#endif  // DLLEARN_PARSE_HPP
