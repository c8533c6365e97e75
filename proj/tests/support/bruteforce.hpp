// Independent entailment oracle for cross-checking the reasoner: literal fair
// rule application truncated at the query size, no role-closure shortcut, no
// frontier label closure, plus a plain backtracking homomorphism enumerator
// with no memoisation. Deliberately shares no code with the reasoner's
// decision paths.

#ifndef DLLEARN_TESTS_BRUTEFORCE_HPP
#define DLLEARN_TESTS_BRUTEFORCE_HPP

#include "dllearn/core.hpp"
#include "dllearn/interp.hpp"

namespace dllearn::testsupport {

struct NaiveModel {
    Interpretation interp;
    Elem root = 0;
};

NaiveModel naive_canonical(const ConceptRef& c, const TBox& t, int depth);

bool naive_hom_exists(const ConceptTree& t, const Interpretation& i, Elem target);

bool bf_entails_ri(const TBox& t, const RI& ri);
bool bf_entails_ci(const TBox& t, const CI& ci);
bool bf_entails(const TBox& t, const Inclusion& inc);
bool bf_equiv(const TBox& a, const TBox& b);

}  // namespace dllearn::testsupport

#endif
