// Named-form preprocessing for the DL-Lite dialects: fold away role
// equivalences, make sure every role has a defining concept name, and keep
// all concept inclusions in reduced form.

#ifndef DLLEARN_NAMED_FORM_HPP
#define DLLEARN_NAMED_FORM_HPP

#include <map>
#include <string>

#include "dllearn/core.hpp"

namespace dllearn {

struct RoleRenaming {
    // Original role name -> representative role expression. Identity entries
    // are omitted.
    std::map<std::string, Role> to_representative;

    Role apply(const Role& r) const;
    ConceptRef apply(const ConceptRef& c) const;
    Inclusion apply(const Inclusion& inc) const;

    // r == s for every folded pair, to restore the original vocabulary.
    TBox equivalences() const;
};

struct NamedFormResult {
    TBox tbox;
    RoleRenaming renaming;
    // Role expression -> concept name equivalent to its unqualified
    // existential. Covers every role name of the result; inverse expressions
    // appear only when reduction forced a name for them.
    std::map<Role, std::string> role_name;
};

NamedFormResult named_form_preprocess(const TBox& t);

// Substitutes every reserved name by the unqualified existential it stands
// for and drops axioms that become tautologies.
TBox strip_reserved(const TBox& t);
ConceptRef strip_reserved(const ConceptRef& c);

}  // namespace dllearn

#endif  // DLLEARN_NAMED_FORM_HPP
