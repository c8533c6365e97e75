// Finite interpretations, extension computation, homomorphisms between
// concept trees and interpretations, products and ditree surgery.

#ifndef DLLEARN_INTERP_HPP
#define DLLEARN_INTERP_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dllearn/core.hpp"

namespace dllearn {

using Elem = int;

// Finite labelled directed graph. Role extensions are stored under role
// *names* only; inverse roles are interpreted as reversed pairs.
struct Interpretation {
    std::vector<std::set<std::string>> labels;           // per element
    std::map<std::string, std::set<std::pair<Elem, Elem>>> roles;

    int size() const { return static_cast<int>(labels.size()); }

    Elem add_element() {
        labels.emplace_back();
        return static_cast<Elem>(labels.size() - 1);
    }

    void add_label(Elem d, const std::string& name) { labels[d].insert(name); }
    bool has_label(Elem d, const std::string& name) const { return labels[d].count(name) > 0; }

    // Adds (d, e) to the extension of `r`; an inverted role stores the
    // reversed pair under the role name.
    void add_edge(Elem d, Elem e, const Role& r) {
        if (r.inverted) roles[r.name].insert({e, d});
        else roles[r.name].insert({d, e});
    }

    bool has_edge(Elem d, Elem e, const Role& r) const {
        auto it = roles.find(r.name);
        if (it == roles.end()) return false;
        if (r.inverted) return it->second.count({e, d}) > 0;
        return it->second.count({d, e}) > 0;
    }

    // Successors of d under role expression r (reversed pairs for inverses).
    std::vector<Elem> successors(Elem d, const Role& r) const;

    // Outgoing and incoming edges of d as (role-expression, other-element)
    // pairs, where incoming name-edges appear inverted.
    std::vector<std::pair<Role, Elem>> incident(Elem d) const;

    std::string dump() const;  // edge-list text for golden tests
};

// Tree-shaped interpretation with a distinguished root: the union of the role
// extensions forms a directed tree and distinct role names have disjoint
// extensions.
struct DitreeInterpretation {
    Interpretation interp;
    Elem root = 0;

    int size() const { return interp.size(); }
    void check_valid() const;  // throws std::logic_error

    // Children of d in the underlying tree, with their role names.
    std::vector<std::pair<Role, Elem>> children(Elem d) const;

    ConceptRef to_concept() const;       // C_I; requires edge labels to be role names
    ConceptTree to_tree(Elem from) const;

    std::string dump() const;
};

// I_C: a concept tree viewed as an interpretation. Inverse-role edges become
// reversed name edges.
Interpretation tree_as_interpretation(const ConceptTree& t);

// Same, but requires the tree to be inverse-free so the result is a ditree.
DitreeInterpretation tree_as_ditree(const ConceptTree& t);

// Exact extension of a concept expression.
std::set<Elem> extension(const ConceptRef& c, const Interpretation& i);

bool satisfies(const Interpretation& i, const Inclusion& inc);
bool satisfies(const Interpretation& i, const TBox& t);

// ── Homomorphisms ───────────────────────────────────────────────────────────

struct Homomorphism {
    std::map<NodeId, Elem> mapping;
};

// Root-anchored homomorphism search from a concept tree into an
// interpretation, mapping the tree root to `target`. Complete; memoises
// (node, element) feasibility, so polynomial on tree-shaped targets.
std::optional<Homomorphism> hom_tree_to_interp(const ConceptTree& t, const Interpretation& i,
                                               Elem target);

// Root-preserving homomorphism src -> dst between concept trees. A witness
// exists iff the empty TBox entails C_dst <= C_src.
std::optional<Homomorphism> hom_tree_to_tree(const ConceptTree& src, const ConceptTree& dst);

// Root-anchored homomorphism between ditree interpretations.
bool hom_ditree(const DitreeInterpretation& src, const DitreeInterpretation& dst);

// All root-anchored homomorphisms (used by smallness checks in tests and the
// replacement audits; exponential, callers keep inputs small).
std::vector<Homomorphism> all_homs_tree_to_interp(const ConceptTree& t, const Interpretation& i,
                                                  Elem target, size_t cap = 100000);

// ── Products ────────────────────────────────────────────────────────────────

// Full product; pair (d, e) is encoded as d * |J| + e.
Interpretation product(const Interpretation& i, const Interpretation& j);

// The maximal ditree subinterpretation of the product containing the pair of
// roots; only the reachable component is materialised.
DitreeInterpretation rooted_product(const DitreeInterpretation& i, const DitreeInterpretation& j);

// ── Ditree surgery ──────────────────────────────────────────────────────────

Interpretation remove_root(const DitreeInterpretation& i);                  // may be a forest
DitreeInterpretation remove_subtree(const DitreeInterpretation& i, Elem d); // d != root
DitreeInterpretation subtree_at(const DitreeInterpretation& i, Elem d);     // d != root

// Concept names A with d in A^I plus every unqualified existential witnessed
// by an edge incident to d.
std::set<BasicConcept> one_neighbourhood(const Interpretation& i, Elem d);

bool isomorphic(const Interpretation& a, const Interpretation& b);

}  // namespace dllearn

#endif  // DLLEARN_INTERP_HPP
