// Core syntax: roles, concept expressions, labelled concept trees,
// inclusions, TBoxes, fragment classification.

#ifndef DLLEARN_CORE_HPP
#define DLLEARN_CORE_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace dllearn {

// ── Role ────────────────────────────────────────────────────────────────────
// A role expression: a role name, possibly inverted. Double inversion
// normalises away in inverse().

struct Role {
    std::string name;
    bool inverted = false;

    Role() = default;
    Role(std::string n, bool inv = false) : name(std::move(n)), inverted(inv) {}

    Role inverse() const { return Role(name, !inverted); }

    bool operator==(const Role& o) const { return name == o.name && inverted == o.inverted; }
    bool operator!=(const Role& o) const { return !(*this == o); }
    bool operator<(const Role& o) const {
        if (name != o.name) return name < o.name;
        return inverted < o.inverted;
    }
};

std::string to_string(const Role& r);

// ── Concept expressions ─────────────────────────────────────────────────────
// Immutable AST, stored as written. Conjunction is kept binary; logical
// comparisons go through trees and homomorphisms, never through syntactic
// normalisation.

class Concept;
using ConceptRef = std::shared_ptr<const Concept>;

class Concept {
public:
    enum class Kind { Top, Name, And, Exists };

    Kind kind;
    std::string name;        // Kind::Name
    ConceptRef left, right;  // Kind::And
    Role role;               // Kind::Exists
    ConceptRef body;         // Kind::Exists

    static ConceptRef top();
    static ConceptRef make_name(std::string n);
    static ConceptRef conj(ConceptRef a, ConceptRef b);
    static ConceptRef conj_all(const std::vector<ConceptRef>& cs);  // empty -> top
    static ConceptRef exists(Role r, ConceptRef c);

private:
    Concept() = default;
};

// Symbol count: every concept name, role name and top occurrence counts one.
int concept_size(const ConceptRef& c);

std::string to_string(const ConceptRef& c);

// ── Concept trees ───────────────────────────────────────────────────────────
// Rooted tree with concept-name sets on nodes and roles on edges. Node 0 is
// always the root; every non-root node has exactly one parent.

using NodeId = int;

struct ConceptTree {
    struct Node {
        std::set<std::string> label;
        std::vector<std::pair<Role, NodeId>> children;
        NodeId parent = -1;
        Role parent_role;  // meaningful iff parent >= 0
    };

    std::vector<Node> nodes;

    ConceptTree() { nodes.emplace_back(); }

    NodeId root() const { return 0; }
    int node_count() const { return static_cast<int>(nodes.size()); }

    NodeId add_child(NodeId parent, const Role& r) {
        NodeId id = static_cast<NodeId>(nodes.size());
        nodes.emplace_back();
        nodes[id].parent = parent;
        nodes[id].parent_role = r;
        nodes[parent].children.emplace_back(r, id);
        return id;
    }

    // Breadth-first node order starting at the root.
    std::vector<NodeId> bfs_order() const;

    // Nodes of the subtree rooted at d, in BFS order.
    std::vector<NodeId> subtree_nodes(NodeId d) const;

    // Fresh tree equal to the subtree rooted at d.
    ConceptTree subtree(NodeId d) const;

    // Fresh tree with the subtree rooted at d removed. d must not be the root.
    ConceptTree without_subtree(NodeId d) const;

    // Graft a copy of `other` so that its root becomes this tree's node `at`
    // (labels are unioned, children appended).
    void graft(NodeId at, const ConceptTree& other);

    // Merge node `src` into node `dst`: dst absorbs src's label and children,
    // src's subtree edge is dropped. Used by the parent/child and sibling
    // merging steps. Returns the rebuilt tree.
    ConceptTree merge_nodes(NodeId dst, NodeId src) const;

    int depth() const;
    void check_valid() const;  // throws std::logic_error on malformed trees
};

ConceptTree concept_to_tree(const ConceptRef& c);
ConceptRef tree_to_concept(const ConceptTree& t);

// Order-independent structural equality (siblings and label order ignored).
bool tree_equal(const ConceptTree& a, const ConceptTree& b);

// Canonical serialisation used for tree_equal, map keys and debugging.
std::string tree_code(const ConceptTree& t);

// ── Inclusions and TBoxes ───────────────────────────────────────────────────

struct CI {
    ConceptRef lhs, rhs;
};

struct RI {
    Role lhs, rhs;
};

using Inclusion = std::variant<CI, RI>;

int inclusion_size(const Inclusion& inc);
std::string to_string(const Inclusion& inc);

bool inclusion_equal(const Inclusion& a, const Inclusion& b);  // structural, modulo conjunct order

struct Signature {
    std::set<std::string> concept_names;
    std::set<std::string> role_names;

    bool contains(const Signature& other) const;
    void merge(const Signature& other);
};

struct TBox {
    std::vector<Inclusion> axioms;

    TBox() = default;
    explicit TBox(std::vector<Inclusion> ax) : axioms(std::move(ax)) {}

    void add(Inclusion inc) { axioms.push_back(std::move(inc)); }
    void add_ci(ConceptRef l, ConceptRef r) { axioms.push_back(CI{std::move(l), std::move(r)}); }
    void add_ri(Role l, Role r) { axioms.push_back(RI{std::move(l), std::move(r)}); }

    bool empty() const { return axioms.empty(); }
    int size() const;  // sum of axiom sizes
    Signature signature() const;

    bool contains(const Inclusion& inc) const;
};

TBox tbox_union(const TBox& a, const TBox& b);

// ── Fragments ───────────────────────────────────────────────────────────────

enum class Fragment { DLLite, DLLiteHorn, EL, ELlhs };

std::string to_string(Fragment f);

// A concept name or unqualified existential restriction.
struct BasicConcept {
    bool is_name = true;
    std::string name;  // is_name
    Role role;         // !is_name, stands for exists role.top

    static BasicConcept of_name(std::string n) { return BasicConcept{true, std::move(n), Role()}; }
    static BasicConcept of_role(Role r) { return BasicConcept{false, "", std::move(r)}; }

    ConceptRef to_concept() const;

    bool operator==(const BasicConcept& o) const {
        return is_name == o.is_name && name == o.name && role == o.role;
    }
    bool operator<(const BasicConcept& o) const {
        if (is_name != o.is_name) return is_name > o.is_name;  // names first
        if (is_name) return name < o.name;
        return role < o.role;
    }
};

std::string to_string(const BasicConcept& b);

// Top-level conjuncts of a concept expression, in written order.
std::vector<ConceptRef> top_level_conjuncts(const ConceptRef& c);

std::optional<BasicConcept> as_basic(const ConceptRef& c);
bool is_conjunction_of_basics(const ConceptRef& c);
bool is_conjunction_of_names(const ConceptRef& c);
bool uses_inverse(const ConceptRef& c);
bool uses_inverse(const TBox& t);

// Every fragment the TBox syntactically belongs to.
std::set<Fragment> fragment_of(const TBox& t);
std::set<Fragment> fragment_of(const Inclusion& inc);

// ── Reserved names ──────────────────────────────────────────────────────────
// Fresh concept names introduced by preprocessing live in the "@" namespace,
// which the text format cannot produce.

inline constexpr const char* kNamedFormPrefix = "@ex_";

bool is_reserved(const std::string& name);
std::string named_form_name(const Role& r);  // r must not be inverted

}  // namespace dllearn

#endif  // DLLEARN_CORE_HPP
