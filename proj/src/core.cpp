#include "dllearn/core.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <sstream>

namespace dllearn {

std::string to_string(const Role& r) { return r.inverted ? r.name + "-" : r.name; }

// ── Concept ─────────────────────────────────────────────────────────────────

ConceptRef Concept::top() {
    auto c = std::shared_ptr<Concept>(new Concept());
    c->kind = Kind::Top;
    return c;
}

ConceptRef Concept::make_name(std::string n) {
    auto c = std::shared_ptr<Concept>(new Concept());
    c->kind = Kind::Name;
    c->name = std::move(n);
    return c;
}

ConceptRef Concept::conj(ConceptRef a, ConceptRef b) {
    auto c = std::shared_ptr<Concept>(new Concept());
    c->kind = Kind::And;
    c->left = std::move(a);
    c->right = std::move(b);
    return c;
}

ConceptRef Concept::conj_all(const std::vector<ConceptRef>& cs) {
    if (cs.empty()) return top();
    ConceptRef acc = cs[0];
    for (size_t i = 1; i < cs.size(); ++i) acc = conj(acc, cs[i]);
    return acc;
}

ConceptRef Concept::exists(Role r, ConceptRef c) {
    auto e = std::shared_ptr<Concept>(new Concept());
    e->kind = Kind::Exists;
    e->role = std::move(r);
    e->body = std::move(c);
    return e;
}

int concept_size(const ConceptRef& c) {
    switch (c->kind) {
        case Concept::Kind::Top: return 1;
        case Concept::Kind::Name: return 1;
        case Concept::Kind::And: return concept_size(c->left) + concept_size(c->right);
        case Concept::Kind::Exists: return 1 + concept_size(c->body);
    }
    return 0;
}

std::string to_string(const ConceptRef& c) {
    switch (c->kind) {
        case Concept::Kind::Top: return "top";
        case Concept::Kind::Name: return c->name;
        case Concept::Kind::And: return to_string(c->left) + " & " + to_string(c->right);
        case Concept::Kind::Exists: {
            std::string b = to_string(c->body);
            if (c->body->kind == Concept::Kind::And) b = "(" + b + ")";
            return "some " + to_string(c->role) + "." + b;
        }
    }
    return "?";
}

// ── ConceptTree ─────────────────────────────────────────────────────────────

std::vector<NodeId> ConceptTree::bfs_order() const {
    std::vector<NodeId> out;
    std::deque<NodeId> q{root()};
    while (!q.empty()) {
        NodeId d = q.front();
        q.pop_front();
        out.push_back(d);
        for (auto& [r, ch] : nodes[d].children) q.push_back(ch);
    }
    return out;
}

std::vector<NodeId> ConceptTree::subtree_nodes(NodeId d) const {
    std::vector<NodeId> out;
    std::deque<NodeId> q{d};
    while (!q.empty()) {
        NodeId x = q.front();
        q.pop_front();
        out.push_back(x);
        for (auto& [r, ch] : nodes[x].children) q.push_back(ch);
    }
    return out;
}

namespace {

// Copy the subtree of `src` rooted at `from` into `dst` under `to`.
void copy_subtree(const ConceptTree& src, NodeId from, ConceptTree& dst, NodeId to) {
    dst.nodes[to].label.insert(src.nodes[from].label.begin(), src.nodes[from].label.end());
    for (auto& [r, ch] : src.nodes[from].children) {
        NodeId nc = dst.add_child(to, r);
        copy_subtree(src, ch, dst, nc);
    }
}

}  // namespace

ConceptTree ConceptTree::subtree(NodeId d) const {
    ConceptTree t;
    copy_subtree(*this, d, t, t.root());
    return t;
}

ConceptTree ConceptTree::without_subtree(NodeId d) const {
    if (d == root()) throw std::logic_error("cannot remove the root subtree");
    std::set<NodeId> dropped;
    for (NodeId x : subtree_nodes(d)) dropped.insert(x);
    ConceptTree t;
    std::function<void(NodeId, NodeId)> rec = [&](NodeId from, NodeId to) {
        t.nodes[to].label = nodes[from].label;
        for (auto& [r, ch] : nodes[from].children) {
            if (dropped.count(ch)) continue;
            NodeId nc = t.add_child(to, r);
            rec(ch, nc);
        }
    };
    rec(root(), t.root());
    return t;
}

void ConceptTree::graft(NodeId at, const ConceptTree& other) {
    copy_subtree(other, other.root(), *this, at);
}

ConceptTree ConceptTree::merge_nodes(NodeId dst, NodeId src) const {
    if (src == root() || dst == src) throw std::logic_error("bad merge");
    // Rebuild, redirecting src's label and children onto dst and dropping the
    // edge into src.
    ConceptTree t;
    std::map<NodeId, NodeId> to_new;
    std::function<void(NodeId, NodeId)> rec = [&](NodeId from, NodeId to) {
        to_new[from] = to;
        t.nodes[to].label.insert(nodes[from].label.begin(), nodes[from].label.end());
        for (auto& [r, ch] : nodes[from].children) {
            if (ch == src) continue;
            NodeId nc = t.add_child(to, r);
            rec(ch, nc);
        }
    };
    rec(root(), t.root());
    if (!to_new.count(dst)) throw std::logic_error("merge target inside merged subtree");
    NodeId nd = to_new[dst];
    t.nodes[nd].label.insert(nodes[src].label.begin(), nodes[src].label.end());
    std::function<void(NodeId, NodeId)> rec2 = [&](NodeId from, NodeId to) {
        t.nodes[to].label.insert(nodes[from].label.begin(), nodes[from].label.end());
        for (auto& [r, ch] : nodes[from].children) {
            NodeId nc = t.add_child(to, r);
            rec2(ch, nc);
        }
    };
    for (auto& [r, ch] : nodes[src].children) {
        NodeId nc = t.add_child(nd, r);
        rec2(ch, nc);
    }
    return t;
}

int ConceptTree::depth() const {
    std::function<int(NodeId)> rec = [&](NodeId d) {
        int best = 0;
        for (auto& [r, ch] : nodes[d].children) best = std::max(best, 1 + rec(ch));
        return best;
    };
    return rec(root());
}

void ConceptTree::check_valid() const {
    if (nodes.empty()) throw std::logic_error("empty tree");
    std::vector<int> seen(nodes.size(), 0);
    for (NodeId d : bfs_order()) {
        if (d < 0 || d >= node_count()) throw std::logic_error("bad node id");
        seen[d]++;
    }
    for (size_t i = 0; i < nodes.size(); ++i) {
        if (seen[i] != 1) throw std::logic_error("tree not connected or has a cycle");
        if (i == 0 && nodes[i].parent != -1) throw std::logic_error("root has a parent");
        if (i > 0 && nodes[i].parent < 0) throw std::logic_error("non-root without parent");
    }
}

ConceptTree concept_to_tree(const ConceptRef& c) {
    ConceptTree t;
    std::function<void(const ConceptRef&, NodeId)> rec = [&](const ConceptRef& e, NodeId at) {
        switch (e->kind) {
            case Concept::Kind::Top: break;
            case Concept::Kind::Name: t.nodes[at].label.insert(e->name); break;
            case Concept::Kind::And:
                rec(e->left, at);
                rec(e->right, at);
                break;
            case Concept::Kind::Exists: {
                NodeId ch = t.add_child(at, e->role);
                rec(e->body, ch);
                break;
            }
        }
    };
    rec(c, t.root());
    return t;
}

ConceptRef tree_to_concept(const ConceptTree& t) {
    std::function<ConceptRef(NodeId)> rec = [&](NodeId d) -> ConceptRef {
        std::vector<ConceptRef> parts;
        for (const auto& n : t.nodes[d].label) parts.push_back(Concept::make_name(n));
        for (auto& [r, ch] : t.nodes[d].children) parts.push_back(Concept::exists(r, rec(ch)));
        return Concept::conj_all(parts);
    };
    return rec(t.root());
}

std::string tree_code(const ConceptTree& t) {
    std::function<std::string(NodeId)> rec = [&](NodeId d) {
        std::string s = "{";
        bool first = true;
        for (const auto& n : t.nodes[d].label) {
            if (!first) s += ",";
            s += n;
            first = false;
        }
        s += "}";
        std::vector<std::string> kids;
        for (auto& [r, ch] : t.nodes[d].children) kids.push_back(to_string(r) + ">" + rec(ch));
        std::sort(kids.begin(), kids.end());
        for (auto& k : kids) s += "(" + k + ")";
        return s;
    };
    return rec(t.root());
}

bool tree_equal(const ConceptTree& a, const ConceptTree& b) { return tree_code(a) == tree_code(b); }

// ── Inclusions, TBoxes ──────────────────────────────────────────────────────

int inclusion_size(const Inclusion& inc) {
    if (std::holds_alternative<RI>(inc)) return 2;
    const CI& ci = std::get<CI>(inc);
    return concept_size(ci.lhs) + concept_size(ci.rhs);
}

std::string to_string(const Inclusion& inc) {
    if (std::holds_alternative<RI>(inc)) {
        const RI& ri = std::get<RI>(inc);
        return to_string(ri.lhs) + " [= " + to_string(ri.rhs);
    }
    const CI& ci = std::get<CI>(inc);
    return to_string(ci.lhs) + " <= " + to_string(ci.rhs);
}

bool inclusion_equal(const Inclusion& a, const Inclusion& b) {
    if (a.index() != b.index()) return false;
    if (std::holds_alternative<RI>(a)) {
        return std::get<RI>(a).lhs == std::get<RI>(b).lhs && std::get<RI>(a).rhs == std::get<RI>(b).rhs;
    }
    const CI& x = std::get<CI>(a);
    const CI& y = std::get<CI>(b);
    return tree_equal(concept_to_tree(x.lhs), concept_to_tree(y.lhs)) &&
           tree_equal(concept_to_tree(x.rhs), concept_to_tree(y.rhs));
}

bool Signature::contains(const Signature& other) const {
    for (const auto& n : other.concept_names)
        if (!concept_names.count(n)) return false;
    for (const auto& r : other.role_names)
        if (!role_names.count(r)) return false;
    return true;
}

void Signature::merge(const Signature& other) {
    concept_names.insert(other.concept_names.begin(), other.concept_names.end());
    role_names.insert(other.role_names.begin(), other.role_names.end());
}

namespace {

void collect(const ConceptRef& c, Signature& sig) {
    switch (c->kind) {
        case Concept::Kind::Top: break;
        case Concept::Kind::Name: sig.concept_names.insert(c->name); break;
        case Concept::Kind::And:
            collect(c->left, sig);
            collect(c->right, sig);
            break;
        case Concept::Kind::Exists:
            sig.role_names.insert(c->role.name);
            collect(c->body, sig);
            break;
    }
}

}  // namespace

int TBox::size() const {
    int s = 0;
    for (const auto& a : axioms) s += inclusion_size(a);
    return s;
}

Signature TBox::signature() const {
    Signature sig;
    for (const auto& a : axioms) {
        if (std::holds_alternative<RI>(a)) {
            sig.role_names.insert(std::get<RI>(a).lhs.name);
            sig.role_names.insert(std::get<RI>(a).rhs.name);
        } else {
            collect(std::get<CI>(a).lhs, sig);
            collect(std::get<CI>(a).rhs, sig);
        }
    }
    return sig;
}

bool TBox::contains(const Inclusion& inc) const {
    for (const auto& a : axioms)
        if (inclusion_equal(a, inc)) return true;
    return false;
}

TBox tbox_union(const TBox& a, const TBox& b) {
    TBox t = a;
    for (const auto& ax : b.axioms) t.add(ax);
    return t;
}

// ── Fragments ───────────────────────────────────────────────────────────────

std::string to_string(Fragment f) {
    switch (f) {
        case Fragment::DLLite: return "dllite";
        case Fragment::DLLiteHorn: return "horn";
        case Fragment::EL: return "el";
        case Fragment::ELlhs: return "ellhs";
    }
    return "?";
}

ConceptRef BasicConcept::to_concept() const {
    if (is_name) return Concept::make_name(name);
    return Concept::exists(role, Concept::top());
}

std::string to_string(const BasicConcept& b) { return to_string(b.to_concept()); }

std::vector<ConceptRef> top_level_conjuncts(const ConceptRef& c) {
    std::vector<ConceptRef> out;
    std::function<void(const ConceptRef&)> rec = [&](const ConceptRef& e) {
        if (e->kind == Concept::Kind::And) {
            rec(e->left);
            rec(e->right);
        } else {
            out.push_back(e);
        }
    };
    rec(c);
    return out;
}

std::optional<BasicConcept> as_basic(const ConceptRef& c) {
    if (c->kind == Concept::Kind::Name) return BasicConcept::of_name(c->name);
    if (c->kind == Concept::Kind::Exists && c->body->kind == Concept::Kind::Top)
        return BasicConcept::of_role(c->role);
    return std::nullopt;
}

bool is_conjunction_of_basics(const ConceptRef& c) {
    for (const auto& part : top_level_conjuncts(c)) {
        if (part->kind == Concept::Kind::Top) continue;
        if (!as_basic(part)) return false;
    }
    return true;
}

bool is_conjunction_of_names(const ConceptRef& c) {
    for (const auto& part : top_level_conjuncts(c)) {
        if (part->kind == Concept::Kind::Top) continue;
        if (part->kind != Concept::Kind::Name) return false;
    }
    return true;
}

bool uses_inverse(const ConceptRef& c) {
    switch (c->kind) {
        case Concept::Kind::Top:
        case Concept::Kind::Name: return false;
        case Concept::Kind::And: return uses_inverse(c->left) || uses_inverse(c->right);
        case Concept::Kind::Exists: return c->role.inverted || uses_inverse(c->body);
    }
    return false;
}

bool uses_inverse(const TBox& t) {
    for (const auto& a : t.axioms) {
        if (std::holds_alternative<RI>(a)) {
            if (std::get<RI>(a).lhs.inverted || std::get<RI>(a).rhs.inverted) return true;
        } else {
            if (uses_inverse(std::get<CI>(a).lhs) || uses_inverse(std::get<CI>(a).rhs)) return true;
        }
    }
    return false;
}

std::set<Fragment> fragment_of(const Inclusion& inc) {
    std::set<Fragment> out;
    if (std::holds_alternative<RI>(inc)) {
        out.insert(Fragment::DLLite);
        out.insert(Fragment::DLLiteHorn);
        return out;
    }
    const CI& ci = std::get<CI>(inc);
    bool lhs_basic = as_basic(ci.lhs).has_value();
    bool lhs_basics = is_conjunction_of_basics(ci.lhs);
    bool no_inv = !uses_inverse(ci.lhs) && !uses_inverse(ci.rhs);
    if (lhs_basic) out.insert(Fragment::DLLite);
    if (lhs_basics) out.insert(Fragment::DLLiteHorn);
    if (no_inv) {
        out.insert(Fragment::EL);
        if (ci.rhs->kind == Concept::Kind::Name) out.insert(Fragment::ELlhs);
    }
    return out;
}

std::set<Fragment> fragment_of(const TBox& t) {
    std::set<Fragment> out{Fragment::DLLite, Fragment::DLLiteHorn, Fragment::EL, Fragment::ELlhs};
    for (const auto& a : t.axioms) {
        std::set<Fragment> fa = fragment_of(a);
        if (std::holds_alternative<RI>(a)) {
            // RIs are not part of the EL fragments.
            out.erase(Fragment::EL);
            out.erase(Fragment::ELlhs);
        }
        for (auto it = out.begin(); it != out.end();) {
            if (!fa.count(*it)) it = out.erase(it);
            else ++it;
        }
    }
    return out;
}

bool is_reserved(const std::string& name) { return !name.empty() && name[0] == '@'; }

std::string named_form_name(const Role& r) {
    if (r.inverted) return std::string(kNamedFormPrefix) + "i_" + r.name;
    return std::string(kNamedFormPrefix) + r.name;
}

}  // namespace dllearn
