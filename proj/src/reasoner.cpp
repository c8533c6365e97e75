#include "dllearn/reasoner.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <functional>
#include <sstream>

namespace dllearn {

namespace {

std::vector<Role> all_role_exprs(const TBox& t) {
    std::vector<Role> out;
    for (const auto& name : t.signature().role_names) {
        out.emplace_back(name, false);
        out.emplace_back(name, true);
    }
    return out;
}

}  // namespace

Reasoner::Reasoner(TBox t) : tbox_(std::move(t)) {
    tbox_has_inverse_ = uses_inverse(tbox_);
    // Reflexive-transitive closure of the role inclusion graph, with every RI
    // contributing both itself and its inverted form.
    std::map<Role, std::set<Role>> direct;
    for (const auto& a : tbox_.axioms) {
        if (!std::holds_alternative<RI>(a)) continue;
        const RI& ri = std::get<RI>(a);
        direct[ri.lhs].insert(ri.rhs);
        direct[ri.lhs.inverse()].insert(ri.rhs.inverse());
    }
    for (const Role& r : all_role_exprs(tbox_)) {
        std::set<Role> reach{r};
        std::deque<Role> q{r};
        while (!q.empty()) {
            Role x = q.front();
            q.pop_front();
            auto it = direct.find(x);
            if (it == direct.end()) continue;
            for (const Role& y : it->second)
                if (reach.insert(y).second) q.push_back(y);
        }
        supers_[r] = std::vector<Role>(reach.begin(), reach.end());
    }
    for (auto& [r, sups] : supers_)
        for (const Role& s : sups) subs_[s].push_back(r);
    for (auto& [r, lst] : subs_) std::sort(lst.begin(), lst.end());
}

std::vector<Role> Reasoner::role_supers(const Role& r) const {
    auto it = supers_.find(r);
    if (it == supers_.end()) return {r};
    return it->second;
}

std::vector<Role> Reasoner::role_subs(const Role& r) const {
    auto it = subs_.find(r);
    if (it == subs_.end()) return {r};
    return it->second;
}

bool Reasoner::entails_ri(const RI& ri) const {
    if (ri.lhs == ri.rhs) return true;
    for (const Role& s : role_supers(ri.lhs))
        if (s == ri.rhs) return true;
    return false;
}

// ── Canonical models ────────────────────────────────────────────────────────

namespace {

struct Builder {
    const Reasoner& reasoner;
    const TBox& tbox;
    CanonicalModel model;
    int depth_bound;

    Builder(const Reasoner& r, int depth) : reasoner(r), tbox(r.tbox()), depth_bound(depth) {
        model.depth_bound = depth;
    }

    Elem add_element(int dist, int rule, int axiom) {
        Elem e = model.interp.add_element();
        model.meta.push_back(GenMeta{rule, axiom, dist});
        return e;
    }

    // Adds the edge together with all role-inclusion consequences, which is
    // the fair closure of rule applications for role inclusions.
    void add_edge_closed(Elem d, Elem e, const Role& r) {
        for (const Role& s : reasoner.role_supers(r)) model.interp.add_edge(d, e, s);
    }

    void attach(Elem at, const ConceptTree& rhs, int axiom) {
        // The root of the attached tree is identified with `at`.
        std::map<NodeId, Elem> to_elem{{rhs.root(), at}};
        for (NodeId n : rhs.bfs_order()) {
            Elem here = to_elem[n];
            for (const auto& name : rhs.nodes[n].label) model.interp.add_label(here, name);
            for (auto& [r, ch] : rhs.nodes[n].children) {
                Elem c = add_element(model.meta[here].depth + 1, 1, axiom);
                to_elem[ch] = c;
                add_edge_closed(here, c, r);
            }
        }
    }

    void build(const ConceptTree& base) {
        std::map<NodeId, Elem> to_elem;
        for (NodeId n : base.bfs_order()) {
            int dist = 0;
            if (n != base.root()) dist = model.meta[to_elem[base.nodes[n].parent]].depth + 1;
            to_elem[n] = add_element(dist, 0, -1);
        }
        for (NodeId n : base.bfs_order()) {
            for (const auto& name : base.nodes[n].label) model.interp.add_label(to_elem[n], name);
            for (auto& [r, ch] : base.nodes[n].children)
                add_edge_closed(to_elem[n], to_elem[ch], r);
        }
        model.base_size = base.node_count();
        model.root = to_elem[base.root()];

        // Global sweeps: fire every applicable CI at every element within the
        // depth bound until a sweep changes nothing. Each CI fires at most
        // once per element, so this terminates.
        std::vector<ConceptTree> lhs_trees, rhs_trees;
        for (const auto& a : tbox.axioms) {
            if (std::holds_alternative<RI>(a)) {
                lhs_trees.emplace_back();
                rhs_trees.emplace_back();
                continue;
            }
            const CI& ci = std::get<CI>(a);
            lhs_trees.push_back(concept_to_tree(ci.lhs));
            rhs_trees.push_back(concept_to_tree(ci.rhs));
        }
        bool changed = true;
        while (changed) {
            changed = false;
            for (Elem d = 0; d < model.interp.size(); ++d) {
                if (model.meta[d].depth >= depth_bound) continue;
                for (size_t ax = 0; ax < tbox.axioms.size(); ++ax) {
                    if (std::holds_alternative<RI>(tbox.axioms[ax])) continue;
                    if (!hom_tree_to_interp(lhs_trees[ax], model.interp, d)) continue;
                    if (hom_tree_to_interp(rhs_trees[ax], model.interp, d)) continue;
                    attach(d, rhs_trees[ax], static_cast<int>(ax));
                    changed = true;
                }
            }
        }
        close_frontier_labels();
    }

    // Elements at the depth bound get the full closed set of derivable
    // concept names; their one-neighbourhood determines rule firing in the
    // Horn dialects, so no name that the untruncated model would carry is
    // missing.
    void close_frontier_labels() {
        for (Elem d = 0; d < model.interp.size(); ++d) {
            if (model.meta[d].depth < depth_bound) continue;
            std::set<BasicConcept> have = one_neighbourhood(model.interp, d);
            bool grown = true;
            while (grown) {
                grown = false;
                for (const auto& a : tbox.axioms) {
                    if (std::holds_alternative<RI>(a)) continue;
                    const CI& ci = std::get<CI>(a);
                    if (!is_conjunction_of_basics(ci.lhs)) continue;
                    bool sat = true;
                    for (const auto& part : top_level_conjuncts(ci.lhs)) {
                        if (part->kind == Concept::Kind::Top) continue;
                        auto b = as_basic(part);
                        bool found = have.count(*b) > 0;
                        if (!found && !b->is_name) {
                            // A held unqualified existential also witnesses
                            // every super-role.
                            for (const auto& h : have) {
                                if (h.is_name) continue;
                                for (const Role& s : reasoner.role_supers(h.role))
                                    if (s == b->role) found = true;
                            }
                        }
                        if (!found) {
                            sat = false;
                            break;
                        }
                    }
                    if (!sat) continue;
                    for (const auto& part : top_level_conjuncts(ci.rhs)) {
                        if (part->kind == Concept::Kind::Name) {
                            if (have.insert(BasicConcept::of_name(part->name)).second) grown = true;
                        } else if (part->kind == Concept::Kind::Exists) {
                            if (have.insert(BasicConcept::of_role(part->role)).second) grown = true;
                        }
                    }
                }
            }
            for (const auto& b : have)
                if (b.is_name) model.interp.add_label(d, b.name);
        }
    }
};

}  // namespace

CanonicalModel Reasoner::canonical_model(const ConceptRef& c, int depth) const {
    ConceptTree base = concept_to_tree(c);
    std::string key = tree_code(base);
    {
        std::lock_guard<std::mutex> lock(cache_mu_);
        auto it = canon_cache_.find(key);
        if (it != canon_cache_.end() && it->second->depth_bound >= depth) return *it->second;
    }
    Builder b(*this, depth);
    b.build(base);
    auto out = std::make_shared<const CanonicalModel>(std::move(b.model));
    {
        std::lock_guard<std::mutex> lock(cache_mu_);
        auto it = canon_cache_.find(key);
        if (it == canon_cache_.end() || it->second->depth_bound < depth) canon_cache_[key] = out;
    }
    return *out;
}

// ── ELH completion ──────────────────────────────────────────────────────────

namespace {

constexpr const char* kTopName = "@top";

struct NormalTBox {
    // A1 n ... n Ak <= B
    std::vector<std::pair<std::vector<std::string>, std::string>> plain;
    // A <= some r.B
    std::vector<std::tuple<std::string, std::string, std::string>> exists_rhs;
    // some r.A <= B
    std::vector<std::tuple<std::string, std::string, std::string>> exists_lhs;
    // r [= s, closed reflexively-transitively later
    std::vector<std::pair<std::string, std::string>> ris;

    int fresh_counter = 0;
    std::string fresh() { return "@el_" + std::to_string(fresh_counter++); }

    // Returns a name equivalent to c in the direction needed for an LHS
    // position (c <= name).
    std::string name_for_lhs(const ConceptRef& c) {
        if (c->kind == Concept::Kind::Top) return kTopName;
        if (c->kind == Concept::Kind::Name) return c->name;
        std::string x = fresh();
        add(c, Concept::make_name(x));
        return x;
    }

    void add(const ConceptRef& lhs, const ConceptRef& rhs) {
        // Split conjunctive right-hand sides.
        if (rhs->kind == Concept::Kind::And) {
            add(lhs, rhs->left);
            add(lhs, rhs->right);
            return;
        }
        if (rhs->kind == Concept::Kind::Top) return;
        if (rhs->kind == Concept::Kind::Exists) {
            std::string inner;
            if (rhs->body->kind == Concept::Kind::Name) {
                inner = rhs->body->name;
            } else if (rhs->body->kind == Concept::Kind::Top) {
                inner = kTopName;
            } else {
                inner = fresh();
                add(Concept::make_name(inner), rhs->body);
            }
            std::string l = lhs_to_name(lhs);
            exists_rhs.emplace_back(l, rhs->role.name, inner);
            return;
        }
        // rhs is a name
        if (lhs->kind == Concept::Kind::Exists) {
            std::string inner = name_for_lhs(lhs->body);
            exists_lhs.emplace_back(lhs->role.name, inner, rhs->name);
            return;
        }
        std::vector<std::string> names;
        for (const auto& part : top_level_conjuncts(lhs)) {
            if (part->kind == Concept::Kind::Top) continue;
            if (part->kind == Concept::Kind::Name) names.push_back(part->name);
            else names.push_back(name_for_lhs(part));
        }
        if (names.empty()) names.push_back(kTopName);
        plain.emplace_back(std::move(names), rhs->name);
    }

    std::string lhs_to_name(const ConceptRef& lhs) {
        if (lhs->kind == Concept::Kind::Name) return lhs->name;
        if (lhs->kind == Concept::Kind::Top) return kTopName;
        std::string x = fresh();
        add(lhs, Concept::make_name(x));
        return x;
    }
};

struct CompletionGraph {
    std::map<std::string, std::set<std::string>> subsumers;       // S(X)
    std::map<std::string, std::set<std::pair<std::string, std::string>>> edges;  // R(r)

    bool in_s(const std::string& x, const std::string& a) const {
        auto it = subsumers.find(x);
        return it != subsumers.end() && it->second.count(a) > 0;
    }
};

CompletionGraph run_completion(const NormalTBox& nt, const std::set<std::string>& names,
                               const std::map<std::string, std::set<std::string>>& role_closure) {
    CompletionGraph g;
    for (const auto& n : names) g.subsumers[n] = {n, kTopName};
    g.subsumers[kTopName] = {kTopName};
    bool changed = true;
    while (changed) {
        changed = false;
        for (auto& [lhs, rhs] : nt.plain) {
            for (auto& [x, s] : g.subsumers) {
                bool all = true;
                for (const auto& a : lhs)
                    if (!s.count(a)) {
                        all = false;
                        break;
                    }
                if (all && s.insert(rhs).second) changed = true;
            }
        }
        for (auto& [a, r, b] : nt.exists_rhs) {
            for (auto& [x, s] : g.subsumers) {
                if (!s.count(a)) continue;
                if (g.edges[r].insert({x, b}).second) changed = true;
            }
        }
        // Role inclusion closure on edges.
        for (auto& [r, sups] : role_closure) {
            auto it = g.edges.find(r);
            if (it == g.edges.end()) continue;
            auto pairs = it->second;
            for (const auto& s : sups) {
                if (s == r) continue;
                for (auto& p : pairs)
                    if (g.edges[s].insert(p).second) changed = true;
            }
        }
        for (auto& [r, a, b] : nt.exists_lhs) {
            auto it = g.edges.find(r);
            if (it == g.edges.end()) continue;
            for (auto& [x, y] : it->second) {
                if (!g.in_s(y, a)) continue;
                if (g.subsumers[x].insert(b).second) changed = true;
            }
        }
    }
    return g;
}

}  // namespace

bool Reasoner::route_completion(const CI& ci) const {
    NormalTBox nt;
    for (const auto& a : tbox_.axioms) {
        if (std::holds_alternative<RI>(a)) {
            const RI& ri = std::get<RI>(a);
            nt.ris.emplace_back(ri.lhs.name, ri.rhs.name);
            continue;
        }
        const CI& x = std::get<CI>(a);
        nt.add(x.lhs, x.rhs);
    }
    std::string ql = "@q_l";
    std::string qr = "@q_r";
    nt.add(Concept::make_name(ql), ci.lhs);
    nt.add(ci.lhs, Concept::make_name(ql));
    nt.add(Concept::make_name(qr), ci.rhs);
    nt.add(ci.rhs, Concept::make_name(qr));

    std::set<std::string> names{ql, qr};
    for (auto& [lhs, rhs] : nt.plain) {
        for (const auto& n : lhs) names.insert(n);
        names.insert(rhs);
    }
    for (auto& [a, r, b] : nt.exists_rhs) {
        names.insert(a);
        names.insert(b);
    }
    for (auto& [r, a, b] : nt.exists_lhs) {
        names.insert(a);
        names.insert(b);
    }

    std::map<std::string, std::set<std::string>> role_closure;
    std::map<std::string, std::set<std::string>> direct;
    for (auto& [l, r] : nt.ris) direct[l].insert(r);
    std::set<std::string> role_names;
    for (auto& [l, r] : nt.ris) {
        role_names.insert(l);
        role_names.insert(r);
    }
    for (auto& [a, r, b] : nt.exists_rhs) role_names.insert(r);
    for (auto& [r, a, b] : nt.exists_lhs) role_names.insert(r);
    for (const auto& r : role_names) {
        std::set<std::string> reach{r};
        std::deque<std::string> q{r};
        while (!q.empty()) {
            std::string x = q.front();
            q.pop_front();
            auto it = direct.find(x);
            if (it == direct.end()) continue;
            for (const auto& y : it->second)
                if (reach.insert(y).second) q.push_back(y);
        }
        role_closure[r] = reach;
    }

    CompletionGraph g = run_completion(nt, names, role_closure);
    return g.in_s(ql, qr);
}

bool Reasoner::entails_ci_completion(const CI& ci) const { return route_completion(ci); }

bool Reasoner::entails_ci_canonical(const CI& ci) const {
    ConceptTree rhs_tree = concept_to_tree(ci.rhs);
    int depth = rhs_tree.node_count();
    CanonicalModel model = canonical_model(ci.lhs, depth);
    return hom_tree_to_interp(rhs_tree, model.interp, model.root).has_value();
}

bool Reasoner::entails_ci(const CI& ci) const {
    std::string key = tree_code(concept_to_tree(ci.lhs)) + "<=" + tree_code(concept_to_tree(ci.rhs));
    {
        std::lock_guard<std::mutex> lock(cache_mu_);
        auto it = verdict_cache_.find(key);
        if (it != verdict_cache_.end()) return it->second;
    }
    bool verdict;
    if (!tbox_has_inverse_ && !uses_inverse(ci.lhs) && !uses_inverse(ci.rhs)) {
        verdict = route_completion(ci);
    } else {
        verdict = entails_ci_canonical(ci);
    }
    {
        std::lock_guard<std::mutex> lock(cache_mu_);
        verdict_cache_[key] = verdict;
    }
    return verdict;
}

bool Reasoner::entails_ci(const ConceptRef& lhs, const ConceptRef& rhs) const {
    return entails_ci(CI{lhs, rhs});
}

bool Reasoner::entails(const Inclusion& inc) const {
    if (std::holds_alternative<RI>(inc)) return entails_ri(std::get<RI>(inc));
    return entails_ci(std::get<CI>(inc));
}

// ── Equivalence ─────────────────────────────────────────────────────────────

EquivResult equiv(const Reasoner& first, const Reasoner& second) {
    for (const auto& a : first.tbox().axioms) {
        if (!second.entails(a)) return {false, 2, a};
    }
    for (const auto& a : second.tbox().axioms) {
        if (!first.entails(a)) return {false, 1, a};
    }
    return {true, 0, RI{Role(""), Role("")}};
}

EquivResult equiv(const TBox& first, const TBox& second) {
    Reasoner ra(first), rb(second);
    return equiv(ra, rb);
}

bool entails(const TBox& t, const Inclusion& inc) { return Reasoner(t).entails(inc); }

}  // namespace dllearn
