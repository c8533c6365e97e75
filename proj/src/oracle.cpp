#include "dllearn/oracle.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace dllearn {

std::string QueryLog::to_jsonl() const {
    std::ostringstream out;
    for (const auto& r : trace) {
        out << "{\"kind\":\"" << (r.kind == 'm' ? "membership" : "equivalence") << "\",\"size\":"
            << r.size << ",\"answer_kind\":\"" << (r.yes ? "yes" : (r.kind == 'm' ? "no" : "counterexample"))
            << "\",\"counterexample_size\":" << r.counterexample_size << "}\n";
    }
    return out.str();
}

Teacher::Teacher(TBox target, Fragment fragment, CounterexampleStrategy strategy,
                 SessionBudget budget)
    : fragment_(fragment), strategy_(std::move(strategy)), budget_(budget) {
    std::set<Fragment> frags = fragment_of(target);
    if (!frags.count(fragment))
        throw std::invalid_argument("target TBox is not in fragment " + to_string(fragment));
    if (fragment == Fragment::DLLite || fragment == Fragment::DLLiteHorn) {
        NamedFormResult nf = named_form_preprocess(target);
        working_ = nf.tbox;
        renaming_ = nf.renaming;
        role_name_ = nf.role_name;
    } else {
        working_ = target;
    }
    stripped_ = strip_reserved(working_);
    advertised_ = stripped_.signature();
    reasoner_ = std::make_unique<Reasoner>(working_);
}

void Teacher::bump(char kind, int size) {
    QueryRecord rec;
    rec.kind = kind;
    rec.size = size;
    log_.trace.push_back(rec);
    log_.total_input_size += size;
    if (kind == 'm') {
        log_.membership_count++;
        log_.membership_total_size += size;
        if (log_.membership_count > budget_.max_membership)
            throw BudgetExceeded("membership query budget exhausted");
    } else {
        log_.equivalence_count++;
        log_.equivalence_total_size += size;
        if (log_.equivalence_count > budget_.max_equivalence)
            throw BudgetExceeded("equivalence query budget exhausted");
    }
}

void Teacher::validate_signature(const Inclusion& q) const {
    Signature sig = TBox({q}).signature();
    for (const auto& n : sig.concept_names) {
        if (advertised_.concept_names.count(n)) continue;
        if (is_reserved(n)) {
            // Reserved names must stand for a role of the signature.
            ConceptRef ex = strip_reserved(Concept::make_name(n));
            if (ex->kind == Concept::Kind::Exists && advertised_.role_names.count(ex->role.name))
                continue;
        }
        throw ProtocolViolation("query uses concept name outside the target signature: " + n);
    }
    for (const auto& r : sig.role_names) {
        if (!advertised_.role_names.count(r))
            throw ProtocolViolation("query uses role name outside the target signature: " + r);
    }
}

bool Teacher::membership(const Inclusion& q) {
    validate_signature(q);
    bump('m', inclusion_size(q));
    bool yes = reasoner_->entails(q);
    log_.trace.back().yes = yes;
    return yes;
}

EquivalenceAnswer Teacher::equivalence(const TBox& h) {
    for (const auto& a : h.axioms) validate_signature(a);
    bump('e', h.size());

    // The learners maintain target |= H; a violation is a protocol error, not
    // an answerable query.
    for (const auto& a : h.axioms) {
        if (!reasoner_->entails(a))
            throw ProtocolViolation("hypothesis is not entailed by the target: " + to_string(a));
    }

    TBox h_stripped = strip_reserved(h);
    Reasoner hyp(h_stripped);
    bool missing = false;
    for (const auto& a : stripped_.axioms) {
        if (!hyp.entails(a)) {
            missing = true;
            break;
        }
    }
    if (!missing) {
        log_.trace.back().yes = true;
        return {true, RI{Role(""), Role("")}};
    }

    Inclusion cx = pick_counterexample(h_stripped, hyp);
    int cs = inclusion_size(cx);
    log_.trace.back().counterexample_size = cs;
    log_.max_counterexample_size = std::max(log_.max_counterexample_size, cs);
    return {false, cx};
}

Inclusion Teacher::first_violated(const Reasoner& hyp) const {
    for (const auto& a : stripped_.axioms) {
        if (!hyp.entails(a)) return a;
    }
    throw std::logic_error("no violated axiom although hypothesis differs");
}

namespace {

// One unfolding step: pick a node whose label contains the left-hand side of
// some name-headed target axiom and graft the axiom's right-hand side there.
// Deepest nodes first, so repeated unfolding grows chains.
bool unfold_once(ConceptTree& t, const TBox& target, std::mt19937_64& rng) {
    std::vector<NodeId> order = t.bfs_order();
    std::reverse(order.begin(), order.end());
    for (NodeId d : order) {
        std::vector<const CI*> firing;
        for (const auto& a : target.axioms) {
            if (!std::holds_alternative<CI>(a)) continue;
            const CI& ci = std::get<CI>(a);
            if (ci.lhs->kind != Concept::Kind::Name) continue;
            if (!t.nodes[d].label.count(ci.lhs->name)) continue;
            if (ci.rhs->kind == Concept::Kind::Name || ci.rhs->kind == Concept::Kind::Top) continue;
            firing.push_back(&ci);
        }
        if (firing.empty()) continue;
        const CI* pick = firing[rng() % firing.size()];
        t.graft(d, concept_to_tree(pick->rhs));
        return true;
    }
    return false;
}

ConceptTree strip_labels(const ConceptTree& t) {
    ConceptTree out = t;
    for (auto& n : out.nodes) n.label.clear();
    return out;
}

}  // namespace

Inclusion Teacher::padded(const Reasoner& hyp) {
    Inclusion base = first_violated(hyp);
    if (!std::holds_alternative<CI>(base)) return base;
    const CI& ci = std::get<CI>(base);

    int steps = std::min<long>(strategy_.budget, log_.equivalence_count);
    std::mt19937_64 rng(strategy_.seed + static_cast<std::uint64_t>(log_.equivalence_count));
    ConceptTree rhs = concept_to_tree(ci.rhs);
    for (int i = 0; i < steps; ++i)
        if (!unfold_once(rhs, stripped_, rng)) break;

    // Prefer the weakened, label-free form when it is still a counterexample;
    // it hides the concept names the target would reveal.
    ConceptTree bare = strip_labels(rhs);
    CI weak{ci.lhs, tree_to_concept(bare)};
    if (reasoner_->entails_ci(weak) && !hyp.entails_ci(weak)) return weak;
    CI padded_ci{ci.lhs, tree_to_concept(rhs)};
    if (reasoner_->entails_ci(padded_ci) && !hyp.entails_ci(padded_ci)) return padded_ci;
    return base;
}

Inclusion Teacher::pick_counterexample(const TBox& h, const Reasoner& hyp) {
    Inclusion cx = RI{Role(""), Role("")};
    bool have = false;
    if (strategy_.kind == StrategyKind::Scripted) {
        while (script_pos_ < strategy_.script.size()) {
            const Inclusion& cand = strategy_.script[script_pos_++];
            if (reasoner_->entails(cand) && !hyp.entails(cand)) {
                cx = cand;
                have = true;
                break;
            }
        }
        if (!have) cx = first_violated(hyp);
    } else if (strategy_.kind == StrategyKind::PaddedUnfold) {
        cx = padded(hyp);
    } else {
        cx = first_violated(hyp);
    }

    // DL-Lite sessions receive counterexamples in reduced form. The
    // hypothesis check runs on the stripped variant because `hyp` reasons
    // over the reserved-free hypothesis.
    if ((fragment_ == Fragment::DLLite || fragment_ == Fragment::DLLiteHorn) &&
        std::holds_alternative<CI>(cx)) {
        for (const CI& red : to_reduced_form(std::get<CI>(cx))) {
            CI bare{strip_reserved(red.lhs), strip_reserved(red.rhs)};
            if (!hyp.entails_ci(bare)) return red;
        }
    }
    return cx;
}

std::vector<CI> Teacher::to_reduced_form(const CI& ci) const {
    if (as_basic(ci.lhs) && as_basic(ci.rhs)) return {ci};
    std::vector<ConceptRef> parts;
    for (const auto& part : top_level_conjuncts(ci.lhs)) {
        if (part->kind == Concept::Kind::Top) continue;
        auto b = as_basic(part);
        if (!b) throw std::invalid_argument("left-hand side is not a conjunction of basic concepts");
        if (b->is_name) {
            parts.push_back(part);
            continue;
        }
        auto it = role_name_.find(b->role);
        std::string name = it != role_name_.end() ? it->second : named_form_name(b->role);
        parts.push_back(Concept::make_name(name));
    }
    return {CI{Concept::conj_all(parts), ci.rhs}};
}

}  // namespace dllearn
