#include "dllearn/parse.hpp"

#include <cctype>
#include <sstream>
#include <vector>

namespace dllearn {

namespace {

struct Token {
    enum Kind { Name, Top, Some, Amp, Dot, Minus, LPar, RPar, SubCI, EqCI, SubRI, EqRI, End };
    Kind kind;
    std::string text;
    int line, col;
};

class Lexer {
public:
    Lexer(const std::string& s, int line) : s_(s), line_(line) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        while (true) {
            skip_ws();
            int col = static_cast<int>(pos_) + 1;
            if (pos_ >= s_.size() || s_[pos_] == '#') {
                out.push_back({Token::End, "", line_, col});
                return out;
            }
            char c = s_[pos_];
            if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                std::string name;
                while (pos_ < s_.size() &&
                       (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
                    name += s_[pos_++];
                if (name == "top") out.push_back({Token::Top, name, line_, col});
                else if (name == "some") out.push_back({Token::Some, name, line_, col});
                else out.push_back({Token::Name, name, line_, col});
                continue;
            }
            switch (c) {
                case '&': out.push_back({Token::Amp, "&", line_, col}); pos_++; break;
                case '.': out.push_back({Token::Dot, ".", line_, col}); pos_++; break;
                case '-': out.push_back({Token::Minus, "-", line_, col}); pos_++; break;
                case '(': out.push_back({Token::LPar, "(", line_, col}); pos_++; break;
                case ')': out.push_back({Token::RPar, ")", line_, col}); pos_++; break;
                case '<':
                    expect2("<=", col);
                    out.push_back({Token::SubCI, "<=", line_, col});
                    break;
                case '[':
                    expect2("[=", col);
                    out.push_back({Token::SubRI, "[=", line_, col});
                    break;
                case '=':
                    if (s_.compare(pos_, 3, "=[=") == 0) {
                        out.push_back({Token::EqRI, "=[=", line_, col});
                        pos_ += 3;
                    } else if (s_.compare(pos_, 2, "==") == 0) {
                        out.push_back({Token::EqCI, "==", line_, col});
                        pos_ += 2;
                    } else {
                        throw ParseError(line_, col, "unknown operator starting with '='");
                    }
                    break;
                default:
                    throw ParseError(line_, col, std::string("unexpected character '") + c + "'");
            }
        }
    }

private:
    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) pos_++;
    }
    void expect2(const char* op, int col) {
        if (s_.compare(pos_, 2, op) != 0)
            throw ParseError(line_, col, std::string("unknown operator starting with '") + s_[pos_] + "'");
        pos_ += 2;
    }

    const std::string& s_;
    int line_;
    size_t pos_ = 0;
};

class LineParser {
public:
    LineParser(std::vector<Token> toks) : toks_(std::move(toks)) {}

    // axiom line; appends one or two inclusions
    void parse_axiom(TBox& out) {
        // Role axioms start with ROLE followed by [=, =[= or the role's own
        // inverse marker; disambiguate by scanning for the operator.
        if (is_role_axiom()) {
            Role l = parse_role();
            Token op = next();
            Role r = parse_role();
            expect(Token::End, "end of line");
            if (op.kind == Token::SubRI) {
                out.add_ri(l, r);
            } else if (op.kind == Token::EqRI) {
                out.add_ri(l, r);
                out.add_ri(r, l);
            } else {
                throw ParseError(op.line, op.col, "expected role inclusion operator");
            }
            return;
        }
        ConceptRef l = parse_concept_expr();
        Token op = next();
        if (op.kind != Token::SubCI && op.kind != Token::EqCI)
            throw ParseError(op.line, op.col, "expected '<=' or '==' between concepts");
        ConceptRef r = parse_concept_expr();
        expect(Token::End, "end of line");
        out.add_ci(l, r);
        if (op.kind == Token::EqCI) out.add_ci(r, l);
    }

    ConceptRef parse_concept_only() {
        ConceptRef c = parse_concept_expr();
        expect(Token::End, "end of input");
        return c;
    }

private:
    bool is_role_axiom() const {
        // NAME [-] ('[=' | '=[=') ...
        size_t i = 0;
        if (i >= toks_.size() || toks_[i].kind != Token::Name) return false;
        i++;
        if (i < toks_.size() && toks_[i].kind == Token::Minus) i++;
        return i < toks_.size() && (toks_[i].kind == Token::SubRI || toks_[i].kind == Token::EqRI);
    }

    ConceptRef parse_concept_expr() {
        ConceptRef c = parse_factor();
        while (peek().kind == Token::Amp) {
            next();
            c = Concept::conj(c, parse_factor());
        }
        return c;
    }

    ConceptRef parse_factor() {
        Token t = next();
        switch (t.kind) {
            case Token::Top: return Concept::top();
            case Token::Name: {
                if (peek().kind == Token::Minus)
                    throw ParseError(peek().line, peek().col,
                                     "inverse marker '-' is only allowed on roles");
                return Concept::make_name(t.text);
            }
            case Token::Some: {
                Role r = parse_role();
                expect(Token::Dot, "'.' after role");
                // The body extends maximally to the right.
                return Concept::exists(r, parse_concept_expr());
            }
            case Token::LPar: {
                ConceptRef c = parse_concept_expr();
                expect(Token::RPar, "')'");
                return c;
            }
            default:
                throw ParseError(t.line, t.col, "expected a concept");
        }
    }

    Role parse_role() {
        Token t = next();
        if (t.kind != Token::Name) throw ParseError(t.line, t.col, "expected a role name");
        bool inv = false;
        if (peek().kind == Token::Minus) {
            next();
            inv = true;
        }
        return Role(t.text, inv);
    }

    const Token& peek() const { return toks_[pos_]; }
    Token next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
    void expect(Token::Kind k, const char* what) {
        Token t = next();
        if (t.kind != k) throw ParseError(t.line, t.col, std::string("expected ") + what);
    }

    std::vector<Token> toks_;
    size_t pos_ = 0;
};

}  // namespace

TBox parse_tbox(const std::string& text) {
    TBox out;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        lineno++;
        std::vector<Token> toks = Lexer(line, lineno).run();
        if (toks.size() == 1) continue;  // blank or comment-only line
        LineParser(std::move(toks)).parse_axiom(out);
    }
    return out;
}

ConceptRef parse_concept(const std::string& text) {
    std::vector<Token> toks = Lexer(text, 1).run();
    if (toks.size() == 1) throw ParseError(1, 1, "expected a concept");
    return LineParser(std::move(toks)).parse_concept_only();
}

std::string to_text(const TBox& t) {
    std::ostringstream out;
    std::vector<bool> used(t.axioms.size(), false);
    auto reverse_of = [&](size_t i, size_t j) {
        const Inclusion& a = t.axioms[i];
        const Inclusion& b = t.axioms[j];
        if (a.index() != b.index()) return false;
        if (std::holds_alternative<RI>(a)) {
            const RI& x = std::get<RI>(a);
            const RI& y = std::get<RI>(b);
            return x.lhs == y.rhs && x.rhs == y.lhs;
        }
        const CI& x = std::get<CI>(a);
        const CI& y = std::get<CI>(b);
        return tree_equal(concept_to_tree(x.lhs), concept_to_tree(y.rhs)) &&
               tree_equal(concept_to_tree(x.rhs), concept_to_tree(y.lhs));
    };
    for (size_t i = 0; i < t.axioms.size(); ++i) {
        if (used[i]) continue;
        used[i] = true;
        bool folded = false;
        for (size_t j = i + 1; j < t.axioms.size(); ++j) {
            if (used[j]) continue;
            if (reverse_of(i, j)) {
                used[j] = true;
                if (std::holds_alternative<RI>(t.axioms[i])) {
                    const RI& ri = std::get<RI>(t.axioms[i]);
                    out << to_string(ri.lhs) << " =[= " << to_string(ri.rhs) << "\n";
                } else {
                    const CI& ci = std::get<CI>(t.axioms[i]);
                    out << to_string(ci.lhs) << " == " << to_string(ci.rhs) << "\n";
                }
                folded = true;
                break;
            }
        }
        if (!folded) out << to_string(t.axioms[i]) << "\n";
    }
    return out.str();
}

}  // namespace dllearn
