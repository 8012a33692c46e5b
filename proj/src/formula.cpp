#include "episim/formula.hpp"

#include <algorithm>
#include <cctype>

namespace episim {

bool valid_prop_id(std::string_view s) {
    if (s.empty() || !(std::islower(static_cast<unsigned char>(s[0])))) return false;
    for (char c : s)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
    return true;
}

bool valid_agent_name(std::string_view s) {
    static const char* reserved[] = {"alive", "dead", "true", "false", "hatD"};
    if (!valid_prop_id(s)) return false;
    for (const char* r : reserved)
        if (s == r) return false;
    return true;
}

const std::string& Formula::reserved_atom() {
    static const std::string t = "__t";
    return t;
}

Formula Formula::atom(std::string name) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Atom;
    n->atom = std::move(name);
    return Formula(std::move(n));
}

Formula Formula::neg(Formula f) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Neg;
    n->a = f.node_;
    return Formula(std::move(n));
}

Formula Formula::conj(Formula l, Formula r) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::And;
    n->a = l.node_;
    n->b = r.node_;
    return Formula(std::move(n));
}

Formula Formula::knows(AgentSet g, Formula f) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::D;
    n->group = g;
    n->a = f.node_;
    return Formula(std::move(n));
}

Formula Formula::disj(Formula l, Formula r) { return neg(conj(neg(l), neg(r))); }
Formula Formula::implies(Formula l, Formula r) { return neg(conj(l, neg(r))); }

Formula Formula::truth() {
    Formula t = atom(reserved_atom());
    return disj(t, neg(t));
}

Formula Formula::falsity() {
    Formula t = atom(reserved_atom());
    return conj(t, neg(t));
}

Formula Formula::hat_knows(AgentSet g, Formula f) { return neg(knows(g, neg(f))); }
Formula Formula::alive(AgentSet g) { return hat_knows(g, truth()); }
Formula Formula::dead_agent(int a) { return knows(AgentSet::single(a), falsity()); }

Formula Formula::dead_group(AgentSet g) {
    auto agents = g.members();
    if (agents.empty()) return truth();
    Formula acc = dead_agent(agents[0]);
    for (std::size_t i = 1; i < agents.size(); ++i) acc = conj(acc, dead_agent(agents[i]));
    return acc;
}

bool Formula::equal(const Node* x, const Node* y) {
    if (x == y) return true;
    if (!x || !y || x->kind != y->kind) return false;
    switch (x->kind) {
        case Kind::Atom: return x->atom == y->atom;
        case Kind::Neg: return equal(x->a.get(), y->a.get());
        case Kind::And: return equal(x->a.get(), y->a.get()) && equal(x->b.get(), y->b.get());
        case Kind::D: return x->group == y->group && equal(x->a.get(), y->a.get());
    }
    return false;
}

int modal_depth(const Formula& f) {
    switch (f.kind()) {
        case Formula::Kind::Atom: return 0;
        case Formula::Kind::Neg: return modal_depth(f.child());
        case Formula::Kind::And: return std::max(modal_depth(f.left()), modal_depth(f.right()));
        case Formula::Kind::D: return 1 + modal_depth(f.child());
    }
    return 0;
}

static void collect_atoms(const Formula& f, std::vector<std::string>& out) {
    switch (f.kind()) {
        case Formula::Kind::Atom: out.push_back(f.atom_name()); return;
        case Formula::Kind::Neg:
        case Formula::Kind::D: collect_atoms(f.child(), out); return;
        case Formula::Kind::And:
            collect_atoms(f.left(), out);
            collect_atoms(f.right(), out);
            return;
    }
}

std::vector<std::string> formula_atoms(const Formula& f) {
    std::vector<std::string> out;
    collect_atoms(f, out);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// Parser: plain recursive descent over a hand-rolled lexer.

namespace {

enum class Tok {
    Ident, KwD, KwK, KwHatD, KwAlive, KwDead, KwTrue, KwFalse,
    Bang, Amp, Pipe, Arrow, LParen, RParen, LBrace, RBrace, Comma, End
};

struct Token {
    Tok kind;
    std::string text;
    std::size_t offset;
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    Token next() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        std::size_t at = pos_;
        if (pos_ >= src_.size()) return {Tok::End, "", at};
        char c = src_[pos_];
        if (c == '-' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '>') {
            pos_ += 2;
            return {Tok::Arrow, "->", at};
        }
        switch (c) {
            case '!': ++pos_; return {Tok::Bang, "!", at};
            case '&': ++pos_; return {Tok::Amp, "&", at};
            case '|': ++pos_; return {Tok::Pipe, "|", at};
            case '(': ++pos_; return {Tok::LParen, "(", at};
            case ')': ++pos_; return {Tok::RParen, ")", at};
            case '{': ++pos_; return {Tok::LBrace, "{", at};
            case '}': ++pos_; return {Tok::RBrace, "}", at};
            case ',': ++pos_; return {Tok::Comma, ",", at};
            case 'D': ++pos_; return {Tok::KwD, "D", at};
            case 'K': ++pos_; return {Tok::KwK, "K", at};
            default: break;
        }
        if (std::islower(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
                ++pos_;
            std::string word(src_.substr(start, pos_ - start));
            if (word == "hatD") return {Tok::KwHatD, word, at};
            if (word == "alive") return {Tok::KwAlive, word, at};
            if (word == "dead") return {Tok::KwDead, word, at};
            if (word == "true") return {Tok::KwTrue, word, at};
            if (word == "false") return {Tok::KwFalse, word, at};
            return {Tok::Ident, word, at};
        }
        throw ParseError(std::string("unknown token '") + c + "'", at);
    }

private:
    std::string_view src_;
    std::size_t pos_ = 0;
};

class Parser {
public:
    Parser(std::string_view src, const std::vector<std::string>& roster)
        : lex_(src), roster_(roster) {
        advance();
    }

    Formula parse() {
        Formula f = implies();
        expect(Tok::End, "end of input");
        return f;
    }

private:
    void advance() { cur_ = lex_.next(); }

    void expect(Tok k, const char* what) {
        if (cur_.kind != k)
            throw ParseError(std::string("expected ") + what + ", got '" + cur_.text + "'",
                             cur_.offset);
        if (k != Tok::End) advance();
    }

    Formula implies() {
        Formula l = disjunct();
        if (cur_.kind == Tok::Arrow) {
            advance();
            return Formula::implies(l, implies());  // right associative
        }
        return l;
    }

    Formula disjunct() {
        Formula l = conjunct();
        while (cur_.kind == Tok::Pipe) {
            advance();
            l = Formula::disj(l, conjunct());
        }
        return l;
    }

    Formula conjunct() {
        Formula l = unary();
        while (cur_.kind == Tok::Amp) {
            advance();
            l = Formula::conj(l, unary());
        }
        return l;
    }

    Formula unary() {
        switch (cur_.kind) {
            case Tok::Bang:
                advance();
                return Formula::neg(unary());
            case Tok::KwD: {
                advance();
                AgentSet g = group();
                return Formula::knows(g, unary());
            }
            case Tok::KwK: {
                std::size_t at = cur_.offset;
                advance();
                AgentSet g = group();
                if (g.size() != 1) throw ParseError("K takes exactly one agent", at);
                return Formula::knows(g, unary());
            }
            case Tok::KwHatD: {
                advance();
                AgentSet g = group();
                return Formula::hat_knows(g, unary());
            }
            case Tok::KwAlive: {
                advance();
                return Formula::alive(group());
            }
            case Tok::KwDead: {
                advance();
                return Formula::dead_group(group());
            }
            case Tok::KwTrue:
                advance();
                return Formula::truth();
            case Tok::KwFalse:
                advance();
                return Formula::falsity();
            case Tok::Ident: {
                Formula f = Formula::atom(cur_.text);
                advance();
                return f;
            }
            case Tok::LParen: {
                advance();
                Formula f = implies();
                expect(Tok::RParen, "')'");
                return f;
            }
            default:
                throw ParseError("expected a formula, got '" + cur_.text + "'", cur_.offset);
        }
    }

    AgentSet group() {
        expect(Tok::LBrace, "'{'");
        AgentSet g;
        if (cur_.kind != Tok::RBrace) {
            for (;;) {
                if (cur_.kind != Tok::Ident)
                    throw ParseError("expected an agent name, got '" + cur_.text + "'",
                                     cur_.offset);
                int idx = roster_index(roster_, cur_.text);
                if (idx < 0) throw ParseError("unknown agent '" + cur_.text + "'", cur_.offset);
                g = g.with(idx);
                advance();
                if (cur_.kind != Tok::Comma) break;
                advance();
            }
        }
        expect(Tok::RBrace, "'}'");
        return g;
    }

    Lexer lex_;
    Token cur_{Tok::End, "", 0};
    const std::vector<std::string>& roster_;
};

void print_rec(const Formula& f, const std::vector<std::string>& roster, std::string& out) {
    switch (f.kind()) {
        case Formula::Kind::Atom:
            out += f.atom_name();
            return;
        case Formula::Kind::Neg:
            out += '!';
            print_rec(f.child(), roster, out);
            return;
        case Formula::Kind::And:
            out += '(';
            print_rec(f.left(), roster, out);
            out += " & ";
            print_rec(f.right(), roster, out);
            out += ')';
            return;
        case Formula::Kind::D:
            out += 'D';
            out += group_label(f.group(), roster);
            out += ' ';
            print_rec(f.child(), roster, out);
            return;
    }
}

}  // namespace

Formula parse_formula(std::string_view text, const std::vector<std::string>& roster) {
    return Parser(text, roster).parse();
}

std::string print_formula(const Formula& f, const std::vector<std::string>& roster) {
    std::string out;
    print_rec(f, roster, out);
    return out;
}

}  // namespace episim
