#include "bgg/etr.hpp"

#include <cctype>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "bgg/errors.hpp"

namespace bgg {

namespace {

struct Token {
    enum class Kind { lparen, rparen, atom } kind;
    std::string text;
};

std::vector<Token> tokenize(const std::string& text) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < text.size()) {
        char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
        } else if (c == ';') {
            while (i < text.size() && text[i] != '\n') ++i;
        } else if (c == '(') {
            out.push_back({Token::Kind::lparen, "("});
            ++i;
        } else if (c == ')') {
            out.push_back({Token::Kind::rparen, ")"});
            ++i;
        } else if (c == '|') {
            std::size_t j = text.find('|', i + 1);
            if (j == std::string::npos) throw ParseError("unterminated quoted symbol");
            out.push_back({Token::Kind::atom, text.substr(i, j - i + 1)});
            i = j + 1;
        } else {
            std::size_t j = i;
            while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j])) &&
                   text[j] != '(' && text[j] != ')' && text[j] != ';')
                ++j;
            out.push_back({Token::Kind::atom, text.substr(i, j - i)});
            i = j;
        }
    }
    return out;
}

struct Sexpr {
    bool is_atom = false;
    std::string atom;
    std::vector<Sexpr> items;
};

Sexpr parse_sexpr(const std::vector<Token>& toks, std::size_t& pos) {
    if (pos >= toks.size()) throw ParseError("unexpected end of SMT document");
    const Token& t = toks[pos];
    if (t.kind == Token::Kind::atom) {
        ++pos;
        return {true, t.text, {}};
    }
    if (t.kind == Token::Kind::rparen) throw ParseError("unexpected ')'");
    ++pos; // consume '('
    Sexpr node;
    while (pos < toks.size() && toks[pos].kind != Token::Kind::rparen)
        node.items.push_back(parse_sexpr(toks, pos));
    if (pos >= toks.size()) throw ParseError("missing ')'");
    ++pos;
    return node;
}

bool looks_numeric(const std::string& s) {
    if (s.empty()) return false;
    char c = s.front();
    return std::isdigit(static_cast<unsigned char>(c)) ||
           ((c == '-' || c == '+') && s.size() > 1 && std::isdigit(static_cast<unsigned char>(s[1]))) ||
           c == '.';
}

EtrTerm term_of(const Sexpr& s) {
    EtrTerm t;
    if (s.is_atom) {
        if (looks_numeric(s.atom)) {
            t.kind = EtrTerm::Kind::number;
            try {
                t.number = parse_rational(s.atom);
            } catch (const std::invalid_argument& e) {
                throw ParseError(std::string("bad numeral in SMT term: ") + e.what());
            }
        } else {
            t.kind = EtrTerm::Kind::symbol;
            t.symbol = s.atom;
        }
        return t;
    }
    if (s.items.empty() || !s.items[0].is_atom) throw ParseError("malformed SMT application");
    t.kind = EtrTerm::Kind::apply;
    t.symbol = s.items[0].atom;
    for (std::size_t i = 1; i < s.items.size(); ++i) t.args.push_back(term_of(s.items[i]));
    return t;
}

} // namespace

EtrDocument parse_etr_document(const std::string& text) {
    auto toks = tokenize(text);
    EtrDocument doc;
    std::size_t pos = 0;
    while (pos < toks.size()) {
        Sexpr form = parse_sexpr(toks, pos);
        if (form.is_atom || form.items.empty() || !form.items[0].is_atom)
            throw ParseError("unexpected top-level form in SMT document");
        const std::string& head = form.items[0].atom;
        if (head == "set-logic") {
            if (form.items.size() == 2 && form.items[1].is_atom) doc.logic = form.items[1].atom;
        } else if (head == "declare-const") {
            if (form.items.size() != 3 || !form.items[1].is_atom)
                throw ParseError("malformed declare-const");
            doc.variables.push_back(form.items[1].atom);
        } else if (head == "assert") {
            if (form.items.size() != 2) throw ParseError("malformed assert");
            EtrTerm t = term_of(form.items[1]);
            if (t.kind != EtrTerm::Kind::apply || t.args.size() != 2)
                throw ParseError("assert must carry a binary relation");
            EtrConstraint c;
            if (t.symbol == "=")
                c.rel = EtrConstraint::Relation::eq;
            else if (t.symbol == "<=")
                c.rel = EtrConstraint::Relation::le;
            else if (t.symbol == ">=")
                c.rel = EtrConstraint::Relation::ge;
            else
                throw ParseError("unsupported relation '" + t.symbol + "'");
            c.lhs = t.args[0];
            c.rhs = t.args[1];
            doc.constraints.push_back(std::move(c));
        } else if (head == "check-sat" || head == "set-info" || head == "exit") {
            // accepted and ignored
        } else {
            throw ParseError("unsupported SMT command '" + head + "'");
        }
    }
    return doc;
}

double evaluate_etr_term(const EtrTerm& term, const std::map<std::string, double>& assignment) {
    switch (term.kind) {
        case EtrTerm::Kind::number:
            return rat_to_double(term.number);
        case EtrTerm::Kind::symbol: {
            auto it = assignment.find(term.symbol);
            if (it == assignment.end())
                throw ContractError("no value assigned to SMT variable '" + term.symbol + "'");
            return it->second;
        }
        case EtrTerm::Kind::apply:
            break;
    }
    std::vector<double> args;
    args.reserve(term.args.size());
    for (const auto& a : term.args) args.push_back(evaluate_etr_term(a, assignment));
    const std::string& op = term.symbol;
    if (op == "+") {
        double s = 0;
        for (double a : args) s += a;
        return s;
    }
    if (op == "-") {
        if (args.size() == 1) return -args[0];
        if (args.empty()) throw ParseError("'-' needs arguments");
        double s = args[0];
        for (std::size_t i = 1; i < args.size(); ++i) s -= args[i];
        return s;
    }
    if (op == "*") {
        double s = 1;
        for (double a : args) s *= a;
        return s;
    }
    if (op == "/") {
        if (args.size() != 2) throw ParseError("'/' needs two arguments");
        return args[0] / args[1];
    }
    throw ParseError("unsupported SMT operator '" + op + "'");
}

EtrCheck check_etr_assignment(const EtrDocument& doc,
                              const std::map<std::string, double>& assignment) {
    EtrCheck out;
    out.min_inequality_slack = std::numeric_limits<double>::infinity();
    for (const auto& c : doc.constraints) {
        double l = evaluate_etr_term(c.lhs, assignment);
        double r = evaluate_etr_term(c.rhs, assignment);
        switch (c.rel) {
            case EtrConstraint::Relation::eq:
                out.max_equality_residual = std::max(out.max_equality_residual, std::fabs(l - r));
                ++out.equalities;
                break;
            case EtrConstraint::Relation::le:
                out.min_inequality_slack = std::min(out.min_inequality_slack, r - l);
                ++out.inequalities;
                break;
            case EtrConstraint::Relation::ge:
                out.min_inequality_slack = std::min(out.min_inequality_slack, l - r);
                ++out.inequalities;
                break;
        }
    }
    if (out.inequalities == 0) out.min_inequality_slack = 0;
    return out;
}

} // namespace bgg
