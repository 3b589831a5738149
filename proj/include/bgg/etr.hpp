#pragma once

// Reader and evaluator for the constraint subset of SMT-LIB 2 that
// export_etr_constraints emits: declarations, (assert (=|<=|>= lhs rhs)) over
// +, -, *, / terms with rational literals. Enough to round-trip the
// artifact's own exports and to substitute-and-check numeric solutions; this
// is not a general SMT front end.

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "bgg/rational.hpp"

namespace bgg {

struct EtrTerm {
    enum class Kind { number, symbol, apply };
    Kind kind = Kind::number;
    Rat number;
    std::string symbol; // also the operator name for apply
    std::vector<EtrTerm> args;
};

struct EtrConstraint {
    enum class Relation { eq, le, ge };
    Relation rel = Relation::eq;
    EtrTerm lhs, rhs;
};

struct EtrDocument {
    std::string logic;
    std::vector<std::string> variables;
    std::vector<EtrConstraint> constraints;
};

EtrDocument parse_etr_document(const std::string& text);

double evaluate_etr_term(const EtrTerm& term, const std::map<std::string, double>& assignment);

struct EtrCheck {
    double max_equality_residual = 0; // max |lhs - rhs| over equalities
    double min_inequality_slack = 0;  // min signed slack over inequalities
    std::size_t equalities = 0;
    std::size_t inequalities = 0;
};

EtrCheck check_etr_assignment(const EtrDocument& doc,
                              const std::map<std::string, double>& assignment);

} // namespace bgg
