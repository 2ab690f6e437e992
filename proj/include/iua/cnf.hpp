#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace iua {

/// Signed literal: variable index (1-based) with optional negation.
struct Literal {
    int var = 0;
    bool negated = false;

    friend bool operator==(const Literal&, const Literal&) = default;
};

struct Clause3 {
    std::array<Literal, 3> lits;
};

enum class FormulaMode { Cnf, Dnf };

/// Width-3 formula: conjunction of 3-literal disjunctions (CNF) or
/// disjunction of 3-literal conjunctions (DNF).
struct CnfFormula {
    int num_vars = 0;
    std::vector<Clause3> clauses;
    FormulaMode mode = FormulaMode::Cnf;

    int clause_count() const { return static_cast<int>(clauses.size()); }
    bool eval(const std::vector<bool>& assignment) const;

    /// Swaps CNF/DNF and negates every literal (De Morgan dual); the dual of
    /// an unsatisfiable CNF is a tautological DNF.
    CnfFormula dual() const;
};

/// Standard DIMACS cnf format. Clauses must have width exactly 3, unless
/// `pad` duplicates literals of shorter clauses up to width 3.
CnfFormula parse_dimacs(const std::string& text, FormulaMode mode = FormulaMode::Cnf,
                        bool pad = false);

std::string to_dimacs(const CnfFormula& f);

/// Exhaustive corner oracle: CNF satisfiability / DNF tautology.
bool brute_force_sat(const CnfFormula& f);
bool brute_force_tautology(const CnfFormula& f);

/// Witness assignment when one exists: satisfying (CNF) or falsifying (DNF).
std::optional<std::vector<bool>> brute_force_witness(const CnfFormula& f);

} // namespace iua
