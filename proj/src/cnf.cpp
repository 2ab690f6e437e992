#include "iua/cnf.hpp"
#include "iua/errors.hpp"

#include <cmath>
#include <sstream>

namespace iua {

bool CnfFormula::eval(const std::vector<bool>& assignment) const {
    if (static_cast<int>(assignment.size()) != num_vars) {
        throw DimensionError("assignment size != num_vars");
    }
    auto lit_value = [&](const Literal& l) {
        bool v = assignment[l.var - 1];
        return l.negated ? !v : v;
    };
    if (mode == FormulaMode::Cnf) {
        for (const Clause3& c : clauses) {
            bool any = false;
            for (const Literal& l : c.lits) any = any || lit_value(l);
            if (!any) return false;
        }
        return true;
    }
    for (const Clause3& c : clauses) {
        bool all = true;
        for (const Literal& l : c.lits) all = all && lit_value(l);
        if (all) return true;
    }
    return false;
}

CnfFormula CnfFormula::dual() const {
    CnfFormula d = *this;
    d.mode = (mode == FormulaMode::Cnf) ? FormulaMode::Dnf : FormulaMode::Cnf;
    for (Clause3& c : d.clauses) {
        for (Literal& l : c.lits) l.negated = !l.negated;
    }
    return d;
}

CnfFormula parse_dimacs(const std::string& text, FormulaMode mode, bool pad) {
    CnfFormula f;
    f.mode = mode;
    std::istringstream in(text);
    std::string line;
    bool header_seen = false;
    int declared_clauses = -1;
    std::vector<int> current;

    auto flush_clause = [&](std::vector<int>& lits) {
        if (lits.empty()) throw ParseError("dimacs: empty clause");
        if (lits.size() < 3 && pad) {
            while (lits.size() < 3) lits.push_back(lits.back());
        }
        if (lits.size() != 3) {
            throw ParseError("dimacs: clause width " + std::to_string(lits.size()) +
                             ", expected exactly 3");
        }
        Clause3 c;
        for (int i = 0; i < 3; ++i) {
            int v = lits[i];
            int var = std::abs(v);
            if (var < 1 || var > f.num_vars) {
                throw ParseError("dimacs: literal " + std::to_string(v) + " out of range");
            }
            c.lits[i] = Literal{var, v < 0};
        }
        f.clauses.push_back(c);
        lits.clear();
    };

    while (std::getline(in, line)) {
        std::istringstream row(line);
        std::string tok;
        if (!(row >> tok)) continue;
        if (tok == "c") continue;
        if (tok == "p") {
            std::string fmt;
            int nv = 0, nc = 0;
            if (!(row >> fmt >> nv >> nc) || fmt != "cnf" || nv < 1 || nc < 0) {
                throw ParseError("dimacs: malformed header '" + line + "'");
            }
            f.num_vars = nv;
            declared_clauses = nc;
            header_seen = true;
            continue;
        }
        if (!header_seen) throw ParseError("dimacs: clause before header");
        row.clear();
        row.str(line);
        int v = 0;
        while (row >> v) {
            if (v == 0) {
                flush_clause(current);
            } else {
                current.push_back(v);
            }
        }
    }
    if (!header_seen) throw ParseError("dimacs: missing header");
    if (!current.empty()) throw ParseError("dimacs: clause missing 0 terminator");
    if (f.clauses.empty()) throw ParseError("dimacs: no clauses");
    if (declared_clauses >= 0 && declared_clauses != f.clause_count()) {
        throw ParseError("dimacs: header declares " + std::to_string(declared_clauses) +
                         " clauses, found " + std::to_string(f.clause_count()));
    }
    return f;
}

std::string to_dimacs(const CnfFormula& f) {
    std::ostringstream out;
    out << "p cnf " << f.num_vars << ' ' << f.clause_count() << '\n';
    for (const Clause3& c : f.clauses) {
        for (const Literal& l : c.lits) out << (l.negated ? -l.var : l.var) << ' ';
        out << "0\n";
    }
    return out.str();
}

namespace {

std::optional<std::vector<bool>> exhaustive(const CnfFormula& f, bool stop_on) {
    if (f.num_vars > 30) throw OracleInfeasibleError("brute-force oracle limited to 30 vars");
    std::vector<bool> assignment(f.num_vars, false);
    const std::uint64_t total = 1ull << f.num_vars;
    for (std::uint64_t bits = 0; bits < total; ++bits) {
        for (int v = 0; v < f.num_vars; ++v) assignment[v] = (bits >> v) & 1;
        if (f.eval(assignment) == stop_on) return assignment;
    }
    return std::nullopt;
}

} // namespace

bool brute_force_sat(const CnfFormula& f) {
    return exhaustive(f, true).has_value();
}

bool brute_force_tautology(const CnfFormula& f) {
    return !exhaustive(f, false).has_value();
}

std::optional<std::vector<bool>> brute_force_witness(const CnfFormula& f) {
    return exhaustive(f, f.mode == FormulaMode::Cnf);
}

} // namespace iua
