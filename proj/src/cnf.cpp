#include "dsr/cnf.hpp"

#include <istream>
#include <ostream>
#include <set>

#include "dsr/detail/parse.hpp"
#include "dsr/errors.hpp"

namespace dsr {

void validate_formula(const CnfFormula& f) {
    if (f.variable_count <= 0) throw invalid_input_error("formula has no variables");
    if (f.clauses.empty()) throw invalid_input_error("formula has no clauses");
    for (size_t j = 0; j < f.clauses.size(); ++j) {
        const auto& clause = f.clauses[j];
        if (clause.empty())
            throw invalid_input_error("clause " + std::to_string(j + 1) + " is empty");
        std::set<int> vars;
        for (const Literal& lit : clause) {
            if (lit.var < 0 || lit.var >= f.variable_count)
                throw invalid_input_error("clause " + std::to_string(j + 1) +
                                          " references variable out of range");
            if (!vars.insert(lit.var).second)
                throw invalid_input_error("clause " + std::to_string(j + 1) +
                                          " repeats variable " + std::to_string(lit.var + 1));
        }
    }
}

bool literal_satisfied(const Literal& lit, const Assignment& a) {
    return a.value(lit.var) == lit.positive;
}

bool clause_satisfied(const std::vector<Literal>& clause, const Assignment& a) {
    for (const Literal& lit : clause)
        if (literal_satisfied(lit, a)) return true;
    return false;
}

bool satisfies(const CnfFormula& f, const Assignment& a) {
    if (a.size() != f.variable_count)
        throw invalid_input_error("assignment length " + std::to_string(a.size()) +
                                  " does not match variable count " +
                                  std::to_string(f.variable_count));
    for (const auto& clause : f.clauses)
        if (!clause_satisfied(clause, a)) return false;
    return true;
}

CnfFormula read_dimacs(std::istream& in) {
    CnfFormula f;
    bool saw_header = false;
    int declared_clauses = 0;
    std::vector<Literal> current;
    for (const auto& line : detail::read_lines(in)) {
        if (detail::is_blank(line.text)) continue;
        auto toks = detail::split_ws(line.text);
        if (toks[0] == "c" || toks[0][0] == 'c') continue;
        if (toks[0] == "p") {
            if (saw_header) throw parse_error("line " + std::to_string(line.number) +
                                              ": duplicate DIMACS header");
            if (toks.size() != 4 || toks[1] != "cnf")
                throw parse_error("line " + std::to_string(line.number) +
                                  ": expected 'p cnf <vars> <clauses>'");
            f.variable_count = detail::parse_int(toks[2], line.number);
            declared_clauses = detail::parse_int(toks[3], line.number);
            if (f.variable_count <= 0)
                throw parse_error("line " + std::to_string(line.number) +
                                  ": variable count must be positive");
            if (declared_clauses < 0)
                throw parse_error("line " + std::to_string(line.number) +
                                  ": clause count must be non-negative");
            saw_header = true;
            continue;
        }
        if (!saw_header)
            throw parse_error("line " + std::to_string(line.number) +
                              ": clause data before DIMACS header");
        for (const auto& tok : toks) {
            const int v = detail::parse_int(tok, line.number);
            if (v == 0) {
                if (current.empty())
                    throw parse_error("line " + std::to_string(line.number) + ": empty clause");
                f.clauses.push_back(current);
                current.clear();
                continue;
            }
            const int var = (v > 0 ? v : -v) - 1;
            if (var >= f.variable_count)
                throw parse_error("line " + std::to_string(line.number) + ": literal " + tok +
                                  " out of range");
            current.push_back(Literal{var, v > 0});
        }
    }
    if (!saw_header) throw parse_error("missing DIMACS header");
    if (!current.empty()) throw parse_error("unterminated final clause (missing 0)");
    if (f.clause_count() != declared_clauses)
        throw parse_error("header declares " + std::to_string(declared_clauses) +
                          " clauses but " + std::to_string(f.clause_count()) + " were given");
    validate_formula(f);
    return f;
}

void write_dimacs(std::ostream& out, const CnfFormula& f) {
    out << "p cnf " << f.variable_count << ' ' << f.clauses.size() << '\n';
    for (const auto& clause : f.clauses) {
        for (const Literal& lit : clause) out << (lit.positive ? lit.var + 1 : -(lit.var + 1)) << ' ';
        out << "0\n";
    }
}

Assignment read_assignment(std::istream& in, int variable_count) {
    for (const auto& line : detail::read_lines(in)) {
        if (detail::is_blank(line.text)) continue;
        auto toks = detail::split_ws(line.text);
        if (toks.size() != 1)
            throw parse_error("line " + std::to_string(line.number) +
                              ": expected a single 0/1 string");
        const std::string& s = toks[0];
        if (static_cast<int>(s.size()) != variable_count)
            throw parse_error("line " + std::to_string(line.number) + ": assignment length " +
                              std::to_string(s.size()) + " does not match variable count " +
                              std::to_string(variable_count));
        std::vector<unsigned char> bits;
        for (char ch : s) {
            if (ch != '0' && ch != '1')
                throw parse_error("line " + std::to_string(line.number) +
                                  ": assignment characters must be 0 or 1");
            bits.push_back(ch == '1' ? 1 : 0);
        }
        return Assignment(std::move(bits));
    }
    throw parse_error("assignment file has no content");
}

void write_assignment(std::ostream& out, const Assignment& a) {
    for (unsigned char b : a.bits) out << (b ? '1' : '0');
    out << '\n';
}

} // namespace dsr
