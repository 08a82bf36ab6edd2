#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dsr {

struct Literal {
    int var = 0; // zero-based variable index
    bool positive = true;

    friend bool operator==(const Literal&, const Literal&) = default;
};

struct CnfFormula {
    int variable_count = 0;
    std::vector<std::vector<Literal>> clauses;

    int clause_count() const { return static_cast<int>(clauses.size()); }
};

struct Assignment {
    std::vector<unsigned char> bits; // one 0/1 entry per variable

    Assignment() = default;
    explicit Assignment(std::vector<unsigned char> b) : bits(std::move(b)) {}

    int size() const { return static_cast<int>(bits.size()); }
    bool value(int var) const { return bits[var] != 0; }

    friend bool operator==(const Assignment&, const Assignment&) = default;
};

// Rejects out-of-range variables, empty clauses, repeated variables within a
// clause (covers tautological x / not-x pairs), and formulas without clauses.
void validate_formula(const CnfFormula& f);

bool literal_satisfied(const Literal& lit, const Assignment& a);
bool clause_satisfied(const std::vector<Literal>& clause, const Assignment& a);
bool satisfies(const CnfFormula& f, const Assignment& a);

// DIMACS CNF reader/writer ("c" comments, "p cnf <vars> <clauses>" header,
// zero-terminated clause lines).
CnfFormula read_dimacs(std::istream& in);
void write_dimacs(std::ostream& out, const CnfFormula& f);

// An assignment file carries one string of '0'/'1' characters, one per
// variable, on its first non-blank line.
Assignment read_assignment(std::istream& in, int variable_count);
void write_assignment(std::ostream& out, const Assignment& a);

} // namespace dsr
