#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace msox {

// Clauses hold DIMACS-style signed literals: +i / -i for variable i, 1-based.
struct CnfInstance {
    int num_vars = 0;
    std::vector<std::vector<int>> clauses;

    void check() const;
};

CnfInstance parse_dimacs(const std::string& text);
std::string print_dimacs(const CnfInstance& cnf);
CnfInstance read_dimacs_file(const std::string& path);

// assignment bit i-1 gives the value of variable i.
bool satisfies(const CnfInstance& cnf, uint64_t assignment);
bool brute_force_sat(const CnfInstance& cnf, int max_vars = 20);

// Every CNF over exactly n variables with at most max_clauses distinct
// nonempty clauses (including the empty clause list), in a fixed order.
std::vector<CnfInstance> all_cnfs(int n, int max_clauses);

}  // namespace msox
