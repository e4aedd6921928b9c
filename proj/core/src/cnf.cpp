#include "msox/cnf.hpp"

#include <fstream>
#include <functional>
#include <sstream>

#include "msox/error.hpp"

namespace msox {

void CnfInstance::check() const {
    if (num_vars < 0) throw Error("negative variable count");
    for (const auto& cl : clauses) {
        if (cl.empty()) throw Error("empty clause");
        for (int lit : cl) {
            int v = lit > 0 ? lit : -lit;
            if (lit == 0 || v > num_vars)
                throw Error("literal " + std::to_string(lit) + " out of range for " +
                            std::to_string(num_vars) + " variables");
        }
    }
}

CnfInstance parse_dimacs(const std::string& text) {
    CnfInstance cnf;
    std::istringstream in(text);
    std::string line;
    bool saw_p = false;
    int declared_clauses = -1;
    std::vector<int> cur;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::string head;
        if (!(ls >> head)) continue;
        if (head == "c") continue;
        if (head == "p") {
            std::string fmt;
            if (!(ls >> fmt >> cnf.num_vars >> declared_clauses) || fmt != "cnf")
                throw ParseError("line " + std::to_string(line_no) + ": bad problem line");
            saw_p = true;
            continue;
        }
        if (!saw_p) throw ParseError("line " + std::to_string(line_no) +
                                     ": clause before problem line");
        ls.clear();
        ls.str(line);
        int lit;
        while (ls >> lit) {
            if (lit == 0) {
                if (cur.empty())
                    throw ParseError("line " + std::to_string(line_no) + ": empty clause");
                cnf.clauses.push_back(cur);
                cur.clear();
            } else {
                cur.push_back(lit);
            }
        }
    }
    if (!saw_p) throw ParseError("missing problem line");
    if (!cur.empty()) throw ParseError("unterminated clause at end of input");
    if (declared_clauses >= 0 && declared_clauses != (int)cnf.clauses.size())
        throw ParseError("problem line declares " + std::to_string(declared_clauses) +
                         " clauses, found " + std::to_string(cnf.clauses.size()));
    cnf.check();
    return cnf;
}

std::string print_dimacs(const CnfInstance& cnf) {
    cnf.check();
    std::ostringstream out;
    out << "p cnf " << cnf.num_vars << " " << cnf.clauses.size() << "\n";
    for (const auto& cl : cnf.clauses) {
        for (int lit : cl) out << lit << " ";
        out << "0\n";
    }
    return out.str();
}

CnfInstance read_dimacs_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_dimacs(buf.str());
}

bool satisfies(const CnfInstance& cnf, uint64_t assignment) {
    for (const auto& cl : cnf.clauses) {
        bool sat = false;
        for (int lit : cl) {
            int v = lit > 0 ? lit : -lit;
            bool bit = (assignment >> (v - 1)) & 1;
            if ((lit > 0) == bit) {
                sat = true;
                break;
            }
        }
        if (!sat) return false;
    }
    return true;
}

bool brute_force_sat(const CnfInstance& cnf, int max_vars) {
    cnf.check();
    if (cnf.num_vars > max_vars)
        throw GuardExceeded("brute-force satisfiability over " + std::to_string(cnf.num_vars) +
                            " variables exceeds the bound of " + std::to_string(max_vars));
    for (uint64_t a = 0; a < (1ull << cnf.num_vars); ++a)
        if (satisfies(cnf, a)) return true;
    return false;
}

std::vector<CnfInstance> all_cnfs(int n, int max_clauses) {
    if (n < 0 || n > 6) throw GuardExceeded("clause enumeration limited to 6 variables");
    // Each variable appears positively, negatively, or not at all.
    std::vector<std::vector<int>> clauses;
    std::vector<int> pattern(n, 0);
    std::function<void(int)> gen = [&](int i) {
        if (i == n) {
            std::vector<int> cl;
            for (int j = 0; j < n; ++j) {
                if (pattern[j] == 1) cl.push_back(j + 1);
                if (pattern[j] == 2) cl.push_back(-(j + 1));
            }
            if (!cl.empty()) clauses.push_back(cl);
            return;
        }
        for (int p = 0; p < 3; ++p) {
            pattern[i] = p;
            gen(i + 1);
        }
    };
    gen(0);

    std::vector<CnfInstance> out;
    std::vector<int> pick;
    std::function<void(size_t)> choose = [&](size_t from) {
        CnfInstance inst;
        inst.num_vars = n;
        for (int idx : pick) inst.clauses.push_back(clauses[idx]);
        out.push_back(inst);
        if ((int)pick.size() == max_clauses) return;
        for (size_t j = from; j < clauses.size(); ++j) {
            pick.push_back((int)j);
            choose(j + 1);
            pick.pop_back();
        }
    };
    choose(0);
    return out;
}

}  // namespace msox
