#pragma once

#include "teamcheck/formula.hpp"
#include "teamcheck/kripke.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace teamcheck {

struct FormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Digraph {
    std::vector<std::string> nodes;
    std::vector<std::pair<std::string, std::string>> edges;
    std::string source;
    std::string target;
};

// Clauses hold signed 1-based variable indices: +j is x_j, -j is its negation.
struct CnfInstance {
    int variable_count = 0;
    std::vector<std::vector<int>> clauses;
};

// The quantifier prefix is implied: x_1 existential, x_2 universal, ...,
// strictly alternating. variable_count must match the matrix.
struct QbfInstance {
    int variable_count = 0;
    CnfInstance matrix;
};

struct GeneratedInstance {
    KripkeModel model;
    Team team;
    Formula formula;
    std::optional<bool> expected; // oracle verdict mapped through the reduction
    bool degenerate = false;      // excluded from agreement checks
    std::string note;
};

// Edge-list text: a header line "s=<node> t=<node>", then one edge "a b" or
// one isolated node "a" per line. '#' starts a comment, blank lines are
// skipped. Nodes appear in first-mention order (source and target first).
Digraph parse_edge_list(std::string_view text);
std::string format_edge_list(const Digraph& g);

// DIMACS cnf: "c" comments, one "p cnf <vars> <clauses>" header, clauses as
// 0-terminated literal runs. Strict: literals must be in range, clauses
// nonempty, and the clause count must match the header.
CnfInstance parse_dimacs(std::string_view text);
std::string format_dimacs(const CnfInstance& f);

// QDIMACS restricted to the strictly alternating single-variable prefix:
// block i must read "e i 0" for odd i and "a i 0" for even i, covering all
// declared variables. Anything else is a FormatError.
QbfInstance parse_qdimacs(std::string_view text);
std::string format_qdimacs(const QbfInstance& f);

enum class SatMode { Sat, UnsatAccept, AlwaysAccept, AlwaysReject };

// "sat" | "unsat-accept" | "always-accept" | "always-reject"
const char* to_string(SatMode mode);
SatMode sat_mode_from_string(const std::string& text);

// Reachability instance: worlds are the graph nodes, the relation is the
// edge set plus a self-loop on every node, q labels everything but the
// target, the team is {source}, and the formula iterates box |V|-1 times
// over dep(q). The self-loops make the iterated successor image cumulative,
// so the final team is the reachable set and dep(q) fails exactly when it
// mixes the unlabeled target with labeled nodes. Expected value: the target
// is NOT reachable. A source equal to the target is flagged degenerate: the
// formula then ignores reachability (see note).
GeneratedInstance gen_reach(const Digraph& g);

// Satisfiability instance: one world per clause (the team), one world pair
// s_j / sb_j per variable labeled {p_j, q} / {p_j}, and an edge from each
// clause world to the worlds of its literals. A covering successor team
// picks a literal per clause; dep(p_1..p_m, q) holds on the pick iff it
// never takes both polarities of a variable. The formula by mode:
//   sat            dia dep(p_1..p_m, q)      expected: satisfiable
//   unsat-accept   !dia dep(p_1..p_m, q)     expected: unsatisfiable
//   always-accept  top                       expected: true
//   always-reject  bot                       expected: false
GeneratedInstance gen_sat(const CnfInstance& psi, SatMode mode);

// Names of the structural worlds of a generated QBF instance, for tests
// that build successor teams by hand (indices are variable - 1 and
// clause - 1).
struct QbfLayout {
    std::vector<std::string> pos_value, neg_value;         // x_i / nx_i
    std::vector<std::string> pos_chain_end, neg_chain_end; // depth-n chain worlds
    std::vector<std::string> clause_end;                   // depth-n clause worlds
    std::optional<Formula> psi_prime;                      // matrix formula
};

// Quantified instance: per variable x_i a delay chain d_i_1..d_i_i branching
// into a positive and a negative chain that end in value worlds x_i / nx_i,
// every root-to-value path having exactly n+1 edges; per clause C_j a chain
// c_j_1..c_j_{n+1} whose last world points at the value worlds of the
// clause's literals. p_i labels all chain and value worlds of variable i;
// q labels every positive value world and, for universally quantified
// (even) i, the positive chain worlds too. The team holds the delay and
// clause chain heads. The formula alternates dia (existential) and boxdot
// (universal) n times around
//   xor(!dep(<even p's>, q), dia dep(p_1..p_n, q))
// whose first component spots teams taking both polarities of a universal
// variable and whose second tests the picked assignment against the matrix.
// Expected value: truth of the QBF.
GeneratedInstance gen_qbf(const QbfInstance& q, QbfLayout* layout = nullptr);

// Independent ground truth, brute force at desk scale.
bool oracle_reach(const Digraph& g);                 // BFS from source to target
bool oracle_sat(const CnfInstance& f);               // <= 16 variables
bool oracle_qbf(const QbfInstance& q);               // <= 12 variables

enum class ReductionKind { Reach, Sat, Qbf };

const char* to_string(ReductionKind kind);
ReductionKind reduction_kind_from_string(const std::string& text);

struct VerifyBounds {
    std::size_t max_nodes = 8;        // reach node count
    std::size_t max_vars = 4;         // sat / qbf variable count
    std::size_t max_clauses = 4;
    std::size_t max_clause_width = 3;
};

struct VerifyOptions {
    std::size_t count = 100;  // random source instances (sat runs all four modes on each)
    VerifyBounds bounds;
    std::uint64_t seed = 0;
    bool exhaustive = false;  // sweep the whole space instead of sampling;
                              // capped at 4 nodes / 3 vars / 3 clauses (qbf 2)
    bool inject_fault = false; // harness self-test: corrupts the first verdict
};

struct VerifyInstanceRecord {
    std::string source; // serialized input instance
    std::string mode;   // sat mode, empty otherwise
    bool expected = false;
    bool got = false;
    std::uint64_t seed = 0;
};

struct VerifyReport {
    ReductionKind kind = ReductionKind::Reach;
    std::uint64_t seed = 0;
    bool exhaustive = false;
    std::size_t total = 0;
    std::size_t agreed = 0;
    std::size_t degenerate = 0;                     // excluded from the matrix
    std::array<std::array<std::size_t, 2>, 2> matrix{}; // [expected][got]
    std::vector<VerifyInstanceRecord> disagreements;

    bool all_agree() const { return agreed + degenerate == total; }
};

// Generates instances (random by default, exhaustive on request), runs the
// dispatching checker on each generated model and the matching oracle on
// each source instance, and tallies agreement. Disagreements are reported,
// not thrown.
VerifyReport verify_reduction(ReductionKind kind, const VerifyOptions& options);

std::string verify_report_to_json(const VerifyReport& report);

} // namespace teamcheck
