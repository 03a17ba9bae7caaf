#pragma once

#include <cstdint>
#include <optional>

#include "vdw/core.hpp"

// Complete backtracking decision procedure for "does some r-coloring of
// [1,n] avoid monochromatic (a,b)-triples?", plus the driver computing
// n(a,b;r) = least n where no such coloring exists.
//
// Search order: positions 1..n, colors tried in increasing order, so the
// first witness found is the lexicographically least valid coloring.
// Constraints are woven in incrementally: assigning color c to position m
// forbids c at z = b*x + 2*(m - a*x) for every earlier x of color c, with
// a trail for undo on backtrack.

namespace vdw {

struct SearchConfig {
    Int max_n = 100000;                      // find_n cutoff
    std::optional<std::uint64_t> node_budget;  // total decision nodes
    bool symmetry_breaking = true;
    int parallel_width = 1;  // worker hint; 1 = serial

    // Node budgets force the serial path so cutoff is deterministic.
};

enum class SearchStatus { colorable, unsatisfiable, cutoff };

struct SearchOutcome {
    SearchStatus status;
    std::optional<Coloring> witness;  // present iff colorable; canonical (lex-least)
    std::uint64_t nodes = 0;
};

SearchOutcome decide(const FamilyParams& params, int r, Int n, const SearchConfig& cfg = {});

struct FindResult {
    std::optional<Int> value;  // n(a,b;r) when proven
    Int colorable_up_to = 0;   // largest n proven colorable
    bool budget_cutoff = false;
    std::uint64_t nodes = 0;
    std::optional<Coloring> last_witness;  // for the largest colorable n

    bool exact() const { return value.has_value(); }
};

// Least n with decide(...) unsatisfiable. Implemented as a single pass
// over the tree of valid prefixes: the answer is 1 + the deepest valid
// prefix, and the first prefix reaching that depth is exactly the witness
// the restart loop would emit. Returns a lower-bound-only result when
// max_n is reached (or the node budget runs out) while still colorable.
FindResult find_n(const FamilyParams& params, int r, const SearchConfig& cfg = {});

// Reference implementation kept for testing: the naive loop, one full
// decide(...) restart per n. Equal results wherever both complete.
FindResult find_n_restart(const FamilyParams& params, int r, const SearchConfig& cfg = {});

// Independent oracle: enumerates every coloring. Requires r^n <= 2^24.
bool brute_force_decide(const FamilyParams& params, int r, Int n);

}  // namespace vdw
