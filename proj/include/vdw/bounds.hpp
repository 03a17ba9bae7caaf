#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "vdw/core.hpp"
#include "vdw/solver.hpp"

// Bounds on the degree of regularity dor(a,b): the largest r such that
// every r-coloring of the positive integers contains a monochromatic
// (a,b)-triple.  Upper bounds come from the gamma_c coloring (two
// theorem-shaped criteria), a ceil(2*log2(ceil(b/a))) bound, the exact
// dor(a,2a) = 1 rule, embedding (an upper bound at (a,b) propagates to
// every (a+i, b+2i)), and externally quoted axioms.  Lower bounds come
// from finite n(a,b;r) searches.  Applicability tests are evaluated with
// exact big integers only.

namespace vdw {

enum class ProvKind { theorem2, theorem3, lemma2, rule1, lemma1, axiom, search, vdw_regular };

struct Provenance {
    ProvKind kind;
    int c = 0;                 // theorem2/theorem3
    Int from_a = 0, from_b = 0;  // lemma1
    int r = 0;                 // search
    Int n = 0;                 // search
    std::string source;        // axiom

    std::string str() const;
    bool operator==(const Provenance&) const = default;
};

struct BoundRecord {
    Int a = 0, b = 0;
    int lower = 1;
    std::optional<int> upper;  // empty: none derived (or regular)
    bool regular = false;      // dor = infinity, only by axiom
    std::vector<Provenance> lower_prov;
    std::vector<Provenance> upper_prov;
    std::vector<std::string> flags;
};

struct Axiom {
    enum class Kind { upper, exact, regular };
    Int a = 0, b = 0;
    Kind kind = Kind::upper;
    int value = 0;  // unused for `regular`
    std::string source;
};

struct AxiomSet {
    std::vector<Axiom> items;

    // Line format: `a b kind value # citation`, kind in {upper, exact,
    // regular}; value is `-` for regular rows. `#` lines are comments.
    static AxiomSet load_file(const std::string& path);
    static AxiomSet parse(std::istream& in);

    std::vector<const Axiom*> at(Int a, Int b) const;
};

// c-1 when a >= 2, c >= 5, 0 <= i = b-a, a*(c-1)*c^c <= (2c-2)^c and
// i*c^(2c-1) <= (2c-2)^c * ((2c-2)^(c-1) - 2*c^(c-1)).
std::optional<int> theorem2_upper(Int a, Int b, int c);

// c-1 when b >= 2, c >= 5 and b*(2c-2)*c^(c-1) < 2*c^c + (2c-2)^c.
std::optional<int> theorem3_upper(Int b, int c);

// ceil(2*log2(ceil(b/a))) when (a+b-2)^2 >= 8*(a-1)^2 and b >= 2.
std::optional<int> lemma2_upper(Int a, Int b);

// Exact dor = 1 iff b == 2a.
std::optional<int> rule1_exact(Int a, Int b);

// Propagate finite upper bounds along (a,b) -> (a+i, b+2i) to fixpoint.
// With a_max/b_max > 0, missing targets inside that range are created;
// otherwise only records already present receive bounds.
void lemma1_closure(std::vector<BoundRecord>& records, Int a_max = 0, Int b_max = 0);

// Theorem-shaped upper bounds are swept over this range of c.
inline constexpr int kMaxColorSweep = 64;

using SearchFn = std::function<FindResult(const FamilyParams&, int, const SearchConfig&)>;

struct LowerSearchPolicy {
    bool enabled = false;
    int r_max = 3;
    SearchConfig r2{.max_n = 2000};
    SearchConfig r3{.max_n = 120, .node_budget = 2'000'000'000};
};

BoundRecord best_bounds(Int a, Int b, const AxiomSet& axioms, const LowerSearchPolicy& policy,
                        const SearchFn& search = {});

// Records for 1 <= a <= a_max, a <= b <= b_max, in (a,b) order.
std::vector<BoundRecord> generate_table(Int a_max, Int b_max, const AxiomSet& axioms,
                                        const LowerSearchPolicy& policy,
                                        const SearchFn& search = {});

struct ReferenceEntry {
    Int a = 0, b = 0;
    std::optional<int> lower, upper;  // empty = infinity
    bool regular = false;
    bool known_discrepancy = false;
};

// CSV `a,b,lower,upper[,flags]`; `inf` marks regular entries.
std::vector<ReferenceEntry> load_reference_file(const std::string& path);
std::vector<ReferenceEntry> parse_reference(std::istream& in);

// Flags every record differing from the reference. Returns the number of
// mismatches at entries NOT marked known-discrepancy.
int apply_reference(std::vector<BoundRecord>& records,
                    const std::vector<ReferenceEntry>& reference);

}  // namespace vdw
