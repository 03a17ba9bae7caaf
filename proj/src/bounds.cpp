#include "vdw/bounds.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace vdw {

using BigInt = boost::multiprecision::cpp_int;

namespace {

BigInt bpow(const BigInt& base, int exp) {
    BigInt out = 1;
    for (int i = 0; i < exp; ++i) out *= base;
    return out;
}

int rank(ProvKind k) {
    switch (k) {
        case ProvKind::theorem2: return 0;
        case ProvKind::theorem3: return 1;
        case ProvKind::lemma2: return 2;
        case ProvKind::rule1: return 3;
        case ProvKind::lemma1: return 4;
        case ProvKind::axiom: return 5;
        case ProvKind::search: return 6;
        case ProvKind::vdw_regular: return 7;
    }
    return 8;
}

void sort_provenance(std::vector<Provenance>& tags) {
    std::sort(tags.begin(), tags.end(), [](const Provenance& l, const Provenance& r_) {
        auto key = [](const Provenance& p) {
            return std::tuple(rank(p.kind), p.c, p.from_a, p.from_b, p.r, p.n, p.source);
        };
        return key(l) < key(r_);
    });
}

struct Candidate {
    int value;
    Provenance prov;
};

void add_candidate(std::vector<Candidate>& cands, int value, Provenance prov) {
    cands.push_back({value, std::move(prov)});
}

// Upper-bound sources available directly at (a,b): the two coloring
// criteria, the logarithmic bound, the exact b = 2a rule, and axioms.
// Embeddings are layered on top by the caller.
std::vector<Candidate> direct_upper_candidates(Int a, Int b, const AxiomSet& axioms) {
    std::vector<Candidate> cands;
    for (int c = 5; c <= kMaxColorSweep; ++c) {
        if (auto u = theorem2_upper(a, b, c)) {
            add_candidate(cands, *u, Provenance{.kind = ProvKind::theorem2, .c = c});
            break;  // c-1 grows with c; later c never improve
        }
    }
    if (a == 1) {
        for (int c = 5; c <= kMaxColorSweep; ++c) {
            if (auto u = theorem3_upper(b, c)) {
                add_candidate(cands, *u, Provenance{.kind = ProvKind::theorem3, .c = c});
                break;
            }
        }
    }
    if (auto u = lemma2_upper(a, b))
        add_candidate(cands, *u, Provenance{.kind = ProvKind::lemma2});
    if (auto u = rule1_exact(a, b))
        add_candidate(cands, *u, Provenance{.kind = ProvKind::rule1});
    for (const Axiom* ax : axioms.at(a, b)) {
        if (ax->kind == Axiom::Kind::upper || ax->kind == Axiom::Kind::exact)
            add_candidate(cands, ax->value,
                          Provenance{.kind = ProvKind::axiom, .source = ax->source});
    }
    return cands;
}

void keep_minimum(const std::vector<Candidate>& cands, std::optional<int>& value,
                  std::vector<Provenance>& prov) {
    for (const Candidate& cand : cands) {
        if (!value || cand.value < *value) {
            value = cand.value;
            prov.clear();
            prov.push_back(cand.prov);
        } else if (cand.value == *value &&
                   std::find(prov.begin(), prov.end(), cand.prov) == prov.end()) {
            prov.push_back(cand.prov);
        }
    }
    sort_provenance(prov);
}

void keep_maximum(const std::vector<Candidate>& cands, int& value,
                  std::vector<Provenance>& prov) {
    for (const Candidate& cand : cands) {
        if (cand.value > value) {
            value = cand.value;
            prov.clear();
            prov.push_back(cand.prov);
        } else if (cand.value == value &&
                   std::find(prov.begin(), prov.end(), cand.prov) == prov.end()) {
            prov.push_back(cand.prov);
        }
    }
    sort_provenance(prov);
}

SearchFn default_search() {
    return [](const FamilyParams& params, int r, const SearchConfig& cfg) {
        return find_n(params, r, cfg);
    };
}

// Record with everything derivable without embeddings or searches.
BoundRecord direct_record(Int a, Int b, const AxiomSet& axioms) {
    BoundRecord rec;
    rec.a = a;
    rec.b = b;
    for (const Axiom* ax : axioms.at(a, b)) {
        if (ax->kind == Axiom::Kind::regular) {
            rec.regular = true;
            rec.lower_prov = {Provenance{.kind = ProvKind::vdw_regular, .source = ax->source}};
            rec.upper_prov = rec.lower_prov;
            return rec;
        }
    }
    keep_minimum(direct_upper_candidates(a, b, axioms), rec.upper, rec.upper_prov);
    return rec;
}

// Lower bounds: r = 1 always holds (the single coloring of [1,b+2] hits
// the triple (1,a+1,b+2)); exact axioms and the b = 2a rule contribute
// directly; larger r must be earned by a finite n(a,b;r) search.
void run_lower_side(BoundRecord& rec, const AxiomSet& axioms, const LowerSearchPolicy& policy,
                    const SearchFn& search_fn) {
    if (rec.regular) return;
    const FamilyParams params(rec.a, rec.b);
    const SearchFn& search = search_fn ? search_fn : default_search();

    std::vector<Candidate> cands;
    {
        SearchConfig base;
        base.max_n = rec.b + 2;
        FindResult r1 = search(params, 1, base);
        if (!r1.exact()) throw std::logic_error("bounds: n(a,b;1) must equal b+2");
        add_candidate(cands, 1,
                      Provenance{.kind = ProvKind::search, .r = 1, .n = *r1.value});
    }
    if (auto e = rule1_exact(rec.a, rec.b))
        add_candidate(cands, *e, Provenance{.kind = ProvKind::rule1});
    for (const Axiom* ax : axioms.at(rec.a, rec.b)) {
        if (ax->kind == Axiom::Kind::exact)
            add_candidate(cands, ax->value,
                          Provenance{.kind = ProvKind::axiom, .source = ax->source});
    }
    int known = 1;
    for (const Candidate& cand : cands) known = std::max(known, cand.value);

    if (policy.enabled) {
        for (int r = 2; r <= policy.r_max; ++r) {
            if (rec.upper && r > *rec.upper) break;  // n(a,b;r) is infinite
            if (r <= known) continue;
            FindResult res = search(params, r, r == 2 ? policy.r2 : policy.r3);
            if (res.exact()) {
                add_candidate(cands, r,
                              Provenance{.kind = ProvKind::search, .r = r, .n = *res.value});
                known = r;
            } else {
                std::ostringstream flag;
                flag << "search-cutoff(r=" << r << ",n>" << res.colorable_up_to << ")";
                rec.flags.push_back(flag.str());
                break;
            }
        }
    }
    keep_maximum(cands, rec.lower, rec.lower_prov);

    if (rec.upper && rec.lower > *rec.upper)
        throw std::logic_error("bounds: lower exceeds upper; false axiom or solver bug");
}

}  // namespace

std::string Provenance::str() const {
    std::ostringstream out;
    switch (kind) {
        case ProvKind::theorem2: out << "theorem2(c=" << c << ")"; break;
        case ProvKind::theorem3: out << "theorem3(c=" << c << ")"; break;
        case ProvKind::lemma2: out << "lemma2"; break;
        case ProvKind::rule1: out << "rule1"; break;
        case ProvKind::lemma1: out << "lemma1(from (" << from_a << "," << from_b << "))"; break;
        case ProvKind::axiom: out << "axiom(" << source << ")"; break;
        case ProvKind::search: out << "search(r=" << r << ",n=" << n << ")"; break;
        case ProvKind::vdw_regular: out << "vdW-regular"; break;
    }
    return out.str();
}

std::optional<int> theorem2_upper(Int a, Int b, int c) {
    if (a < 2 || c < 5 || b < a) return std::nullopt;
    const Int i = b - a;
    const BigInt C = c;
    const BigInt N = 2 * c - 2;
    const BigInt Nc = bpow(N, c);
    if (BigInt(a) * (c - 1) * bpow(C, c) > Nc) return std::nullopt;
    if (BigInt(i) * bpow(C, 2 * c - 1) > Nc * (bpow(N, c - 1) - 2 * bpow(C, c - 1)))
        return std::nullopt;
    return c - 1;
}

std::optional<int> theorem3_upper(Int b, int c) {
    if (b < 2 || c < 5) return std::nullopt;
    const BigInt C = c;
    const BigInt N = 2 * c - 2;
    if (BigInt(b) * N * bpow(C, c - 1) >= 2 * bpow(C, c) + bpow(N, c)) return std::nullopt;
    return c - 1;
}

std::optional<int> lemma2_upper(Int a, Int b) {
    if (a < 1 || b < 2 || b < a) return std::nullopt;
    // b >= (2*sqrt(2)-1)a - 2*sqrt(2) + 2, squared: both sides nonnegative.
    const BigInt lhs = BigInt(a + b - 2) * (a + b - 2);
    const BigInt rhs = 8 * BigInt(a - 1) * (a - 1);
    if (lhs < rhs) return std::nullopt;
    const Int cdiv = (b + a - 1) / a;  // ceil(b/a)
    const BigInt csq = BigInt(cdiv) * cdiv;
    int k = 0;
    while ((BigInt(1) << k) < csq) ++k;
    return k;
}

std::optional<int> rule1_exact(Int a, Int b) {
    if (b == 2 * a) return 1;
    return std::nullopt;
}

void lemma1_closure(std::vector<BoundRecord>& records, Int a_max, Int b_max) {
    std::map<std::pair<Int, Int>, std::size_t> index;
    for (std::size_t i = 0; i < records.size(); ++i)
        index[{records[i].a, records[i].b}] = i;
    Int a_cap = a_max;
    Int b_cap = b_max;
    const bool create = a_max > 0 && b_max > 0;
    if (!create) {
        a_cap = b_cap = 0;
        for (const BoundRecord& rec : records) {
            a_cap = std::max(a_cap, rec.a);
            b_cap = std::max(b_cap, rec.b);
        }
    }

    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t si = 0; si < records.size(); ++si) {
            const Int sa = records[si].a;
            const Int sb = records[si].b;
            const std::optional<int> su = records[si].upper;
            if (!su) continue;
            for (Int i = 1; sa + i <= a_cap && sb + 2 * i <= b_cap; ++i) {
                auto it = index.find({sa + i, sb + 2 * i});
                std::size_t ti;
                if (it == index.end()) {
                    if (!create) continue;
                    BoundRecord blank;
                    blank.a = sa + i;
                    blank.b = sb + 2 * i;
                    ti = records.size();
                    records.push_back(std::move(blank));
                    index[{sa + i, sb + 2 * i}] = ti;
                } else {
                    ti = it->second;
                }
                BoundRecord& target = records[ti];
                if (target.regular) continue;
                Provenance tag{.kind = ProvKind::lemma1, .from_a = sa, .from_b = sb};
                if (!target.upper || *su < *target.upper) {
                    target.upper = *su;
                    target.upper_prov = {tag};
                    changed = true;
                } else if (*su == *target.upper &&
                           std::find(target.upper_prov.begin(), target.upper_prov.end(), tag) ==
                               target.upper_prov.end()) {
                    target.upper_prov.push_back(tag);
                    sort_provenance(target.upper_prov);
                }
            }
        }
    }
}

BoundRecord best_bounds(Int a, Int b, const AxiomSet& axioms, const LowerSearchPolicy& policy,
                        const SearchFn& search) {
    FamilyParams params(a, b);  // validates 1 <= a <= b
    BoundRecord rec = direct_record(a, b, axioms);
    if (rec.regular) return rec;

    // Embedding: every ancestor (a-j, b-2j) upper-bounds (a,b).
    std::vector<Candidate> cands;
    for (Int j = 1; a - j >= 1 && b - 2 * j >= a - j; ++j) {
        BoundRecord anc = direct_record(a - j, b - 2 * j, axioms);
        if (anc.upper)
            add_candidate(cands, *anc.upper,
                          Provenance{.kind = ProvKind::lemma1, .from_a = a - j, .from_b = b - 2 * j});
    }
    keep_minimum(cands, rec.upper, rec.upper_prov);

    run_lower_side(rec, axioms, policy, search);
    return rec;
}

std::vector<BoundRecord> generate_table(Int a_max, Int b_max, const AxiomSet& axioms,
                                        const LowerSearchPolicy& policy, const SearchFn& search) {
    std::vector<BoundRecord> records;
    for (Int a = 1; a <= a_max; ++a)
        for (Int b = a; b <= b_max; ++b) records.push_back(direct_record(a, b, axioms));
    lemma1_closure(records);
    for (BoundRecord& rec : records) run_lower_side(rec, axioms, policy, search);
    return records;
}

AxiomSet AxiomSet::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open axiom file: " + path);
    return parse(in);
}

AxiomSet AxiomSet::parse(std::istream& in) {
    AxiomSet set;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string body = line;
        std::string citation;
        if (auto pos = line.find('#'); pos != std::string::npos) {
            body = line.substr(0, pos);
            citation = line.substr(pos + 1);
        }
        std::istringstream fields(body);
        Int a, b;
        std::string kind_str, value_str;
        if (!(fields >> a)) continue;  // blank or comment-only line
        if (!(fields >> b >> kind_str >> value_str))
            throw std::runtime_error("axiom file line " + std::to_string(lineno) +
                                     ": expected `a b kind value`");
        Axiom ax;
        ax.a = a;
        ax.b = b;
        if (kind_str == "upper") ax.kind = Axiom::Kind::upper;
        else if (kind_str == "exact") ax.kind = Axiom::Kind::exact;
        else if (kind_str == "regular") ax.kind = Axiom::Kind::regular;
        else
            throw std::runtime_error("axiom file line " + std::to_string(lineno) +
                                     ": unknown kind `" + kind_str + "`");
        if (ax.kind != Axiom::Kind::regular) {
            try {
                ax.value = std::stoi(value_str);
            } catch (const std::exception&) {
                throw std::runtime_error("axiom file line " + std::to_string(lineno) +
                                         ": bad value `" + value_str + "`");
            }
            if (ax.value < 1)
                throw std::runtime_error("axiom file line " + std::to_string(lineno) +
                                         ": value must be >= 1");
        }
        // Short source key: `KEY: full citation` keeps provenance compact.
        std::string key = citation;
        if (auto colon = key.find(':'); colon != std::string::npos) key = key.substr(0, colon);
        std::istringstream trim(key);
        trim >> key;
        ax.source = key.empty() ? "axioms" : key;
        set.items.push_back(std::move(ax));
    }
    return set;
}

std::vector<const Axiom*> AxiomSet::at(Int a, Int b) const {
    std::vector<const Axiom*> out;
    for (const Axiom& ax : items)
        if (ax.a == a && ax.b == b) out.push_back(&ax);
    return out;
}

std::vector<ReferenceEntry> load_reference_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open reference table: " + path);
    return parse_reference(in);
}

std::vector<ReferenceEntry> parse_reference(std::istream& in) {
    std::vector<ReferenceEntry> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> fields;
        std::string cur;
        for (char ch : line) {
            if (ch == ',') {
                fields.push_back(cur);
                cur.clear();
            } else {
                cur += ch;
            }
        }
        fields.push_back(cur);
        if (fields.size() < 4) continue;
        ReferenceEntry e;
        try {
            e.a = std::stoll(fields[0]);
            e.b = std::stoll(fields[1]);
        } catch (const std::exception&) {
            continue;  // header row
        }
        if (fields[2] == "inf" || fields[3] == "inf") {
            e.regular = true;
        } else {
            e.lower = std::stoi(fields[2]);
            e.upper = std::stoi(fields[3]);
        }
        if (fields.size() >= 5 && fields[4].find("known-discrepancy") != std::string::npos)
            e.known_discrepancy = true;
        out.push_back(e);
    }
    return out;
}

int apply_reference(std::vector<BoundRecord>& records,
                    const std::vector<ReferenceEntry>& reference) {
    int unexpected = 0;
    for (const ReferenceEntry& ref : reference) {
        BoundRecord* rec = nullptr;
        for (BoundRecord& r_ : records)
            if (r_.a == ref.a && r_.b == ref.b) {
                rec = &r_;
                break;
            }
        if (!rec) {
            ++unexpected;
            continue;
        }
        bool mismatch = false;
        if (ref.regular != rec->regular) mismatch = true;
        if (!ref.regular && !rec->regular) {
            if (ref.lower && *ref.lower != rec->lower) {
                std::ostringstream f;
                f << "ref-mismatch-lower(expected=" << *ref.lower << ")";
                rec->flags.push_back(f.str());
                mismatch = true;
            }
            if (ref.upper && (!rec->upper || *ref.upper != *rec->upper)) {
                std::ostringstream f;
                f << "ref-mismatch-upper(expected=" << *ref.upper << ")";
                rec->flags.push_back(f.str());
                mismatch = true;
            }
        } else if (mismatch) {
            rec->flags.push_back("ref-mismatch-regularity");
        }
        if (mismatch) {
            if (ref.known_discrepancy)
                rec->flags.push_back("known-discrepancy");
            else
                ++unexpected;
        }
    }
    return unexpected;
}

}  // namespace vdw
