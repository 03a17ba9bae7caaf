// Command-line front end: solve / verify / gamma / rado / bounds.
//
// Exit codes: 0 exact result or valid verdict; 2 cutoff (lower bound
// only); 3 violation or invalid coloring; 4 parse or I/O error;
// 5 inconsistency (cache contradiction, reference mismatch, or an
// impossible bound combination).

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "vdw/bounds.hpp"
#include "vdw/certificate.hpp"
#include "vdw/colorings.hpp"
#include "vdw/core.hpp"
#include "vdw/rado.hpp"
#include "vdw/solver.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCutoff = 2;
constexpr int kExitViolation = 3;
constexpr int kExitParse = 4;
constexpr int kExitInconsistent = 5;

using namespace vdw;

std::string cert_file_name(Int a, Int b, int r) {
    std::ostringstream name;
    name << "cert_a" << a << "_b" << b << "_r" << r << ".cert";
    return name.str();
}

int cmd_solve(Int a, Int b, int r, Int max_n, std::uint64_t budget, int workers) {
    FamilyParams params(a, b);
    SearchConfig cfg;
    cfg.max_n = max_n;
    if (budget > 0) cfg.node_budget = budget;
    cfg.parallel_width = workers;

    ResultCache cache = ResultCache::open("");
    const auto t0 = std::chrono::steady_clock::now();
    FindResult res = find_n(params, r, cfg);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    CacheEntry entry;
    entry.a = a;
    entry.b = b;
    entry.r = r;
    entry.nodes = res.nodes;
    if (res.exact()) {
        entry.exact = true;
        entry.n = *res.value;
    } else {
        entry.exact = false;
        entry.n = res.colorable_up_to;
    }

    if (res.last_witness) {
        Certificate cert;
        cert.a = a;
        cert.b = b;
        cert.coloring = *res.last_witness;
        auto verdict = verify_coloring(params, cert.coloring);
        if (!verdict.valid()) throw std::logic_error("solver emitted an invalid witness");
        entry.cert_file = cert_file_name(a, b, r);
        save_certificate(cert, cache.dir() + "/" + entry.cert_file);
    }

    cache.record(entry);  // throws CacheInconsistency on contradiction
    cache.save();

    std::cerr << "nodes=" << res.nodes << " time=" << secs << "s";
    if (!entry.cert_file.empty())
        std::cerr << " cert=" << cache.dir() << "/" << entry.cert_file;
    std::cerr << "\n";

    if (res.exact()) {
        std::cout << "n(" << a << "," << b << ";" << r << ") = " << *res.value << "\n";
        return kExitOk;
    }
    std::cout << "n(" << a << "," << b << ";" << r << ") > " << res.colorable_up_to << "\n";
    return kExitCutoff;
}

int cmd_verify(const std::string& path) {
    Certificate cert = load_certificate(path);
    if (!cert.has_family())
        throw CertFormatError("certificate carries no family claim (a=0 b=0)");
    FamilyParams params(cert.a, cert.b);
    auto res = verify_coloring(params, cert.coloring);
    if (res.valid()) {
        std::cout << "valid\n";
        return kExitOk;
    }
    std::cout << "violation (" << res.violation->x << "," << res.violation->y << ","
              << res.violation->z << ")\n";
    return kExitViolation;
}

int cmd_gamma(int c, Int n, Int a, Int b, const std::string& out_path) {
    GammaParams gp(c);
    Coloring prefix = gamma_prefix(gp, n);
    Certificate cert;
    cert.a = a;
    cert.b = b;
    cert.coloring = prefix;
    if (!out_path.empty())
        save_certificate(cert, out_path);
    else
        std::cout << format_certificate(cert);

    if (a >= 1) {
        FamilyParams params(a, b);
        auto res = verify_coloring(params, prefix);
        if (!res.valid()) {
            std::cout << "violation (" << res.violation->x << "," << res.violation->y << ","
                      << res.violation->z << ")\n";
            return kExitViolation;
        }
        std::cout << "valid\n";
    }
    return kExitOk;
}

int cmd_rado(Int a, Int b) {
    FamilyParams params(a, b);
    LinearEquation eq = triple_equation(params);
    std::cout << "equation: (" << eq.coefficients[0] << ")x + (" << eq.coefficients[1]
              << ")y + (" << eq.coefficients[2] << ")z = 0\n";
    std::cout << "condition: " << (rado_condition(eq) ? "true" : "false") << "\n";
    return kExitOk;
}

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char ch : field) {
        if (ch == '"') out += '"';
        out += ch;
    }
    out += '"';
    return out;
}

std::string join_provenance(const std::vector<Provenance>& tags) {
    std::string out;
    for (const Provenance& tag : tags) {
        if (!out.empty()) out += "; ";
        out += tag.str();
    }
    return out;
}

std::string join_flags(const std::vector<std::string>& flags) {
    std::string out;
    for (const std::string& f : flags) {
        if (!out.empty()) out += "; ";
        out += f;
    }
    return out;
}

void print_csv(const std::vector<BoundRecord>& records) {
    std::cout << "a,b,lower,upper,lower_provenance,upper_provenance,flags\n";
    for (const BoundRecord& rec : records) {
        std::cout << rec.a << "," << rec.b << ",";
        if (rec.regular) std::cout << "inf,inf,";
        else {
            std::cout << rec.lower << ",";
            if (rec.upper) std::cout << *rec.upper;
            std::cout << ",";
        }
        std::cout << csv_escape(join_provenance(rec.lower_prov)) << ","
                  << csv_escape(join_provenance(rec.upper_prov)) << ","
                  << csv_escape(join_flags(rec.flags)) << "\n";
    }
}

void print_json(const std::vector<BoundRecord>& records) {
    nlohmann::json arr = nlohmann::json::array();
    for (const BoundRecord& rec : records) {
        nlohmann::json row;
        row["a"] = rec.a;
        row["b"] = rec.b;
        row["regular"] = rec.regular;
        if (rec.regular) {
            row["lower"] = "inf";
            row["upper"] = "inf";
        } else {
            row["lower"] = rec.lower;
            if (rec.upper) row["upper"] = *rec.upper;
            else row["upper"] = nullptr;
        }
        auto tags = [](const std::vector<Provenance>& prov) {
            nlohmann::json out = nlohmann::json::array();
            for (const Provenance& tag : prov) out.push_back(tag.str());
            return out;
        };
        row["lower_provenance"] = tags(rec.lower_prov);
        row["upper_provenance"] = tags(rec.upper_prov);
        row["flags"] = rec.flags;
        arr.push_back(row);
    }
    std::cout << arr.dump(2) << "\n";
}

// Search wrapper consulting the result cache so expensive n(a,b;r)
// computations are shared between `solve` and `bounds`.
SearchFn cached_search(ResultCache& cache, bool& dirty) {
    return [&cache, &dirty](const FamilyParams& params, int r, const SearchConfig& cfg) {
        if (const CacheEntry* hit = cache.find(params.a, params.b, r)) {
            if (hit->exact) {
                bool usable = hit->cert_file.empty();
                if (!hit->cert_file.empty()) {
                    std::ifstream probe(cache.dir() + "/" + hit->cert_file);
                    if (probe) {
                        Certificate cert = load_certificate(cache.dir() + "/" + hit->cert_file);
                        if (cert.a != params.a || cert.b != params.b ||
                            cert.coloring.n != hit->n - 1 ||
                            !verify_coloring(params, cert.coloring).valid())
                            throw CacheInconsistency("cached certificate fails verification");
                        usable = true;
                    }
                }
                if (usable) {
                    FindResult res;
                    res.value = hit->n;
                    res.colorable_up_to = hit->n - 1;
                    return res;
                }
            } else if (hit->n >= cfg.max_n) {
                FindResult res;
                res.colorable_up_to = hit->n;
                return res;
            }
        }
        FindResult res = find_n(params, r, cfg);
        CacheEntry entry;
        entry.a = params.a;
        entry.b = params.b;
        entry.r = r;
        entry.exact = res.exact();
        entry.n = res.exact() ? *res.value : res.colorable_up_to;
        entry.nodes = res.nodes;
        cache.record(entry);
        dirty = true;
        return res;
    };
}

int cmd_bounds(Int a_max, Int b_max, const std::string& axioms_path, bool search_lower,
               int search_r_max, Int search_max_n, std::uint64_t search_budget,
               const std::string& format, const std::string& reference_path) {
    AxiomSet axioms;
    if (!axioms_path.empty()) {
        try {
            axioms = AxiomSet::load_file(axioms_path);
        } catch (const std::runtime_error& e) {
            std::cerr << "warning: " << e.what() << "; continuing without axioms\n";
        }
    }

    LowerSearchPolicy policy;
    policy.enabled = search_lower;
    policy.r_max = search_r_max;
    if (search_max_n > 0) policy.r2.max_n = search_max_n;
    if (search_budget > 0) {
        policy.r2.node_budget = search_budget;
        policy.r3.node_budget = search_budget;
    }

    ResultCache cache = ResultCache::open("");
    bool cache_dirty = false;
    SearchFn search = cached_search(cache, cache_dirty);

    std::vector<BoundRecord> records = generate_table(a_max, b_max, axioms, policy, search);
    if (cache_dirty) cache.save();

    int unexpected = 0;
    if (!reference_path.empty()) {
        auto reference = load_reference_file(reference_path);
        unexpected = apply_reference(records, reference);
    }

    if (format == "json") print_json(records);
    else print_csv(records);

    if (unexpected > 0) {
        std::cerr << unexpected << " unflagged mismatch(es) against the reference table\n";
        return kExitInconsistent;
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"generalized van der Waerden triple toolkit"};
    app.require_subcommand(1);

    Int a = 1, b = 1, n = 1;
    int r = 1, c = 3, workers = 1;
    Int max_n = 100000;
    std::uint64_t budget = 0;
    std::string path, out_path, format = "csv";

    auto* solve = app.add_subcommand("solve", "compute n(a,b;r) by complete search");
    solve->add_option("--a", a, "family parameter a")->required();
    solve->add_option("--b", b, "family parameter b")->required();
    solve->add_option("--r", r, "number of colors")->required();
    solve->add_option("--max-n", max_n, "give up above this n");
    solve->add_option("--budget", budget, "node budget (0 = unlimited)");
    solve->add_option("--workers", workers, "parallel workers");

    auto* verify = app.add_subcommand("verify", "check a certificate file");
    verify->add_option("cert", path, "certificate path")->required();

    Int ga = 0, gb = 0;
    auto* gamma = app.add_subcommand("gamma", "emit the block coloring as a certificate");
    gamma->add_option("--c", c, "number of colors (>= 3)")->required();
    gamma->add_option("--n", n, "prefix length")->required();
    gamma->add_option("--a", ga, "verify against family parameter a");
    gamma->add_option("--b", gb, "verify against family parameter b");
    gamma->add_option("--out", out_path, "write certificate to file instead of stdout");

    auto* rado = app.add_subcommand("rado", "regularity necessary condition");
    rado->add_option("--a", a, "family parameter a")->required();
    rado->add_option("--b", b, "family parameter b")->required();

    Int a_max = 3, b_max = 11;
    std::string axioms_path, reference_path;
    bool search_lower = false;
    int search_r_max = 3;
    Int search_max_n = 0;
    std::uint64_t search_budget = 0;
    auto* bounds = app.add_subcommand("bounds", "regenerate the bounds table");
    bounds->add_option("--a-max", a_max, "largest a");
    bounds->add_option("--b-max", b_max, "largest b");
    bounds->add_option("--axioms", axioms_path, "axiom file (quoted facts)");
    bounds->add_flag("--search-lower", search_lower, "derive lower bounds by search");
    bounds->add_option("--search-r-max", search_r_max, "largest r to search");
    bounds->add_option("--search-max-n", search_max_n, "n cutoff for the r=2 pass");
    bounds->add_option("--search-budget", search_budget, "node budget per search");
    bounds->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    bounds->add_option("--reference", reference_path, "reference table to compare against");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        std::cerr << e.what() << "\n";
        return kExitParse;
    }

    try {
        if (solve->parsed()) return cmd_solve(a, b, r, max_n, budget, workers);
        if (verify->parsed()) return cmd_verify(path);
        if (gamma->parsed()) {
            if ((ga >= 1) != (gb >= 1))
                throw std::invalid_argument("gamma: give both --a and --b or neither");
            return cmd_gamma(c, n, ga, gb, out_path);
        }
        if (rado->parsed()) return cmd_rado(a, b);
        if (bounds->parsed())
            return cmd_bounds(a_max, b_max, axioms_path, search_lower, search_r_max,
                              search_max_n, search_budget, format, reference_path);
    } catch (const CacheInconsistency& e) {
        std::cerr << "inconsistency: " << e.what() << "\n";
        return kExitInconsistent;
    } catch (const std::logic_error& e) {
        std::cerr << "inconsistency: " << e.what() << "\n";
        return kExitInconsistent;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    }
    return kExitParse;
}
