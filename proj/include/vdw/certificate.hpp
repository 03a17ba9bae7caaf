#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <tuple>

#include "vdw/core.hpp"

// Certificate files persist explicit colorings: a valid coloring of [1,n]
// witnesses n(a,b;r) > n. Format (bit-exact):
//   line 1:  vdw-triple-cert v1
//   line 2:  a=<a> b=<b> r=<r> n=<n>
//   line 3+: whitespace-separated colors for 1..n, 20 per line
// `#` comment lines are allowed anywhere; ASCII, newline-terminated.
// a=0 b=0 marks a coloring that carries no family claim.

namespace vdw {

struct Certificate {
    Int a = 0;
    Int b = 0;
    Coloring coloring;

    bool has_family() const { return a >= 1; }
};

class CertFormatError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

std::string format_certificate(const Certificate& cert);
Certificate parse_certificate(std::istream& in);

void save_certificate(const Certificate& cert, const std::string& path);
Certificate load_certificate(const std::string& path);

// Result cache: one human-readable `key=value ...` record per line in
// <dir>/results.txt, keyed by (a,b,r). Certificates live alongside.
// Writes are atomic (temp file + rename).

struct CacheEntry {
    Int a = 0, b = 0;
    int r = 0;
    bool exact = false;   // else lower-bound-only
    Int n = 0;            // exact: n(a,b;r); else: colorable through n
    std::string cert_file;  // witness for [1, n-1] (exact) or [1, n]
    std::uint64_t nodes = 0;
    std::string timestamp;
    std::string solver_version;
};

class CacheError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class CacheInconsistency : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class ResultCache {
  public:
    // Env var VDW_CACHE_DIR overrides `dir` when set and dir is empty.
    static ResultCache open(std::string dir);

    const std::string& dir() const { return dir_; }
    std::string results_path() const;

    const CacheEntry* find(Int a, Int b, int r) const;

    // Merges a fresh result; throws CacheInconsistency when it contradicts
    // a stored one (different exact n, or overlapping exact/lower-bound).
    void record(const CacheEntry& entry);

    void save() const;  // write-temp-then-rename

    const std::map<std::tuple<Int, Int, int>, CacheEntry>& entries() const { return entries_; }

  private:
    std::string dir_;
    std::map<std::tuple<Int, Int, int>, CacheEntry> entries_;
};

std::string default_cache_dir();

inline constexpr const char* kSolverVersion = "vdw-0.1.0";

}  // namespace vdw
