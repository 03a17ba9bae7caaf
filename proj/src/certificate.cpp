#include "vdw/certificate.hpp"

#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace vdw {

namespace fs = std::filesystem;

namespace {

constexpr const char* kMagic = "vdw-triple-cert v1";
constexpr int kColorsPerLine = 20;

void atomic_write(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw CacheError("cannot write " + tmp);
        out << content;
        if (!out.flush()) throw CacheError("write failed for " + tmp);
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) throw CacheError("rename failed for " + path + ": " + ec.message());
}

std::string iso_timestamp() {
    std::time_t now = std::time(nullptr);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    return buf;
}

}  // namespace

std::string format_certificate(const Certificate& cert) {
    std::ostringstream out;
    out << kMagic << "\n";
    out << "a=" << cert.a << " b=" << cert.b << " r=" << cert.coloring.r
        << " n=" << cert.coloring.n << "\n";
    for (Int m = 1; m <= cert.coloring.n; ++m) {
        out << static_cast<int>(cert.coloring.color_at(m));
        out << ((m % kColorsPerLine == 0 || m == cert.coloring.n) ? '\n' : ' ');
    }
    return out.str();
}

Certificate parse_certificate(std::istream& in) {
    std::string line;
    auto next_line = [&](std::string& out) {
        while (std::getline(in, line)) {
            if (!line.empty() && line[0] == '#') continue;
            out = line;
            return true;
        }
        return false;
    };

    std::string magic;
    if (!next_line(magic)) throw CertFormatError("empty certificate");
    if (magic != kMagic) throw CertFormatError("bad magic line: " + magic);

    std::string header;
    if (!next_line(header)) throw CertFormatError("missing header line");
    Int a = -1, b = -1, n = -1;
    long r = -1;
    {
        std::istringstream hs(header);
        std::string field;
        while (hs >> field) {
            auto eq = field.find('=');
            if (eq == std::string::npos) throw CertFormatError("bad header field: " + field);
            std::string key = field.substr(0, eq);
            long long value;
            try {
                value = std::stoll(field.substr(eq + 1));
            } catch (const std::exception&) {
                throw CertFormatError("bad header value: " + field);
            }
            if (key == "a") a = value;
            else if (key == "b") b = value;
            else if (key == "r") r = value;
            else if (key == "n") n = value;
            else throw CertFormatError("unknown header key: " + key);
        }
    }
    if (a < 0 || b < 0 || r < 1 || n < 1) throw CertFormatError("incomplete header: " + header);
    if (a >= 1 && b < a) throw CertFormatError("header violates a <= b");
    if (r > kMaxColors) throw CertFormatError("r too large");
    if (n > kMaxN) throw CertFormatError("n too large");

    std::vector<std::uint8_t> colors;
    colors.reserve(static_cast<std::size_t>(n));
    std::string body;
    while (static_cast<Int>(colors.size()) < n && next_line(body)) {
        std::istringstream bs(body);
        long v;
        while (bs >> v) {
            if (v < 0 || v >= r) throw CertFormatError("color out of range: " + std::to_string(v));
            colors.push_back(static_cast<std::uint8_t>(v));
        }
        if (!bs.eof()) throw CertFormatError("non-numeric color data: " + body);
    }
    if (static_cast<Int>(colors.size()) < n) throw CertFormatError("truncated certificate");
    if (static_cast<Int>(colors.size()) > n) throw CertFormatError("too many colors");
    while (next_line(body)) {
        std::istringstream bs(body);
        std::string token;
        if (bs >> token) throw CertFormatError("trailing data after colors: " + body);
    }

    Certificate cert;
    cert.a = a;
    cert.b = b;
    cert.coloring = Coloring(n, static_cast<int>(r), std::move(colors));
    return cert;
}

void save_certificate(const Certificate& cert, const std::string& path) {
    atomic_write(path, format_certificate(cert));
}

Certificate load_certificate(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CertFormatError("cannot open certificate: " + path);
    return parse_certificate(in);
}

std::string default_cache_dir() {
    if (const char* env = std::getenv("VDW_CACHE_DIR"); env && *env) return env;
    return "vdw_cache";
}

ResultCache ResultCache::open(std::string dir) {
    ResultCache cache;
    cache.dir_ = dir.empty() ? default_cache_dir() : std::move(dir);
    fs::create_directories(cache.dir_);

    std::ifstream in(cache.results_path());
    if (!in) return cache;  // fresh cache
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string field;
        CacheEntry entry;
        std::string status;
        while (ls >> field) {
            auto eq = field.find('=');
            if (eq == std::string::npos)
                throw CacheError("cache line " + std::to_string(lineno) + ": bad field " + field);
            std::string key = field.substr(0, eq);
            std::string value = field.substr(eq + 1);
            try {
                if (key == "a") entry.a = std::stoll(value);
                else if (key == "b") entry.b = std::stoll(value);
                else if (key == "r") entry.r = std::stoi(value);
                else if (key == "status") status = value;
                else if (key == "n") entry.n = std::stoll(value);
                else if (key == "cert") entry.cert_file = value;
                else if (key == "nodes") entry.nodes = std::stoull(value);
                else if (key == "timestamp") entry.timestamp = value;
                else if (key == "solver") entry.solver_version = value;
            } catch (const std::exception&) {
                throw CacheError("cache line " + std::to_string(lineno) + ": bad value " + field);
            }
        }
        if (entry.a < 1 || entry.b < entry.a || entry.r < 1 || entry.n < 1 ||
            (status != "exact" && status != "lower-bound"))
            throw CacheError("cache line " + std::to_string(lineno) + ": incomplete record");
        entry.exact = (status == "exact");
        cache.entries_[{entry.a, entry.b, entry.r}] = entry;
    }
    return cache;
}

std::string ResultCache::results_path() const { return dir_ + "/results.txt"; }

const CacheEntry* ResultCache::find(Int a, Int b, int r) const {
    auto it = entries_.find({a, b, r});
    return it == entries_.end() ? nullptr : &it->second;
}

void ResultCache::record(const CacheEntry& fresh) {
    CacheEntry entry = fresh;
    if (entry.timestamp.empty()) entry.timestamp = iso_timestamp();
    if (entry.solver_version.empty()) entry.solver_version = kSolverVersion;

    auto key = std::tuple(entry.a, entry.b, entry.r);
    auto it = entries_.find(key);
    if (it != entries_.end()) {
        const CacheEntry& old = it->second;
        if (old.exact && entry.exact && old.n != entry.n)
            throw CacheInconsistency("cached n(a,b;r) differs from fresh computation");
        if (old.exact && !entry.exact && entry.n >= old.n)
            throw CacheInconsistency("fresh colorable bound contradicts cached exact value");
        if (!old.exact && entry.exact && entry.n <= old.n)
            throw CacheInconsistency("fresh exact value contradicts cached colorable bound");
        if (old.exact) return;                       // nothing to improve
        if (!entry.exact && entry.n <= old.n) return;  // keep the stronger bound
    }
    entries_[key] = std::move(entry);
}

void ResultCache::save() const {
    std::ostringstream out;
    out << "# n(a,b;r) results, one record per line\n";
    for (const auto& [key, e] : entries_) {
        out << "a=" << e.a << " b=" << e.b << " r=" << e.r
            << " status=" << (e.exact ? "exact" : "lower-bound") << " n=" << e.n;
        if (!e.cert_file.empty()) out << " cert=" << e.cert_file;
        out << " nodes=" << e.nodes << " timestamp=" << e.timestamp
            << " solver=" << e.solver_version << "\n";
    }
    atomic_write(results_path(), out.str());
}

}  // namespace vdw
