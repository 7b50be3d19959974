#include "trisum/sieve.hpp"
#include "trisum/errors.hpp"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>

namespace trisum::arith {

namespace {

constexpr char kMagic[8] = {'T', 'R', 'I', 'D', '3', 'S', 'V', 'E'};

void put_u64(std::ostream& os, std::uint64_t v) {
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
    os.write(reinterpret_cast<const char*>(b), 8);
}

std::uint64_t get_u64(std::istream& is) {
    unsigned char b[8];
    is.read(reinterpret_cast<char*>(b), 8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
    return v;
}

} // namespace

std::size_t default_sieve_budget() {
    if (const char* s = std::getenv("TRISUM_SIEVE_BUDGET")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(s, &end, 10);
        if (end != s && v > 0) return static_cast<std::size_t>(v);
    }
    return std::size_t{1} << 30;
}

D3Table D3Table::build(std::uint64_t n, std::size_t budget_bytes) {
    if (n == 0) throw DomainError("sieve_d3: N must be positive");
    if (n > budget_bytes / sizeof(std::uint32_t))
        throw ResourceError("sieve_d3: table of " + std::to_string(n) + " entries exceeds memory budget of " +
                            std::to_string(budget_bytes) + " bytes");
    D3Table t;
    try {
        t.values_.assign(n, 0);
    } catch (const std::bad_alloc&) {
        throw ResourceError("sieve_d3: allocation failed");
    }
    std::uint32_t* v = t.values_.data();
    // d(m) at index m-1
    for (std::uint64_t a = 1; a <= n; ++a)
        for (std::uint64_t m = a; m <= n; m += a) ++v[m - 1];
    // Descending a keeps v[a-1] equal to d(a) when it is read.
    for (std::uint64_t a = n / 2; a >= 1; --a) {
        const std::uint32_t da = v[a - 1];
        for (std::uint64_t m = 2 * a; m <= n; m += a) v[m - 1] += da;
    }
    return t;
}

void D3Table::save(const std::string& path) const {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw ResourceError("sieve: cannot open " + path + " for writing");
    os.write(kMagic, 8);
    put_u64(os, values_.size());
    std::vector<unsigned char> buf;
    buf.reserve(4 * 65536);
    for (std::size_t i = 0; i < values_.size(); ++i) {
        std::uint32_t x = values_[i];
        for (int k = 0; k < 4; ++k) buf.push_back(static_cast<unsigned char>(x >> (8 * k)));
        if (buf.size() >= 4 * 65536) {
            os.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
            buf.clear();
        }
    }
    os.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
    if (!os) throw ResourceError("sieve: write failed for " + path);
}

D3Table D3Table::load(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw ResourceError("sieve: cannot open " + path);
    char magic[8];
    is.read(magic, 8);
    if (!is || std::memcmp(magic, kMagic, 8) != 0) throw ResourceError("sieve: bad magic in " + path);
    std::uint64_t n = get_u64(is);
    if (n > default_sieve_budget() / 4) throw ResourceError("sieve: stored table exceeds memory budget");
    D3Table t;
    t.values_.resize(n);
    std::vector<unsigned char> buf(4 * 65536);
    for (std::uint64_t start = 0; start < n; start += 65536) {
        std::uint64_t cnt = std::min<std::uint64_t>(65536, n - start);
        is.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(4 * cnt));
        if (!is) throw ResourceError("sieve: truncated file " + path);
        for (std::uint64_t i = 0; i < cnt; ++i) {
            const unsigned char* b = &buf[4 * i];
            t.values_[start + i] = b[0] | (b[1] << 8) | (b[2] << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
        }
    }
    return t;
}

D3Table D3Table::cached(std::uint64_t n) {
    const char* dir = std::getenv("TRISUM_SIEVE_CACHE");
    if (!dir || !*dir) return build(n);
    namespace fs = std::filesystem;
    fs::path p = fs::path(dir) / ("d3_" + std::to_string(n) + ".bin");
    std::error_code ec;
    // smallest stored table covering n
    std::uint64_t best = 0;
    for (fs::directory_iterator it(dir, ec), end; !ec && it != end; it.increment(ec)) {
        const std::string name = it->path().filename().string();
        if (name.size() < 8 || name.rfind("d3_", 0) != 0 || name.substr(name.size() - 4) != ".bin") continue;
        const std::string mid = name.substr(3, name.size() - 7);
        if (mid.empty() || mid.find_first_not_of("0123456789") != std::string::npos) continue;
        const std::uint64_t m = std::stoull(mid);
        if (m >= n && (best == 0 || m < best)) best = m;
    }
    if (best != 0) {
        try {
            D3Table t = load((fs::path(dir) / ("d3_" + std::to_string(best) + ".bin")).string());
            if (t.size() >= n) return t;
        } catch (const ResourceError&) {
        }
    }
    D3Table t = build(n);
    fs::create_directories(dir, ec);
    try {
        t.save(p.string());
    } catch (const ResourceError&) {
    }
    return t;
}

} // namespace trisum::arith
