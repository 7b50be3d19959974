#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace trisum::arith {

// Byte budget for sieve allocation; overridable through TRISUM_SIEVE_BUDGET (bytes).
std::size_t default_sieve_budget();

class D3Table {
public:
    D3Table() = default;

    // Two in-place divisor-convolution passes: d = 1*1, then d3 = d*1.
    static D3Table build(std::uint64_t n, std::size_t budget_bytes = default_sieve_budget());

    std::uint64_t size() const { return values_.size(); }
    // 1-based, as d3(n).
    std::uint32_t operator()(std::uint64_t n) const { return values_[n - 1]; }
    const std::vector<std::uint32_t>& values() const { return values_; }

    void save(const std::string& path) const;
    static D3Table load(const std::string& path);

    // Loads from the TRISUM_SIEVE_CACHE directory when a table of sufficient size is present,
    // otherwise builds and stores it there.
    static D3Table cached(std::uint64_t n);

private:
    std::vector<std::uint32_t> values_;
};

} // namespace trisum::arith
