#include "vdw/colorings.hpp"

#include <bit>
#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>

namespace vdw {

using BigInt = boost::multiprecision::cpp_int;

GammaParams::GammaParams(int c_) : c(c_) {
    if (c < 3) throw std::invalid_argument("GammaParams: need c >= 3");
}

BlockIndex gamma_block(const GammaParams& gp, Int m) {
    if (m < 1) throw std::invalid_argument("gamma_block: need m >= 1");
    const BigInt num = 2 * gp.c - 2;
    const BigInt den = gp.c;
    // Largest k with (2c-2)^k <= m * c^k; powers advance one step per k.
    BigInt num_pow = num;  // num^(k+1)
    BigInt den_pow = den;  // den^(k+1)
    Int k = 0;
    while (num_pow <= m * den_pow) {
        ++k;
        num_pow *= num;
        den_pow *= den;
    }
    return BlockIndex{k};
}

int gamma_color(const GammaParams& gp, Int m) {
    return static_cast<int>(gamma_block(gp, m).k % gp.c);
}

std::vector<Int> gamma_block_starts(const GammaParams& gp, Int n) {
    if (n < 1) throw std::invalid_argument("gamma_block_starts: need n >= 1");
    const BigInt num = 2 * gp.c - 2;
    const BigInt den = gp.c;
    std::vector<Int> starts;
    starts.push_back(1);  // p^0 = 1
    BigInt num_pow = 1;
    BigInt den_pow = 1;
    for (;;) {
        num_pow *= num;
        den_pow *= den;
        // Least integer >= p^k; p^k is never an integer for k >= 1.
        BigInt start = num_pow / den_pow + 1;
        if (start > n) break;
        starts.push_back(start.convert_to<Int>());
    }
    return starts;
}

Coloring gamma_prefix(const GammaParams& gp, Int n) {
    if (n < 1 || n > kMaxN) throw std::invalid_argument("gamma_prefix: need 1 <= n <= 2^31");
    std::vector<Int> starts = gamma_block_starts(gp, n);
    std::vector<std::uint8_t> colors(static_cast<std::size_t>(n));
    for (std::size_t k = 0; k < starts.size(); ++k) {
        Int lo = starts[k];
        Int hi = (k + 1 < starts.size()) ? starts[k + 1] - 1 : n;
        std::uint8_t color = static_cast<std::uint8_t>(k % static_cast<std::size_t>(gp.c));
        for (Int m = lo; m <= hi && m <= n; ++m) colors[static_cast<std::size_t>(m - 1)] = color;
    }
    return Coloring(n, gp.c, std::move(colors));
}

int doubling_color(Int m) {
    if (m < 1) throw std::invalid_argument("doubling_color: need m >= 1");
    int log2m = std::bit_width(static_cast<std::uint64_t>(m)) - 1;
    return log2m & 1;
}

Coloring doubling_prefix(Int n) {
    if (n < 1 || n > kMaxN) throw std::invalid_argument("doubling_prefix: need 1 <= n <= 2^31");
    std::vector<std::uint8_t> colors(static_cast<std::size_t>(n));
    for (Int m = 1; m <= n; ++m)
        colors[static_cast<std::size_t>(m - 1)] = static_cast<std::uint8_t>(doubling_color(m));
    return Coloring(n, 2, std::move(colors));
}

VerifyResult verify_gamma_against(const GammaParams& gp, const FamilyParams& params, Int n) {
    return verify_coloring(params, gamma_prefix(gp, n));
}

}  // namespace vdw
