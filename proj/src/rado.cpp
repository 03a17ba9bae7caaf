#include "vdw/rado.hpp"

#include <stdexcept>

namespace vdw {

LinearEquation triple_equation(const FamilyParams& params) {
    return LinearEquation{{2 * params.a - params.b, -2, 1}};
}

bool rado_condition(const LinearEquation& eq) {
    std::vector<Int> nonzero;
    for (Int c : eq.coefficients)
        if (c != 0) nonzero.push_back(c);
    if (nonzero.empty()) throw std::invalid_argument("rado_condition: all coefficients are zero");
    if (nonzero.size() > 30)
        throw std::invalid_argument("rado_condition: too many nonzero coefficients");

    const std::uint32_t limit = std::uint32_t{1} << nonzero.size();
    for (std::uint32_t mask = 1; mask < limit; ++mask) {
        Int sum = 0;
        for (std::size_t i = 0; i < nonzero.size(); ++i)
            if (mask & (std::uint32_t{1} << i)) sum += nonzero[i];
        if (sum == 0) return true;
    }
    return false;
}

bool regularity_necessary(const FamilyParams& params) {
    return rado_condition(triple_equation(params));
}

}  // namespace vdw
