#include <stdexcept>

#include "smforge/machines.hpp"

namespace smforge {

void Params::validate() const {
    if (profile == Profile::paper) return;
    const std::uint64_t chain[] = {N, C, c0, L, c1, delta_inv, K};
    const char* names[] = {"N", "C", "c0", "L", "c1", "1/delta", "K"};
    if (N < 1) throw std::invalid_argument("parameter N must be positive");
    for (std::size_t i = 1; i < 7; ++i)
        if (!(chain[i - 1] < chain[i]))
            throw std::invalid_argument(std::string("parameter chain needs ") + names[i - 1] + " < " + names[i]);
}

void Params::require_numeric() const {
    if (profile == Profile::paper)
        throw std::invalid_argument("the paper profile is symbolic and has no numeric instantiation");
}

Params Params::desk() { return Params{}; }

Params Params::paper() {
    Params p;
    p.profile = Profile::paper;
    p.N = p.C = p.c0 = p.L = p.c1 = p.delta_inv = p.K = 0;
    return p;
}

std::vector<std::string> paper_constraints() {
    return {"N << C << c0 << L << c1 << 1/delta << K",
            "C >= 2744",
            "L >= 33",
            "c0 >> D_A (noise length)",
            "c0 >= 2 D_A + 1 (shift time base)"};
}

}  // namespace smforge
