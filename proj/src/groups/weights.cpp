#include "smforge/groups.hpp"

namespace smforge {

WeightFunctions::WeightFunctions(const Params& p, std::vector<std::uint64_t> tm) : p_(p), tm_(std::move(tm)) {
    p_.require_numeric();
    p_.validate();
    if (tm_.empty()) tm_ = {0};
}

BigInt WeightFunctions::TM(const BigInt& n) const {
    BigInt v = 0;
    for (std::size_t i = tm_.size(); i-- > 0;) v = v * n + tm_[i];
    return v;
}

Huge WeightFunctions::chi(const Huge& n) const { return n * Huge::power(p_.c0, n); }

Huge WeightFunctions::h(const BigInt& n) const {
    const BigInt c0 = p_.c0;
    const BigInt tm = TM(c0 * n);
    return Huge(c0 * tm * tm * tm) + Huge(n) * Huge::power(p_.c0, Huge(n)) + Huge(c0 * n + p_.L);
}

Huge WeightFunctions::f(const BigInt& n) const { return Huge(BigInt(p_.c1)) * chi(h(n)); }

Huge WeightFunctions::g(const BigInt& n) const {
    const BigInt c0 = p_.c0;
    return Huge(c0 * n * n * n) + Huge(n) * f(c0 * n);
}

Huge WeightFunctions::dehn(const BigInt& n) const {
    const BigInt K = p_.K;
    const BigInt n3 = n * n * n;
    const BigInt n9 = n3 * n3 * n3;
    const BigInt n12 = n9 * n3;
    return Huge(n) * (Huge(K * n12) + g(K * n9) + f(K * n3));
}

Huge diagram_weight(const GridDiagram& d, const WeightFunctions& wf) {
    Huge w;
    std::size_t plain = 0;
    for (const auto& b : d.bands) {
        for (const auto& c : b.cells) {
            if (c.cls == RelatorClass::a_relation) w = w + wf.g(BigInt(c.boundary().size()));
            else ++plain;
        }
    }
    if (d.hub) w = w + wf.f(BigInt(d.hub_measure));
    return w + Huge(static_cast<std::uint64_t>(plain));
}

}  // namespace smforge
