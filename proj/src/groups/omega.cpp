#include "smforge/groups.hpp"

namespace smforge {

MainMachine build_embedding_machine(const EmbeddingPipeline& p, const Params& params) {
    auto scheme = std::make_shared<const NoiseScheme>(p.alphabet());
    return build_main(scheme, make_reject_recognizer(scheme), params);
}

bool omega_member(const SpecialSector& ss, const Word& w, const LambdaOracle& oracle) {
    return ss.omega_member(cyclic_reduce(w).core, oracle);
}

std::vector<Word> enumerate_omega(const SpecialSector& ss, const LambdaOracle& oracle, const std::vector<SymbolId>& letters,
                                  std::size_t max_length) {
    std::vector<Letter> alpha;
    for (SymbolId s : letters) {
        alpha.push_back(make_letter(s));
        alpha.push_back(make_letter(s, -1));
    }
    std::vector<Word> out;
    std::vector<Letter> cur;
    auto rec = [&](auto&& self) -> void {
        if (!cur.empty()) {
            const Word w = Word::from_reduced(cur);
            if (is_cyclically_reduced(w) && ss.omega_member(w, oracle)) out.push_back(w);
        }
        if (cur.size() == max_length) return;
        for (Letter l : alpha) {
            if (!cur.empty() && cur.back() == -l) continue;
            cur.push_back(l);
            self(self);
            cur.pop_back();
        }
    };
    rec(rec);
    return out;
}

}  // namespace smforge
