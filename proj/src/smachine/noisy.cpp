#include <algorithm>
#include <map>
#include <set>

#include "smforge/smachine.hpp"

namespace smforge {
namespace {

bool single_letters(const std::vector<Word>& ws) {
    return std::all_of(ws.begin(), ws.end(), [](const Word& w) { return w.size() == 1; });
}

}  // namespace

NoisyReport validate_noisy(const Machine& m) {
    NoisyReport rep;
    const std::size_t n = m.hw.sectors.size();
    std::vector<std::set<Word>> noise(n);
    // The fixed letter bijection each sector uses in bijection-form rules.
    std::vector<std::map<Letter, Letter>> fixed(n);
    auto fail = [&](std::string msg) {
        rep.valid = false;
        rep.violations.push_back(std::move(msg));
    };
    for (std::size_t k = 0; k < m.rules.size(); ++k) {
        const Rule& r = m.rules[k];
        auto& forms = rep.forms.emplace_back();
        for (std::size_t s = 0; s < r.sectors.size(); ++s) {
            const auto& sa = r.sectors[s];
            if (sa.locked()) {
                forms.push_back(RuleForm::locked);
                continue;
            }
            const auto& X = sa.X();
            bool ident = true;
            for (std::size_t i = 0; i < X.size(); ++i) ident &= sa.image_of(i) == X[i];
            if (ident && single_letters(X)) {
                forms.push_back(RuleForm::identity);
                continue;
            }
            if (!single_letters(X)) {
                forms.push_back(RuleForm::other);
                fail(r.name + ": sector " + std::to_string(s + 1) + " domain is not a set of tape letters");
                continue;
            }
            bool bij = true;
            for (std::size_t i = 0; i < X.size(); ++i) bij &= sa.image_of(i).size() == 1 && sa.image_of(i)[0] > 0;
            if (bij && !ident) {
                forms.push_back(RuleForm::bijection);
                for (std::size_t i = 0; i < X.size(); ++i) {
                    auto [it, ins] = fixed[s].emplace(X[i][0], sa.image_of(i)[0]);
                    if (!ins && it->second != sa.image_of(i)[0])
                        fail(r.name + ": sector " + std::to_string(s + 1) + " uses a second letter bijection");
                }
                continue;
            }
            bool is_noise = true;
            std::vector<Word> local;
            for (std::size_t i = 0; i < X.size() && is_noise; ++i) {
                const Word& img = sa.image_of(i);
                if (img == X[i]) continue;
                if (img.size() < 2 || img.back() != X[i][0]) {
                    is_noise = false;
                    break;
                }
                local.push_back(img.subword(0, img.size() - 1));
            }
            if (!is_noise) {
                forms.push_back(RuleForm::other);
                fail(r.name + ": sector " + std::to_string(s + 1) + " action has no admissible form");
                continue;
            }
            forms.push_back(RuleForm::noise);
            for (auto& v : local) noise[s].insert(std::move(v));
        }
    }
    rep.noise_sets.resize(n);
    for (std::size_t s = 0; s < n; ++s) {
        rep.noise_sets[s].assign(noise[s].begin(), noise[s].end());
        if (!rep.noise_sets[s].empty() && !validate_basis(rep.noise_sets[s]))
            fail("sector " + std::to_string(s + 1) + ": noise words do not form a free basis");
    }
    return rep;
}

}  // namespace smforge
