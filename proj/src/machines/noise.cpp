#include <set>
#include <stdexcept>

#include "smforge/machines.hpp"

namespace smforge {

NoiseScheme::NoiseScheme(std::vector<std::string> names) : names_(std::move(names)) {
    if (names_.empty()) throw std::invalid_argument("the alphabet 𝒜 must be nonempty");
    std::set<std::string> seen;
    for (const auto& n : names_) {
        if (n.empty() || n == "b1" || n == "b2" || !seen.insert(n).second)
            throw std::invalid_argument("bad or duplicate 𝒜 letter name '" + n + "'");
        A_.push_back(intern(n));
        A1_.push_back(intern(n + "_1"));
        A2_.push_back(intern(n + "_2"));
    }
    B_ = {intern("b1"), intern("b2")};
    for (std::size_t i = 0; i < A_.size(); ++i) {
        iA_[A_[i]] = i;
        iA1_[A1_[i]] = i;
        iA2_[A2_[i]] = i;
    }
    iB_[B_[0]] = 0;
    iB_[B_[1]] = 1;
    const std::size_t n = A_.size();
    D_ = 4 * n * (n + 2);
    basis_.reserve(y_count() * n);
    const Letter b1 = make_letter(B_[0]), b2 = make_letter(B_[1]);
    for (std::size_t y = 0; y < y_count(); ++y) {
        for (std::size_t a = 0; a < n; ++a) {
            const std::size_t k = eta(y, a);
            std::vector<Letter> raw;
            raw.reserve(D_);
            raw.insert(raw.end(), k, b1);
            for (std::size_t r = 0; r < (D_ - 2 * k) / 2; ++r) {
                raw.push_back(b2);
                raw.push_back(b1);
            }
            raw.insert(raw.end(), k, b2);
            basis_.push_back(Word::from_reduced(std::move(raw)));
        }
    }
    folded_ = std::make_shared<const SubgroupBasis>(basis_);
}

const std::string& NoiseScheme::y_name(std::size_t y) const {
    return y < A_.size() ? names_[y] : symbol_name(B_[y - A_.size()]);
}

Letter NoiseScheme::y_tape(std::size_t y) const {
    return y < A_.size() ? make_letter(A1_[y]) : make_letter(B_[y - A_.size()]);
}

namespace {
std::optional<std::size_t> lookup(const std::unordered_map<SymbolId, std::size_t>& m, SymbolId s) {
    auto it = m.find(s);
    if (it == m.end()) return std::nullopt;
    return it->second;
}

Word map_letters(const Word& w, const std::unordered_map<SymbolId, std::size_t>& from,
                 const std::vector<SymbolId>& to, const char* what) {
    std::vector<Letter> out;
    out.reserve(w.size());
    for (Letter l : w) {
        auto i = lookup(from, symbol_of(l));
        if (!i) throw std::invalid_argument(std::string("letter ") + to_string(l) + " is not in " + what);
        out.push_back(make_letter(to[*i], sign_of(l)));
    }
    return Word::from_reduced(std::move(out));
}
}  // namespace

std::optional<std::size_t> NoiseScheme::index_A(SymbolId s) const { return lookup(iA_, s); }
std::optional<std::size_t> NoiseScheme::index_A1(SymbolId s) const { return lookup(iA1_, s); }
std::optional<std::size_t> NoiseScheme::index_A2(SymbolId s) const { return lookup(iA2_, s); }
std::optional<std::size_t> NoiseScheme::index_B(SymbolId s) const { return lookup(iB_, s); }

Word NoiseScheme::phi1(const Word& w) const { return map_letters(w, iA_, A1_, "𝒜"); }
Word NoiseScheme::phi2(const Word& w) const { return map_letters(w, iA_, A2_, "𝒜"); }

Word noise_word(const NoiseScheme& s, std::size_t y, std::size_t a) { return s.noise(y, a); }

Word noise_product(const NoiseScheme& s, const std::vector<NoiseTerm>& terms) {
    std::vector<Letter> acc;
    for (const auto& t : terms) {
        const Word& v = s.noise(t.y, t.a);
        if (t.sign > 0) append_reduced(acc, v.letters());
        else append_reduced(acc, v.inverse().letters());
    }
    return Word::from_reduced(std::move(acc));
}

std::optional<std::vector<NoiseTerm>> decode_noise(const NoiseScheme& s, const Word& u) {
    auto terms = s.folded().express(u);
    if (!terms) return std::nullopt;
    std::vector<NoiseTerm> out;
    out.reserve(terms->size());
    const std::size_t n = s.size();
    for (const auto& t : *terms) out.push_back({t.index / n, t.index % n, t.sign});
    return out;
}

std::size_t max_noise_cancellation(const NoiseScheme& s) {
    std::size_t best = 0;
    const auto& B = s.basis();
    for (std::size_t i = 0; i < B.size(); ++i) {
        for (std::size_t j = 0; j < B.size(); ++j) {
            for (int si : {1, -1}) {
                for (int sj : {1, -1}) {
                    if (i == j && si != sj) continue;
                    const Word x = si > 0 ? B[i] : B[i].inverse();
                    const Word y = sj > 0 ? B[j] : B[j].inverse();
                    std::size_t c = 0;
                    while (c < x.size() && c < y.size() && x[x.size() - 1 - c] == -y[c]) ++c;
                    best = std::max(best, c);
                }
            }
        }
    }
    return best;
}

std::vector<Letter> delta_letters(const NoiseScheme& s, const Word& w) {
    std::vector<Letter> out;
    for (Letter l : w) {
        const SymbolId id = symbol_of(l);
        if (s.index_B(id)) continue;
        if (auto i = s.index_A1(id)) out.push_back(make_letter(s.A(*i), sign_of(l)));
        else if (s.index_A(id)) out.push_back(l);
        else throw std::invalid_argument("letter " + to_string(l) + " is not in 𝒜⊔𝒜₁⊔ℬ");
    }
    return out;
}

Word delta(const NoiseScheme& s, const Word& w) { return Word::reduce(delta_letters(s, w)); }

bool delta_is_reduced(const NoiseScheme& s, const Word& w) {
    const auto d = delta_letters(s, w);
    for (std::size_t i = 1; i < d.size(); ++i)
        if (d[i] == -d[i - 1]) return false;
    return true;
}

}  // namespace smforge
