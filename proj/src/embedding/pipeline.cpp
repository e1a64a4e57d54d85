#include "smforge/embedding.hpp"

#include <mutex>
#include <stdexcept>

namespace smforge {

struct ExpandedPresentation::Memo {
    std::mutex mu;
    std::unordered_map<Word, bool, WordHash> table;
};

ExpandedPresentation::ExpandedPresentation(std::shared_ptr<const StandardTrick> trick, std::size_t C)
    : trick_(std::move(trick)), C_(C), memo_(std::make_shared<Memo>()) {
    if (C_ == 0) throw std::invalid_argument("C must be positive");
    const auto& Y = trick_->Y();
    for (std::size_t i = 0; i < Y.size(); ++i) {
        std::vector<Letter> block;
        for (std::size_t j = 0; j < C_; ++j) {
            const SymbolId s = intern(symbol_name(Y[i]) + "." + std::to_string(j + 1));
            if (!where_.emplace(s, std::make_pair(i, j)).second || trick_->index_Y(s))
                throw std::invalid_argument("block letter name collision: " + symbol_name(s));
            YC_.push_back(s);
            block.push_back(make_letter(s));
        }
        A_.push_back(Word::from_reduced(std::move(block)));
    }
}

std::optional<std::pair<std::size_t, std::size_t>> ExpandedPresentation::locate(SymbolId s) const {
    auto it = where_.find(s);
    if (it == where_.end()) return std::nullopt;
    return it->second;
}

Word ExpandedPresentation::phi(const Word& y_word) const {
    std::vector<Letter> out;
    out.reserve(y_word.size() * C_);
    for (Letter l : y_word) {
        auto i = trick_->index_Y(symbol_of(l));
        if (!i) throw std::invalid_argument("not a Y letter: " + to_string(l));
        if (l > 0) {
            for (std::size_t j = 0; j < C_; ++j) out.push_back(make_letter(block_letter(*i, j)));
        } else {
            for (std::size_t j = C_; j-- > 0;) out.push_back(make_letter(block_letter(*i, j), -1));
        }
    }
    // Distinct blocks never cancel against each other, and a block never
    // meets its own inverse in a reduced word.
    return Word::from_reduced(std::move(out));
}

namespace {

struct BlockParse {
    std::vector<std::size_t> prefixes{0};
    std::vector<Letter> y;
};

BlockParse parse(const ExpandedPresentation& e, std::span<const Letter> w) {
    BlockParse r;
    const std::size_t C = e.C();
    std::size_t pos = 0;
    while (pos < w.size()) {
        const Letter l = w[pos];
        auto loc = e.locate(symbol_of(l));
        if (!loc || pos + C > w.size()) break;
        const std::size_t i = loc->first;
        bool ok = true;
        for (std::size_t k = 0; k < C && ok; ++k) {
            const Letter want = l > 0 ? make_letter(e.block_letter(i, k)) : make_letter(e.block_letter(i, C - 1 - k), -1);
            ok = w[pos + k] == want;
        }
        if (!ok) break;
        pos += C;
        r.prefixes.push_back(pos);
        r.y.push_back(make_letter(e.Y()[i], sign_of(l)));
    }
    return r;
}

}  // namespace

std::optional<Word> ExpandedPresentation::parse_blocks(std::span<const Letter> w) const {
    auto p = parse(*this, w);
    if (p.prefixes.back() != w.size()) return std::nullopt;
    return Word::reduce(p.y);
}

std::vector<std::size_t> ExpandedPresentation::block_prefixes(std::span<const Letter> w) const {
    return parse(*this, w).prefixes;
}

bool ExpandedPresentation::in_SC(const Word& w) const {
    auto y = parse_blocks(w.letters());
    return y && trick_->in_S(*y);
}

bool ExpandedPresentation::block_word_trivial(std::span<const Letter> w) const {
    auto p = parse(*this, w);
    if (p.prefixes.back() != w.size()) throw std::invalid_argument("not a block word");
    return trick_->oracle().trivial(trick_->xi(p.y));
}

bool ExpandedPresentation::wp(const Word& w) const {
    for (Letter l : w)
        if (!where_.count(symbol_of(l))) throw std::invalid_argument("not a Y_C letter: " + to_string(l));

    const Word core = cyclic_reduce(w).core;
    if (core.empty()) return true;
    {
        std::lock_guard lock(memo_->mu);
        if (auto it = memo_->table.find(core); it != memo_->table.end()) return it->second;
    }
    bool result = false;
    for (const Word& p : cyclic_permutations(core)) {
        auto parsed = parse(*this, p.letters());
        std::size_t len = 0;
        for (std::size_t k = parsed.prefixes.size(); k-- > 1;) {
            std::span<const Letter> ys(parsed.y.data(), k);
            if (trick_->oracle().trivial(trick_->xi(ys))) {
                len = parsed.prefixes[k];
                break;
            }
        }
        if (len == 0) continue;
        result = wp(p.subword(len, p.size() - len));
        break;
    }
    std::lock_guard lock(memo_->mu);
    memo_->table.emplace(core, result);
    return result;
}

EmbeddingPipeline::EmbeddingPipeline(RelatorOracle oracle, std::size_t C)
    : trick_(std::make_shared<StandardTrick>(std::move(oracle))),
      expanded_(std::make_shared<ExpandedPresentation>(trick_, C)) {}

std::vector<std::string> EmbeddingPipeline::alphabet() const {
    std::vector<std::string> names;
    for (SymbolId s : expanded_->YC()) names.push_back(symbol_name(s));
    return names;
}

bool EmbeddingPipeline::lambda(const Word& w) const {
    if (w.empty() || !is_cyclically_reduced(w)) return false;
    for (Letter l : w)
        if (!expanded_->locate(symbol_of(l))) return false;
    return expanded_->wp(zeta_inverse(w));
}

std::function<bool(const Word&)> EmbeddingPipeline::lambda_function() const {
    return [self = *this](const Word& w) { return self.lambda(w); };
}

Word EmbeddingPipeline::psi(const Word& x_word) const {
    for (Letter l : x_word) {
        auto i = trick_->index_Y(symbol_of(l));
        if (!i || *i >= trick_->X().size()) throw std::invalid_argument("not a generator: " + to_string(l));
    }
    return zeta(expanded_->phi(x_word));
}

std::vector<std::pair<SymbolId, Word>> EmbeddingPipeline::generator_images() const {
    std::vector<std::pair<SymbolId, Word>> r;
    for (SymbolId x : trick_->X()) r.emplace_back(x, psi(Word{make_letter(x)}));
    return r;
}

}  // namespace smforge
