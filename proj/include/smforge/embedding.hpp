#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "smforge/words.hpp"

namespace smforge {

// Word-problem decider for a group on generators X. Answers are memoized.
class RelatorOracle {
public:
    RelatorOracle(std::vector<SymbolId> generators, std::function<bool(const Word&)> trivial,
                  std::string description);

    const std::vector<SymbolId>& generators() const { return gens_; }
    const std::string& description() const { return description_; }
    bool trivial(const Word& w) const;
    // Evaluations that missed the memo table.
    std::size_t evaluations() const;

private:
    struct Memo;
    std::vector<SymbolId> gens_;
    std::function<bool(const Word&)> fn_;
    std::string description_;
    std::shared_ptr<Memo> memo_;
};

// Free abelian group on X (modulus 0) or elementary abelian (modulus m).
RelatorOracle exponent_sum_oracle(std::vector<SymbolId> generators, int modulus);
// Runs `command '<word>'` and reads 1 (trivial) or 0 from its standard output.
RelatorOracle command_oracle(std::vector<SymbolId> generators, std::string command);
// "Z", "Z2", or anything else as an external command.
RelatorOracle make_oracle(const std::vector<std::string>& generator_names, const std::string& binding);

// Y = X ⊔ X̄ with ξ(x) = x, ξ(x̄) = x⁻¹; the relator language is every
// nonempty positive Y-word whose ξ-image is trivial.
class StandardTrick {
public:
    explicit StandardTrick(RelatorOracle oracle);

    const RelatorOracle& oracle() const { return oracle_; }
    const std::vector<SymbolId>& X() const { return oracle_.generators(); }
    const std::vector<SymbolId>& Y() const { return Y_; }
    SymbolId bar(SymbolId x) const;
    Word xi(std::span<const Letter> y_word) const;
    bool in_S(const Word& w) const;
    std::optional<std::size_t> index_Y(SymbolId s) const;

private:
    RelatorOracle oracle_;
    std::vector<SymbolId> Y_;
    std::unordered_map<SymbolId, std::size_t> iY_;
};

// Each Y letter y_i becomes a block A_i = y_i.1 … y_i.C of fresh letters.
class ExpandedPresentation {
public:
    ExpandedPresentation(std::shared_ptr<const StandardTrick> trick, std::size_t C);

    std::size_t C() const { return C_; }
    const StandardTrick& trick() const { return *trick_; }
    const std::vector<SymbolId>& Y() const { return trick_->Y(); }
    const std::vector<SymbolId>& YC() const { return YC_; }
    SymbolId block_letter(std::size_t i, std::size_t j) const { return YC_[i * C_ + j]; }
    const Word& A(std::size_t i) const { return A_[i]; }
    std::optional<std::pair<std::size_t, std::size_t>> locate(SymbolId s) const;

    Word phi(const Word& y_word) const;
    // Reads w as a product of whole blocks A_i^±1.
    std::optional<Word> parse_blocks(std::span<const Letter> w) const;
    // Lengths of the block-aligned prefixes of w, increasing, ending where
    // the block parse stops.
    std::vector<std::size_t> block_prefixes(std::span<const Letter> w) const;
    bool in_SC(const Word& w) const;
    bool block_word_trivial(std::span<const Letter> w) const;

    // Triviality in the group on Y_C with relators φ(𝒮), by repeated
    // deletion of trivial block subwords from cyclic permutations.
    bool wp(const Word& w) const;

private:
    std::shared_ptr<const StandardTrick> trick_;
    std::size_t C_;
    std::vector<SymbolId> YC_;
    std::vector<Word> A_;
    std::unordered_map<SymbolId, std::pair<std::size_t, std::size_t>> where_;
    struct Memo;
    std::shared_ptr<Memo> memo_;
};

class EmbeddingPipeline {
public:
    EmbeddingPipeline(RelatorOracle oracle, std::size_t C);

    const ExpandedPresentation& expanded() const { return *expanded_; }
    const StandardTrick& trick() const { return *trick_; }
    // Names of the 𝒜 letters; ζ identifies Y_C and 𝒜 by name.
    std::vector<std::string> alphabet() const;

    Word zeta(const Word& yc_word) const { return yc_word; }
    Word zeta_inverse(const Word& a_word) const { return a_word; }

    bool lambda(const Word& w) const;
    std::function<bool(const Word&)> lambda_function() const;

    Word psi(const Word& x_word) const;
    std::vector<std::pair<SymbolId, Word>> generator_images() const;

private:
    std::shared_ptr<const StandardTrick> trick_;
    std::shared_ptr<const ExpandedPresentation> expanded_;
};

}  // namespace smforge
