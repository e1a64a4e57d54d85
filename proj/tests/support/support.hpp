#pragma once

// Independent reference implementations used by the unit tests and the
// acceptance binary. They deliberately avoid the library algorithms they
// are compared against and only read plain data (names, noise words) from it.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "smforge/groups.hpp"

namespace smforge::testing {

// SMFORGE_SEED, or a fixed default.
std::uint64_t test_seed();
std::mt19937_64 make_rng(std::uint64_t salt = 0);

// Free reduction with an explicit stack.
std::vector<Letter> stack_reduce(const std::vector<Letter>& raw);

std::vector<Letter> signed_letters(const std::vector<SymbolId>& gens);
// Every freely reduced word of length <= max_len, in shortlex order.
std::vector<Word> all_reduced_words(const std::vector<SymbolId>& gens, std::size_t max_len);
Word random_reduced_word(std::mt19937_64& rng, const std::vector<SymbolId>& gens, std::size_t len);
Word random_positive_word(std::mt19937_64& rng, const std::vector<SymbolId>& gens, std::size_t len);

// ------------------------------------------------------------------ shift --

// Step function of the input sector of M1 written from the rule formulas:
// θ_y multiplies each 𝒜₁ letter by its noise word on the left and appends
// y^{-1}; θ_y^{-1} appends y and then divides the noise back out.
class ShiftStepper {
public:
    explicit ShiftStepper(const NoiseScheme& s);
    // y indexes 𝒜 letters first, then b1, b2; sign is ±1.
    std::vector<Letter> step(const std::vector<Letter>& w, std::size_t y, int sign) const;
    // Same as step, writing into `out` (which must not alias w).
    void step_into(const std::vector<Letter>& w, std::size_t y, int sign, std::vector<Letter>& out) const;
    std::size_t rules() const { return tape_.size(); }
    // Noise word recomputed from its closed form.
    static Word closed_form_noise(const NoiseScheme& s, std::size_t y, std::size_t a);

private:
    std::vector<Letter> tape_;              // letter removed by θ_y
    std::vector<std::vector<Word>> noise_;  // noise_[y][a]
    std::vector<int> a1_index_;  // by symbol id, -1 outside 𝒜₁
};

struct ShiftPath {
    std::vector<std::pair<std::size_t, int>> steps;
};

// Meet-in-the-middle search over reduced computations of the input sector:
// a ball of radius `back_radius` around the empty word is built once, and
// `search` explores every reduced history of length <= `front_radius` from w.
// Every reduced computation from w to the empty word of length at most
// front_radius + back_radius is found exactly once.
class ShiftOracle {
public:
    ShiftOracle(const NoiseScheme& s, std::size_t front_radius, std::size_t back_radius);
    std::vector<ShiftPath> search(const Word& w) const;
    std::size_t radius() const { return front_ + back_; }
    std::size_t ball_size() const { return ball_nodes_; }
    const ShiftStepper& stepper() const { return stepper_; }

private:
    using Step = std::pair<std::size_t, int>;
    static std::uint64_t hash(const std::vector<Letter>& w);
    static std::uint64_t pack(const std::vector<Step>& path);
    static std::vector<Step> unpack(std::uint64_t code);
    std::vector<Letter> replay_from_empty(const std::vector<Step>& path) const;

    ShiftStepper stepper_;
    std::size_t front_, back_;
    std::size_t ball_nodes_ = 0;
    // word hash -> packed paths from the empty word; hits are confirmed by replay
    std::unordered_map<std::uint64_t, std::vector<std::uint64_t>> ball_;
};

// --------------------------------------------------------- free products --

// Word problem in the group on Y_C with relators φ(𝒮), read as the free
// product of the free group on the non-final block letters with R: the last
// letter of each block is rewritten through its block, and maximal block
// syllables are deleted while R says they are trivial.
class FreeProductOracle {
public:
    explicit FreeProductOracle(const ExpandedPresentation& e);
    bool trivial(const Word& w) const;

private:
    const ExpandedPresentation* e_;
    Letter block_code(std::size_t i, int sign) const;
    bool is_block_code(Letter l) const;
};

}  // namespace smforge::testing
