#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace smforge {

// A letter is a signed symbol: +(id+1) for the symbol, -(id+1) for its inverse.
using Letter = std::int32_t;
using SymbolId = std::uint32_t;

constexpr Letter make_letter(SymbolId id, int sign = 1) {
    const auto v = static_cast<Letter>(id) + 1;
    return sign >= 0 ? v : -v;
}
constexpr SymbolId symbol_of(Letter l) { return static_cast<SymbolId>((l > 0 ? l : -l) - 1); }
constexpr int sign_of(Letter l) { return l > 0 ? 1 : -1; }

// Process-wide, append-only name table.
SymbolId intern(std::string_view name);
std::optional<SymbolId> find_symbol(std::string_view name);
const std::string& symbol_name(SymbolId id);
Letter letter(std::string_view name, int sign = 1);

class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class Word {
public:
    Word() = default;
    Word(std::initializer_list<Letter> raw);

    static Word reduce(std::span<const Letter> raw);
    // Caller guarantees the sequence is already freely reduced.
    static Word from_reduced(std::vector<Letter> letters);

    const std::vector<Letter>& letters() const { return letters_; }
    std::size_t size() const { return letters_.size(); }
    bool empty() const { return letters_.empty(); }
    Letter operator[](std::size_t i) const { return letters_[i]; }
    Letter front() const { return letters_.front(); }
    Letter back() const { return letters_.back(); }
    auto begin() const { return letters_.begin(); }
    auto end() const { return letters_.end(); }

    Word inverse() const;
    Word subword(std::size_t pos, std::size_t len) const;
    Word operator*(const Word& rhs) const;
    Word& operator*=(const Word& rhs);
    Word power(long long n) const;

    friend bool operator==(const Word&, const Word&) = default;
    friend auto operator<=>(const Word& a, const Word& b) { return a.letters_ <=> b.letters_; }

private:
    std::vector<Letter> letters_;
};

struct WordHash {
    std::size_t operator()(const Word& w) const noexcept;
};

Word free_reduce(std::span<const Letter> raw);
// Appends `rhs` to `acc` in place, cancelling at the junction.
void append_reduced(std::vector<Letter>& acc, std::span<const Letter> rhs);

struct CyclicReduction {
    Word core;
    Word conjugator;
};
CyclicReduction cyclic_reduce(const Word& w);
bool is_cyclically_reduced(const Word& w);
// All cyclic permutations of a cyclically reduced word, starting with itself.
std::vector<Word> cyclic_permutations(const Word& w);

Word parse_word(std::string_view text);
std::string to_string(Letter l);
std::string to_string(const Word& w);

enum class SymbolKind : std::uint8_t { state, tape, theta };
enum class TapeClass : std::uint8_t { none, A, b, ordinary };

struct SymbolInfo {
    SymbolKind kind = SymbolKind::tape;
    int index = 0;  // part, sector, or rule
    TapeClass tape_class = TapeClass::none;
    int position = 0;  // theta letters only
};

struct TypedLengths {
    std::size_t total = 0, q = 0, a = 0, theta = 0, A = 0, b = 0, o = 0, untyped = 0;
};

// Side table typing interned symbols for one machine or presentation.
class Alphabet {
public:
    void add_state(SymbolId id, int part);
    void add_tape(SymbolId id, int sector, TapeClass cls);
    void add_theta(SymbolId id, int rule, int position);

    const SymbolInfo* find(SymbolId id) const;
    const SymbolInfo* find(Letter l) const { return find(symbol_of(l)); }
    bool is_state(Letter l) const;
    bool is_tape(Letter l) const;
    TypedLengths lengths(const Word& w) const;
    std::size_t size() const { return info_.size(); }
    const std::unordered_map<SymbolId, SymbolInfo>& entries() const { return info_; }

private:
    void put(SymbolId id, SymbolInfo info);
    std::unordered_map<SymbolId, SymbolInfo> info_;
};

struct Term {
    std::size_t index;
    int sign;
    friend bool operator==(const Term&, const Term&) = default;
};

struct BasisExpression {
    std::vector<Term> terms;
    std::vector<Word> basis;
    std::size_t length() const { return terms.size(); }
    Word evaluate() const;
};

Word evaluate_terms(std::span<const Term> terms, const std::vector<Word>& basis);

// Folded core graph of the subgroup generated by a list of words. Immutable
// after construction and safe to share between threads.
class SubgroupBasis {
public:
    SubgroupBasis() = default;
    explicit SubgroupBasis(std::vector<Word> basis);

    const std::vector<Word>& basis() const { return basis_; }
    std::size_t rank() const;
    bool is_free_basis() const { return rank() == basis_.size() && !has_empty_; }

    bool contains(const Word& w) const { return express(w).has_value(); }
    std::optional<std::vector<Term>> express(const Word& w) const;
    // Prefix lengths of w at which the readback walk sits on the base vertex,
    // in increasing order, stopping where the walk leaves the graph.
    std::vector<std::size_t> base_prefixes(const Word& w) const;

private:
    struct Edge {
        int from;
        int to;
        Letter label;     // positive letter
        Word gen;         // reduced word over basis indices
    };
    std::optional<Word> readback(std::span<const Letter> w) const;

    std::vector<Word> basis_;
    bool has_empty_ = false;
    bool direct_ = false;
    std::unordered_map<Letter, std::size_t> direct_index_;
    std::vector<std::unordered_map<Letter, int>> out_;  // vertex -> signed label -> edge
    std::vector<Edge> edges_;
    std::size_t vertices_ = 0;
};

std::optional<BasisExpression> express_in_basis(const Word& w, const std::vector<Word>& basis);
bool validate_basis(const std::vector<Word>& words);

}  // namespace smforge
