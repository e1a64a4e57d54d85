#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "smforge/words.hpp"

namespace smforge {

struct Part {
    std::string name;
    std::vector<SymbolId> letters;
    SymbolId start = 0;
    SymbolId end = 0;
    // Occurrences of this part's letters appear inverted in the standard base.
    bool inverted = false;
    int coordinate = 0;
    bool t_part = false;
};

struct TapeLetter {
    SymbolId id;
    TapeClass cls = TapeClass::ordinary;
};

// Sector k lies between part k and part k+1; the last sector wraps from the
// last part back to part 0 and is only usable in cyclic machines.
struct Sector {
    std::vector<TapeLetter> letters;
    bool input = false;
};

class Hardware {
public:
    std::vector<Part> parts;
    std::vector<Sector> sectors;
    bool cyclic = false;

    // Validates disjointness and builds the typing table.
    void finalize();

    const Alphabet& alphabet() const { return alphabet_; }
    std::size_t size() const { return parts.size(); }
    std::size_t wrap_sector() const { return parts.size() - 1; }

    std::optional<int> part_of(Letter l) const;
    std::optional<int> sector_of(Letter l) const;
    int oriented_sign(Letter state) const;
    // Sector immediately right / left of an oriented state occurrence.
    int right_sector(Letter state) const;
    int left_sector(Letter state) const;
    std::optional<int> sector_between(Letter left, Letter right) const;
    std::vector<int> input_sectors() const;

    // Letter as it appears in the standard base (accounts for inversion).
    Letter base_letter(SymbolId id) const;

private:
    Alphabet alphabet_;
};

struct PartAction {
    SymbolId from = 0;
    SymbolId to = 0;
    Word u;  // lies in the sector left of the part
    Word v;  // lies in the sector right of the part
    friend bool operator==(const PartAction&, const PartAction&) = default;
};

class SectorAction {
public:
    static SectorAction locked_sector();
    static SectorAction identity(std::vector<Word> domain);
    // f(X[k]) = Z[perm[k]]; an empty perm means the identity indexing.
    static SectorAction make(std::vector<Word> X, std::vector<Word> Z, std::vector<std::size_t> perm = {});

    bool locked() const { return locked_; }
    const std::vector<Word>& X() const { return X_; }
    const std::vector<Word>& Z() const { return Z_; }
    const std::vector<std::size_t>& perm() const { return perm_; }
    const Word& image_of(std::size_t k) const { return Z_[perm_[k]]; }

    SectorAction inverted() const;
    void prepare();
    const SubgroupBasis& domain() const { return *xb_; }
    const SubgroupBasis& codomain() const { return *zb_; }

    std::optional<std::vector<Term>> express(const Word& w) const;
    std::optional<Word> try_image(const Word& w) const;

    bool same_as(const SectorAction& o) const {
        return locked_ == o.locked_ && X_ == o.X_ && Z_ == o.Z_ && perm_ == o.perm_;
    }

private:
    bool locked_ = false;
    std::vector<Word> X_, Z_;
    std::vector<std::size_t> perm_;
    std::shared_ptr<const SubgroupBasis> xb_, zb_;
    std::shared_ptr<const std::unordered_map<Letter, Word>> letter_image_;
};

struct Rule {
    std::string name;
    std::vector<PartAction> parts;
    std::vector<SectorAction> sectors;

    bool same_as(const Rule& o) const;
};

// Signed rule reference: +(index+1) for the stored positive rule, -(index+1)
// for its inverse.
using RuleRef = int;
using History = std::vector<RuleRef>;

Rule invert_rule(const Rule& r);

class Machine {
public:
    std::string name;
    Hardware hw;
    std::vector<Rule> rules;

    // Validates rules against the hardware, builds inverse rules and caches.
    void freeze();
    bool frozen() const { return frozen_; }

    const Rule& rule(RuleRef r) const;
    std::string rule_name(RuleRef r) const;
    std::optional<RuleRef> find_rule(std::string_view name) const;
    RuleRef ref(std::string_view name) const;

    std::vector<SymbolId> start_letters() const;
    std::vector<SymbolId> end_letters() const;

private:
    bool frozen_ = false;
    std::vector<Rule> inverses_;
    std::unordered_map<std::string, int> by_name_;
};

History parse_history(const Machine& m, std::string_view text);
std::string history_to_string(const Machine& m, const History& h);
History reduce_history(const History& h);
History invert_history(const History& h);

struct AdmissibleWord {
    std::vector<Letter> states;
    std::vector<Word> tapes;  // tapes[j] sits between states[j] and states[j+1]

    Word to_word() const;
    std::size_t length() const;
    friend bool operator==(const AdmissibleWord&, const AdmissibleWord&) = default;
};

class MachineError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class ApplyFailure { state_mismatch, sector_nonmember, malformed };

class ApplyError : public MachineError {
public:
    ApplyError(ApplyFailure kind, std::size_t position, const std::string& what)
        : MachineError(what), kind(kind), position(position) {}
    ApplyFailure kind;
    std::size_t position;
};

class StepError : public MachineError {
public:
    StepError(std::size_t index, const ApplyError& cause)
        : MachineError("step " + std::to_string(index) + ": " + cause.what()), index(index), cause(cause) {}
    std::size_t index;
    ApplyError cause;
};

// Splits a word at its state letters and checks the admissibility shapes.
AdmissibleWord to_admissible(const Hardware& hw, const Word& w);
AdmissibleWord parse_admissible(const Hardware& hw, std::string_view text);
std::string to_string(const AdmissibleWord& w);
std::vector<int> sectors_of(const Hardware& hw, const AdmissibleWord& w);
bool is_well_formed(const Hardware& hw, const AdmissibleWord& w);
std::vector<Letter> base_of(const AdmissibleWord& w);

// Configuration with the standard base, start/end letters and given tapes.
AdmissibleWord standard_configuration(const Hardware& hw, const std::vector<SymbolId>& states,
                                      const std::vector<Word>& tapes);

bool is_admissible(const Machine& m, const AdmissibleWord& w, RuleRef r);
AdmissibleWord apply(const Machine& m, const AdmissibleWord& w, RuleRef r);
std::optional<AdmissibleWord> try_apply(const Machine& m, const AdmissibleWord& w, RuleRef r);
std::size_t theta_length(const Machine& m, const AdmissibleWord& w, RuleRef r);

Word semi_apply(const Machine& m, const Word& w, RuleRef r, int sector);
std::size_t semi_theta_length(const Machine& m, const Word& w, RuleRef r, int sector);

struct Computation {
    std::vector<AdmissibleWord> words;
    History history;

    const AdmissibleWord& start() const { return words.front(); }
    const AdmissibleWord& end() const { return words.back(); }
    std::size_t time() const { return history.size(); }
    bool reduced() const { return reduce_history(history) == history; }
};

struct SemiComputation {
    std::vector<Word> words;
    History history;
    int sector = 0;
    bool reduced() const { return reduce_history(history) == history; }
};

Computation run(const Machine& m, const AdmissibleWord& start, const History& h);
// Replays without storing intermediate words.
AdmissibleWord run_final(const Machine& m, const AdmissibleWord& start, const History& h);
SemiComputation semi_run(const Machine& m, const Word& start, const History& h, int sector);

enum class RuleForm { locked, identity, bijection, noise, other };

struct NoisyReport {
    bool valid = true;
    std::vector<std::string> violations;
    // forms[rule][sector]
    std::vector<std::vector<RuleForm>> forms;
    // Noise words collected per sector.
    std::vector<std::vector<Word>> noise_sets;
};

NoisyReport validate_noisy(const Machine& m);

// Line-oriented machine serialization.
std::string serialize_machine(const Machine& m);
Machine parse_machine(std::string_view text);

}  // namespace smforge
