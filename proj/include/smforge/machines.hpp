#pragma once

#include <cstdint>
#include <deque>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "smforge/smachine.hpp"

namespace smforge {

// ---------------------------------------------------------------- noise ---

struct NoiseTerm {
    std::size_t y = 0;  // index into the rule letters: 𝒜 letters first, then b1, b2
    std::size_t a = 0;  // index into 𝒜
    int sign = 1;
    friend bool operator==(const NoiseTerm&, const NoiseTerm&) = default;
};

class NoiseScheme {
public:
    explicit NoiseScheme(std::vector<std::string> names);

    std::size_t size() const { return A_.size(); }
    std::size_t D() const { return D_; }
    std::size_t y_count() const { return A_.size() + 2; }
    bool y_is_b(std::size_t y) const { return y >= A_.size(); }

    SymbolId A(std::size_t i) const { return A_[i]; }
    SymbolId A1(std::size_t i) const { return A1_[i]; }
    SymbolId A2(std::size_t i) const { return A2_[i]; }
    SymbolId B(std::size_t j) const { return B_[j]; }
    const std::vector<SymbolId>& A() const { return A_; }
    const std::vector<SymbolId>& A1() const { return A1_; }
    const std::vector<SymbolId>& A2() const { return A2_; }
    const std::vector<SymbolId>& B() const { return B_; }

    // Name used for the rule indexed by y (the letter name itself).
    const std::string& y_name(std::size_t y) const;
    // Letter y occupies in the input sector: a_1 for y = a, b for y = b.
    Letter y_tape(std::size_t y) const;

    std::optional<std::size_t> index_A(SymbolId s) const;
    std::optional<std::size_t> index_A1(SymbolId s) const;
    std::optional<std::size_t> index_A2(SymbolId s) const;
    std::optional<std::size_t> index_B(SymbolId s) const;

    std::size_t eta(std::size_t y, std::size_t a) const { return y * A_.size() + a + 1; }
    const Word& noise(std::size_t y, std::size_t a) const { return basis_[eta(y, a) - 1]; }
    // S_𝒜 in η order.
    const std::vector<Word>& basis() const { return basis_; }
    const SubgroupBasis& folded() const { return *folded_; }

    Word phi1(const Word& w) const;  // 𝒜 -> 𝒜₁
    Word phi2(const Word& w) const;  // 𝒜 -> 𝒜₂

private:
    std::vector<std::string> names_;
    std::vector<SymbolId> A_, A1_, A2_, B_;
    std::unordered_map<SymbolId, std::size_t> iA_, iA1_, iA2_, iB_;
    std::size_t D_ = 0;
    std::vector<Word> basis_;
    std::shared_ptr<const SubgroupBasis> folded_;
};

Word noise_word(const NoiseScheme& s, std::size_t y, std::size_t a);
Word noise_product(const NoiseScheme& s, const std::vector<NoiseTerm>& terms);
std::optional<std::vector<NoiseTerm>> decode_noise(const NoiseScheme& s, const Word& u);
// Largest cancellation between v^±1 and v'^±1 over all non-inverse pairs.
std::size_t max_noise_cancellation(const NoiseScheme& s);

// δ: drops ℬ letters and reads 𝒜₁ (and 𝒜) letters as 𝒜 letters. The raw
// form keeps any cancellation that the projection creates.
std::vector<Letter> delta_letters(const NoiseScheme& s, const Word& w);
Word delta(const NoiseScheme& s, const Word& w);
bool delta_is_reduced(const NoiseScheme& s, const Word& w);

// ------------------------------------------------------------------- M1 ---

struct M1 {
    Machine machine;
    std::shared_ptr<const NoiseScheme> scheme;
    std::vector<RuleRef> theta;  // theta[y]
    RuleRef rule(std::size_t y, int sign = 1) const { return sign > 0 ? theta[y] : -theta[y]; }
    std::optional<std::pair<std::size_t, int>> decode_rule(RuleRef r) const;
};

M1 build_M1(const std::vector<std::string>& alphabet);
M1 build_M1(std::shared_ptr<const NoiseScheme> scheme);

// ε(W): the 𝒜-word freely equal to the projected tape contents.
Word epsilon_projection(const M1& m, const AdmissibleWord& W);
AdmissibleWord m1_start(const M1& m, const Word& w);

// Input-sector word of M1 held as 𝒜₁ skeleton letters separated by ℬ segments.
class SegmentWord {
public:
    SegmentWord(const NoiseScheme& s, const Word& w);

    std::size_t skeleton_size() const { return skeleton_.size(); }
    Letter skeleton(std::size_t j) const { return skeleton_[j]; }
    const std::deque<Letter>& segment(std::size_t j) const { return segments_[j]; }
    const std::deque<Letter>& tail() const { return segments_.back(); }
    std::size_t length() const;
    bool empty() const { return skeleton_.empty() && segments_.back().empty(); }
    Word to_word() const;
    Word tail_word() const;

    // Applies θ_y^sign.
    void apply(std::size_t y, int sign);

private:
    void noise(std::size_t y, int sign);
    void append(const Word& piece);

    const NoiseScheme* s_;
    std::vector<Letter> skeleton_;
    std::vector<std::deque<Letter>> segments_;
};

struct ShiftResult {
    History history;
    std::size_t time() const { return history.size(); }
};

std::optional<ShiftResult> shift_history(const M1& m, const Word& w);
// Materializes the computation from q0 w q1 to q0 q1; refuses runs whose
// stored words would exceed `letter_budget` letters in total.
std::optional<Computation> shift(const M1& m, const Word& w, std::size_t letter_budget = 50'000'000);
// Replays a history on q0 w q1 with the segment representation.
Word replay_shift(const M1& m, const Word& w, const History& h);
// ‖w‖ + ‖w‖(2D+1)^‖w‖, saturating at the largest 64-bit value.
std::uint64_t shift_time_bound(const NoiseScheme& s, std::size_t n);

// ----------------------------------------------------------- recognizer ---

// Machine with parts P0,P1,P2: every rule locks the P0P1 sector and the
// P1P2 sector is the input sector over 𝒜₂.
class Recognizer {
public:
    virtual ~Recognizer() = default;
    virtual const Machine& machine() const = 0;
    // w is a word over 𝒜.
    virtual bool member(const Word& w) const = 0;
    virtual std::optional<History> accept_run(const Word& w) const = 0;
    // Coefficients of a polynomial time bound, lowest degree first.
    virtual std::vector<std::uint64_t> time_bound() const = 0;
    virtual bool thread_safe() const { return true; }
    virtual std::string kind() const = 0;

    std::uint64_t time_bound_at(std::uint64_t n) const;
    AdmissibleWord start(const NoiseScheme& s, const Word& w) const;
    AdmissibleWord accept_configuration() const;
};

// Accepts positive 𝒜-words of odd length.
std::shared_ptr<const Recognizer> make_odd_recognizer(std::shared_ptr<const NoiseScheme> s);
// Accepts nothing.
std::shared_ptr<const Recognizer> make_reject_recognizer(std::shared_ptr<const NoiseScheme> s);
// Machine file plus an external membership decider; accepting runs are found
// by breadth-first search bounded by `node_limit` configurations.
std::shared_ptr<const Recognizer> make_file_recognizer(std::shared_ptr<const NoiseScheme> s, Machine m,
                                                       std::function<bool(const Word&)> member,
                                                       std::size_t node_limit = 200'000);
// Checks the plugin contract; returns a list of violations.
std::vector<std::string> check_recognizer(const Recognizer& r, const NoiseScheme& s);

// ------------------------------------------------------------- builders ---

struct SectorSpec {
    bool locked = true;
    std::vector<SymbolId> domain;
};

struct TransitionSpec {
    std::string name = "σ";
    std::vector<SectorSpec> sectors;  // one per sector of the composed machine
};

Machine compose(const Machine& a, const Machine& b, const TransitionSpec& sigma);
Machine reflect(const Machine& m);
Machine cyclify(const Machine& m);
// special_sector: sector of m whose coordinate-1 copy keeps its letter names
// (and is locked everywhere when lock_first holds).
Machine parallelize(const Machine& m, int L, bool lock_first, int special_sector);

std::string mirror_name(std::string_view s);
std::string coordinate_name(std::string_view s, int i);

// Configuration of a reflected machine built from an associated pair.
AdmissibleWord reflect_configuration(const Machine& reflected, const AdmissibleWord& W1, const AdmissibleWord& W2);
std::pair<AdmissibleWord, AdmissibleWord> associated_pair(const Machine& reflected, const AdmissibleWord& W);

// M₃: M1 composed with a recognizer through σ.
Machine build_M3(const M1& m1, const Recognizer& rec);

// ----------------------------------------------------------- parameters ---

enum class Profile { desk, paper };

struct Params {
    Profile profile = Profile::desk;
    std::uint64_t N = 2, C = 4, c0 = 5, L = 6, c1 = 7, delta_inv = 8, K = 9;

    // Throws std::invalid_argument when the desk chain is not strictly increasing
    // or when a paper-profile record is asked for numbers.
    void validate() const;
    void require_numeric() const;
    static Params desk();
    static Params paper();
};

// Inequalities the symbolic profile imposes on the chain values, as text.
std::vector<std::string> paper_constraints();

// --------------------------------------------------------- main machine ---

struct AcceptingRun {
    History history;
    std::size_t ell = 0;
    AdmissibleWord final;
    std::size_t time() const { return history.size(); }
};

class MainMachine {
public:
    Machine machine;
    std::shared_ptr<const NoiseScheme> scheme;
    std::shared_ptr<const Recognizer> recognizer;
    Params params;
    M1 m1;
    Machine m3;
    int special_sector = 0;
    std::vector<int> input_sectors;
    RuleRef start1 = 0, start2 = 0, accept1 = 0, accept2 = 0;
    std::vector<RuleRef> working1, working2;
    std::size_t parts_per_coordinate = 0;

    std::size_t L() const { return params.L; }
    AdmissibleWord I(const Word& w) const;
    AdmissibleWord J(const Word& w) const;
    AdmissibleWord W_ac() const;
    // 1 for Θ₁ rules, 2 for Θ₂ rules.
    int rule_class(RuleRef r) const;
    // Number of maximal runs of rules from a single class.
    std::size_t ell(const History& h) const;
    // Lifts an M₃ history into the copy with index 1 or 2.
    History lift(const History& m3_history, int copy) const;
    // Coordinate-i component of a configuration.
    AdmissibleWord component(const AdmissibleWord& W, int i) const;
    // Inverse of I/J: recovers w and the copy index when W has that shape.
    std::optional<std::pair<Word, int>> decode_start(const AdmissibleWord& W) const;
    // |W(2)|_a and ‖W(2)‖.
    std::size_t coordinate_a_length(const AdmissibleWord& W, int i) const;
    std::size_t coordinate_length(const AdmissibleWord& W, int i) const;
};

MainMachine build_main(std::shared_ptr<const NoiseScheme> scheme, std::shared_ptr<const Recognizer> rec,
                       const Params& params);

std::optional<AcceptingRun> accepting_run(const MainMachine& mm, const AdmissibleWord& W);
// Time bound c0·TM(c0 n)³ + n c0^n + c0 n + 2c0 for start configurations with
// |W(2)|_a = n, saturating at the largest 64-bit value.
std::uint64_t main_time_bound(const MainMachine& mm, std::uint64_t n);

// ------------------------------------------------------- special sector ---

using LambdaOracle = std::function<bool(const Word&)>;

struct LambdaWitness {
    SemiComputation semi;
    Word target;  // the 𝒜-word reached
};

// Semi-computations in the special input sector of the main machine.
class SpecialSector {
public:
    explicit SpecialSector(const MainMachine& mm);

    const NoiseScheme& scheme() const { return *mm_->scheme; }
    const MainMachine& main() const { return *mm_; }
    int sector() const { return mm_->special_sector; }
    RuleRef start_rule() const { return mm_->start1; }
    // Working rule θ_y#1 that acts on the sector.
    RuleRef working(std::size_t y, int sign = 1) const { return sign > 0 ? working_[y] : -working_[y]; }
    std::optional<std::pair<std::size_t, int>> decode_working(RuleRef r) const;

    SemiComputation run(const Word& w, const History& h) const;
    // First to last a-letter (𝒜 or 𝒜₁).
    Word compress(const Word& w) const;
    SemiComputation compressed_run(const Word& w, const History& h) const;

    std::optional<LambdaWitness> lambda_accept(const Word& w, const LambdaOracle& oracle) const;
    bool omega_member(const Word& w, const LambdaOracle& oracle) const;

    // Blocks between consecutive a-letters of a word over 𝒜₁⊔ℬ.
    struct Blocks {
        std::vector<Letter> letters;  // 𝒜₁ letters with signs
        std::vector<Word> gaps;       // letters.size()+1 ℬ-words
    };
    std::optional<Blocks> blocks(const Word& w) const;
    // Recovers the working history from the noise blocks of a word obtained
    // from an 𝒜₁-word; only the shape is used, the caller verifies.
    std::optional<std::vector<std::pair<std::size_t, int>>> decode_history(const Blocks& b, bool cyclic) const;

private:
    const MainMachine* mm_;
    std::vector<RuleRef> working_;
};

// Measured noise of a semi-computation applied to x1x2x3.
struct ThreeLetterNoise {
    std::size_t inner = 0;  // ‖u1‖ + ‖u2‖
    std::size_t lower = 0;  // ½D‖H‖
    std::size_t upper = 0;  // 3D‖H‖
};
ThreeLetterNoise measure_three_letter(const SpecialSector& ss, const Word& x, const Word& result, std::size_t h);

}  // namespace smforge
