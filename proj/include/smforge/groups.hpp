#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "smforge/embedding.hpp"
#include "smforge/machines.hpp"

namespace smforge {

// --------------------------------------------------------- presentation ---

enum class RelatorClass { theta_q, theta_A, theta_b, theta_a, hub, disk, a_relation };

std::string class_tag(RelatorClass c);
std::optional<RelatorClass> parse_class_tag(std::string_view tag);

struct Relator {
    Word word;
    RelatorClass cls = RelatorClass::theta_q;
    int coordinate = 0;
    RuleRef rule = 0;   // positive rule for θ-relators
    int position = -1;  // part for (θ,q), sector for (θ,a)
};

// Class of the (θ,a)-relator for basis element x of a tape sector.
RelatorClass tape_relator_class(const Hardware& hw, const Word& x);

enum class Level { M, G };

struct Presentation {
    std::string machine;
    std::vector<Relator> relators;
    std::size_t count(RelatorClass c) const;
};

// Number of θ-letters per rule: one per part, plus one closing letter for
// machines that are not cyclic.
std::size_t theta_positions(const Machine& m);
SymbolId theta_letter(const Machine& m, RuleRef positive_rule, std::size_t position);

// Level G adds the hub, by default the end configuration with empty tapes.
Presentation emit_presentation(const Machine& m, Level level, const std::optional<AdmissibleWord>& hub = std::nullopt);
std::string format_presentation(const Presentation& p);
// Reads the output of format_presentation (class tags and words only).
Presentation parse_presentation(std::string_view text);

// W = 1 when W is accepted with at most one phase; W_ac gives the hub.
std::optional<Relator> disk_relator(const MainMachine& mm, const AdmissibleWord& W);

// ----------------------------------------------------------------- huge ---

using BigInt = boost::multiprecision::cpp_int;

// Nonnegative integer Σ coef·b^exp with exponents that are themselves Huge;
// comparison is exact.
class Huge {
public:
    struct Term;

    Huge() = default;
    Huge(BigInt v);  // NOLINT: integers convert implicitly
    Huge(std::uint64_t v) : Huge(BigInt(v)) {}
    Huge(int v) : Huge(BigInt(v)) {}

    // b^e
    static Huge power(std::uint64_t base, const Huge& e);

    bool is_zero() const { return terms_.empty(); }
    std::uint64_t base() const { return base_; }
    const std::vector<Term>& terms() const { return terms_; }

    // Exact value when it has at most max_bits bits.
    std::optional<BigInt> to_integer(std::size_t max_bits = 1 << 16) const;
    std::string to_string() const;

    friend Huge operator+(const Huge& a, const Huge& b);
    friend Huge operator*(const Huge& a, const Huge& b);
    friend int compare(const Huge& a, const Huge& b);
    friend bool operator==(const Huge& a, const Huge& b) { return compare(a, b) == 0; }
    friend bool operator<(const Huge& a, const Huge& b) { return compare(a, b) < 0; }
    friend bool operator<=(const Huge& a, const Huge& b) { return compare(a, b) <= 0; }
    friend bool operator>(const Huge& a, const Huge& b) { return compare(a, b) > 0; }
    friend bool operator>=(const Huge& a, const Huge& b) { return compare(a, b) >= 0; }

private:
    void normalize();
    std::uint64_t base_ = 0;  // 0 until a power term appears
    std::vector<Term> terms_;  // exponents strictly decreasing
};

struct Huge::Term {
    Huge exp;
    BigInt coef;
};

// ------------------------------------------------------------- weights ---

class WeightFunctions {
public:
    // tm: coefficients of the recognizer time bound, lowest degree first.
    WeightFunctions(const Params& p, std::vector<std::uint64_t> tm);

    BigInt TM(const BigInt& n) const;
    Huge chi(const Huge& n) const;
    Huge h(const BigInt& n) const;
    Huge f(const BigInt& n) const;
    Huge g(const BigInt& n) const;
    Huge dehn(const BigInt& n) const;

    const Params& params() const { return p_; }

private:
    Params p_;
    std::vector<std::uint64_t> tm_;
};

// -------------------------------------------------------------- diagram ---

struct Cell {
    std::size_t id = 0;
    RelatorClass cls = RelatorClass::theta_a;
    Word bottom, top;
    Letter left = 0, right = 0;
    int coordinate = 0;
    bool t_cell = false;

    Word boundary() const;
};

// One row. Its full bottom is bottom_left·(cell bottoms)·bottom_right and its
// full top is top_left·(cell tops)·top_right, both freely reduced.
struct Band {
    RuleRef rule = 0;
    std::string rule_name;
    Letter left = 0, right = 0;
    std::vector<Cell> cells;
    Word bottom_left, bottom_right, top_left, top_right;
    Word bottom, top;
};

enum class DiagramKind { trapezium, semi_trapezium, compressed, disk };
std::string kind_name(DiagramKind k);

struct GridDiagram {
    DiagramKind kind = DiagramKind::trapezium;
    std::string machine;
    std::vector<Band> bands;
    Word bottom, top, left, right;
    Word contour;
    // Disk diagrams: the sides are identified and a hub caps the top.
    bool glued = false;
    std::optional<Word> hub;
    std::size_t hub_measure = 0;  // ‖W(2)‖ of the hub configuration

    std::size_t cell_count() const;
    std::size_t area() const { return cell_count() + (hub ? 1 : 0); }
};

GridDiagram build_trapezium(const Machine& m, const Computation& c);
// Streams the computation from `start` along `h` without storing it.
GridDiagram build_trapezium(const Machine& m, const AdmissibleWord& start, const History& h);
GridDiagram build_semitrapezium(const Machine& m, const SemiComputation& s);
GridDiagram build_compressed(const SpecialSector& ss, const Word& w, const History& h);
std::optional<GridDiagram> build_disk_diagram(const MainMachine& mm, const AdmissibleWord& W);

struct VerifyReport {
    bool ok = true;
    std::vector<std::string> problems;
    explicit operator bool() const { return ok; }
};

VerifyReport verify_diagram(const GridDiagram& d, const Presentation& p);

struct Signature {
    std::size_t disks = 0, t_cells = 0, a_cells = 0, A_cells = 0;
    friend bool operator==(const Signature&, const Signature&) = default;
};
Signature diagram_signature(const GridDiagram& d);
Huge diagram_weight(const GridDiagram& d, const WeightFunctions& wf);

std::string diagram_to_json(const GridDiagram& d);
GridDiagram diagram_from_json(std::string_view text);
std::string diagram_to_dot(const GridDiagram& d);
std::string diagram_to_text(const GridDiagram& d);

// ---------------------------------------------------------------- omega ---

// Main machine over the pipeline alphabet; Ω only needs its special sector,
// so the recognizer is the one that accepts nothing.
MainMachine build_embedding_machine(const EmbeddingPipeline& p, const Params& params);
bool omega_member(const SpecialSector& ss, const Word& w, const LambdaOracle& oracle);
// Members of Ω up to the given length over the given letters (with inverses).
std::vector<Word> enumerate_omega(const SpecialSector& ss, const LambdaOracle& oracle, const std::vector<SymbolId>& letters,
                                  std::size_t max_length);

}  // namespace smforge
