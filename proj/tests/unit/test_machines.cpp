#include <gtest/gtest.h>

#include "support.hpp"

using namespace smforge;
using namespace smforge::testing;

namespace {

std::shared_ptr<const NoiseScheme> scheme1() {
    static auto s = std::make_shared<const NoiseScheme>(std::vector<std::string>{"a"});
    return s;
}

const M1& m1() {
    static M1 m = build_M1(scheme1());
    return m;
}

const MainMachine& main_machine() {
    static MainMachine mm = build_main(scheme1(), make_odd_recognizer(scheme1()), Params::desk());
    return mm;
}

}  // namespace

TEST(Noise, SizesFollowTheAlphabet) {
    for (std::size_t n = 1; n <= 3; ++n) {
        std::vector<std::string> names;
        for (std::size_t i = 0; i < n; ++i) names.push_back("n" + std::to_string(i));
        NoiseScheme s(names);
        EXPECT_EQ(s.D(), 4 * n * (n + 2));
        EXPECT_EQ(s.basis().size(), (n + 2) * n);
        for (const auto& v : s.basis()) EXPECT_EQ(v.size(), s.D());
        EXPECT_LT(max_noise_cancellation(s), s.D() / 4);
        EXPECT_TRUE(s.folded().is_free_basis());
    }
}

TEST(Noise, ClosedFormWords) {
    const auto& s = *scheme1();
    for (std::size_t y = 0; y < s.y_count(); ++y) EXPECT_EQ(s.noise(y, 0), ShiftStepper::closed_form_noise(s, y, 0));
    EXPECT_EQ(to_string(s.noise(0, 0)), "b1 b2 b1 b2 b1 b2 b1 b2 b1 b2 b1 b2");
}

TEST(Noise, DecodeInvertsProducts) {
    auto rng = make_rng(31);
    NoiseScheme s(std::vector<std::string>{"a", "c"});
    std::uniform_int_distribution<std::size_t> py(0, s.y_count() - 1), pa(0, s.size() - 1);
    for (int i = 0; i < 300; ++i) {
        std::vector<NoiseTerm> terms;
        while (terms.size() < static_cast<std::size_t>(i % 7)) {
            NoiseTerm t{py(rng), pa(rng), rng() % 2 ? 1 : -1};
            if (!terms.empty() && terms.back().y == t.y && terms.back().a == t.a && terms.back().sign == -t.sign) continue;
            terms.push_back(t);
        }
        const Word u = noise_product(s, terms);
        auto back = decode_noise(s, u);
        ASSERT_TRUE(back.has_value());
        EXPECT_EQ(*back, terms);
    }
    EXPECT_FALSE(decode_noise(s, parse_word("b1")).has_value());
}

TEST(Noise, DeltaProjection) {
    const auto& s = *scheme1();
    EXPECT_EQ(to_string(delta(s, parse_word("b1 a_1 b2 a_1^-1 b1"))), "1");
    EXPECT_FALSE(delta_is_reduced(s, parse_word("b1 a_1 b2 a_1^-1 b1")));
    EXPECT_EQ(to_string(delta(s, parse_word("b1 a_1 b2 a_1"))), "a a");
}

TEST(Shift, ExamplesByHand) {
    const auto r = shift_history(m1(), parse_word("b2 b1"));
    ASSERT_TRUE(r.has_value());
    ASSERT_EQ(r->time(), 2u);
    const auto& s = *scheme1();
    EXPECT_EQ(m1().decode_rule(r->history[0]), std::make_pair(s.size(), 1));
    EXPECT_EQ(m1().decode_rule(r->history[1]), std::make_pair(s.size() + 1, 1));
    EXPECT_EQ(shift_history(m1(), Word{})->time(), 0u);
    // a_1 pops at once and leaves one noise word to spell.
    const auto a = shift_history(m1(), parse_word("a_1"));
    ASSERT_TRUE(a.has_value());
    EXPECT_EQ(a->time(), 1u + scheme1()->D());
}

TEST(Shift, MaterializedComputationEndsEmpty) {
    for (const char* w : {"b2 b1", "a_1", "b1 a_1 b2", "a_1^-1"}) {
        const Word word = parse_word(w);
        auto r = shift_history(m1(), word);
        if (!r) continue;
        auto c = shift(m1(), word);
        ASSERT_TRUE(c.has_value()) << w;
        EXPECT_TRUE(c->end().tapes[0].empty()) << w;
        EXPECT_TRUE(c->reduced());
        EXPECT_TRUE(replay_shift(m1(), word, r->history).empty());
    }
}

TEST(Shift, StepperAgreesWithRuleApplication) {
    auto rng = make_rng(32);
    const auto& s = *scheme1();
    const auto& hw = m1().machine.hw;
    ShiftStepper st(s);
    const std::vector<SymbolId> letters{s.A1(0), s.B(0), s.B(1)};
    for (int i = 0; i < 300; ++i) {
        const Word w = random_reduced_word(rng, letters, i % 8);
        const std::size_t y = static_cast<std::size_t>(i) % s.y_count();
        const int e = i % 2 ? 1 : -1;
        const auto W = standard_configuration(hw, m1().machine.start_letters(), {w, Word{}});
        EXPECT_EQ(Word::from_reduced(st.step({w.begin(), w.end()}, y, e)), apply(m1().machine, W, m1().rule(y, e)).tapes[0]);
    }
}

TEST(Shift, SmallOracleAgreesOnShortWords) {
    const auto& s = *scheme1();
    ShiftOracle oracle(s, 3, 5);
    for (const Word& w : all_reduced_words({s.A1(0), s.B(0), s.B(1)}, 3)) {
        const auto paths = oracle.search(w);
        const auto r = shift_history(m1(), w);
        EXPECT_LE(paths.size(), 1u);
        if (r && r->time() <= oracle.radius()) {
            ASSERT_EQ(paths.size(), 1u) << to_string(w);
            std::vector<std::pair<std::size_t, int>> steps;
            for (RuleRef x : r->history) steps.push_back(*m1().decode_rule(x));
            EXPECT_EQ(paths[0].steps, steps);
        } else {
            EXPECT_TRUE(paths.empty()) << to_string(w);
        }
    }
}

TEST(Shift, TimeBoundSaturates) {
    const auto& s = *scheme1();
    EXPECT_EQ(shift_time_bound(s, 0), 0u);
    EXPECT_EQ(shift_time_bound(s, 1), 1u + (2 * s.D() + 1));
    EXPECT_EQ(shift_time_bound(s, 100), std::numeric_limits<std::uint64_t>::max());
}

TEST(Projection, EpsilonOfStart) {
    const auto W = m1_start(m1(), parse_word("a a"));
    EXPECT_EQ(to_string(W), "q0 a_1 a_1 q1 q2");
    EXPECT_EQ(to_string(epsilon_projection(m1(), W)), "a a");
}

TEST(Recognizer, OddContract) {
    auto r = make_odd_recognizer(scheme1());
    EXPECT_TRUE(check_recognizer(*r, *scheme1()).empty());
    EXPECT_TRUE(r->member(parse_word("a")));
    EXPECT_FALSE(r->member(parse_word("a a")));
    EXPECT_FALSE(r->member(parse_word("a^-1")));
    auto h = r->accept_run(parse_word("a a a"));
    ASSERT_TRUE(h.has_value());
    EXPECT_LE(h->size(), r->time_bound_at(3));
    EXPECT_EQ(run_final(r->machine(), r->start(*scheme1(), parse_word("a a a")), *h), r->accept_configuration());
    EXPECT_FALSE(r->accept_run(parse_word("a a")).has_value());
}

TEST(Recognizer, RejectAcceptsNothing) {
    auto r = make_reject_recognizer(scheme1());
    EXPECT_TRUE(check_recognizer(*r, *scheme1()).empty());
    EXPECT_FALSE(r->member(parse_word("a")));
    EXPECT_FALSE(r->accept_run(parse_word("a")).has_value());
}

TEST(Builders, ReflectAndCyclify) {
    const Machine& m = m1().machine;
    const Machine r = reflect(m);
    EXPECT_EQ(r.hw.parts.size(), 2 * m.hw.parts.size());
    EXPECT_EQ(r.rules.size(), m.rules.size());
    const Machine c = cyclify(r);
    EXPECT_TRUE(c.hw.cyclic);
    EXPECT_EQ(c.hw.parts.size(), r.hw.parts.size() + 1);
    EXPECT_NE(mirror_name("q0"), "q0");
}

TEST(Builders, ReflectedConfigurationsSplitBack) {
    const Machine& m = m1().machine;
    const Machine r = reflect(m);
    const auto W1 = m1_start(m1(), parse_word("a"));
    const auto W2 = m1_start(m1(), parse_word("a a"));
    const auto W = reflect_configuration(r, W1, W2);
    const auto [A, B] = associated_pair(r, W);
    EXPECT_EQ(A, W1);
    EXPECT_EQ(B, W2);
}

TEST(Builders, ParallelCopiesRunInLockstep) {
    const Machine c = cyclify(reflect(m1().machine));
    const Machine p = parallelize(c, 3, false, 0);
    EXPECT_EQ(p.hw.parts.size(), 3 * c.hw.parts.size());
    EXPECT_EQ(p.rules.size(), c.rules.size());
    EXPECT_EQ(coordinate_name("q0", 2), coordinate_name("q0", 2));
    EXPECT_NE(coordinate_name("q0", 2), coordinate_name("q0", 3));
}

TEST(Params, ChainAndProfiles) {
    EXPECT_NO_THROW(Params::desk().validate());
    Params bad = Params::desk();
    bad.C = bad.c0;
    EXPECT_THROW(bad.validate(), std::invalid_argument);
    EXPECT_THROW(Params::paper().require_numeric(), std::invalid_argument);
    EXPECT_FALSE(paper_constraints().empty());
}

TEST(Main, StartConfigurationsDecode) {
    const auto& mm = main_machine();
    const Word w = parse_word("a a a");
    const auto I = mm.I(w), J = mm.J(w);
    EXPECT_EQ(mm.decode_start(I), std::make_pair(w, 1));
    EXPECT_EQ(mm.decode_start(J), std::make_pair(w, 2));
    EXPECT_EQ(mm.coordinate_a_length(I, 2), 2 * w.size());
    EXPECT_FALSE(mm.decode_start(mm.W_ac()).has_value());
}

TEST(Main, AcceptingRunsHaveOnePhase) {
    const auto& mm = main_machine();
    for (const char* w : {"a", "a a a"}) {
        const auto W = mm.I(parse_word(w));
        auto r = accepting_run(mm, W);
        ASSERT_TRUE(r.has_value()) << w;
        EXPECT_EQ(r->ell, 1u);
        EXPECT_EQ(r->final, mm.W_ac());
        EXPECT_LE(r->time(), main_time_bound(mm, mm.coordinate_a_length(W, 2)));
    }
    EXPECT_FALSE(accepting_run(mm, mm.I(parse_word("a a"))).has_value());
    EXPECT_EQ(mm.ell({}), 0u);
}

TEST(SpecialSectorTest, CompressionAndLambda) {
    const auto& mm = main_machine();
    SpecialSector ss(mm);
    EXPECT_EQ(to_string(ss.compress(parse_word("b1 a_1 b2 a b1"))), "a_1 b2 a");
    auto yes = [](const Word& w) { return w.size() % 2 == 1; };
    const Word a1 = parse_word("a_1");
    const auto sc = ss.run(a1, {ss.working(0), ss.working(1, -1)});
    auto wit = ss.lambda_accept(sc.words.back(), yes);
    ASSERT_TRUE(wit.has_value());
    EXPECT_EQ(to_string(wit->target), "a");
    EXPECT_EQ(wit->semi.words.back(), wit->target);
    EXPECT_FALSE(ss.lambda_accept(sc.words.back(), [](const Word&) { return false; }).has_value());
    EXPECT_TRUE(ss.omega_member(parse_word("a"), yes));
    EXPECT_FALSE(ss.omega_member(parse_word("a a"), yes));
}
