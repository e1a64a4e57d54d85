#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "support.hpp"

using namespace smforge;
using namespace smforge::testing;

namespace {

Machine tiny() {
    std::ifstream in(std::string(SMFORGE_DATA_DIR) + "/tiny.machine");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_machine(ss.str());
}

}  // namespace

TEST(Machine, TextRoundTrip) {
    const Machine m = tiny();
    EXPECT_EQ(m.name, "tiny");
    EXPECT_EQ(m.hw.parts.size(), 2u);
    EXPECT_EQ(serialize_machine(parse_machine(serialize_machine(m))), serialize_machine(m));
    const M1 m1 = build_M1(std::vector<std::string>{"a"});
    EXPECT_EQ(serialize_machine(parse_machine(serialize_machine(m1.machine))), serialize_machine(m1.machine));
}

TEST(Machine, MalformedFilesAreParseErrors) {
    EXPECT_THROW(parse_machine(""), ParseError);
    EXPECT_THROW(parse_machine("MACHINE x\nPART zero: p\nEND\n"), ParseError);
    EXPECT_THROW(parse_machine("MACHINE x\nCYCLIC no\nPART 0: p [name=P,start=p,end=p]\nTAPE 1:\n"), ParseError);
}

TEST(Machine, HandComputedStep) {
    const Machine m = tiny();
    const auto W = parse_admissible(m.hw, "p0 x y x p1");
    const RuleRef go = m.ref("go");
    EXPECT_EQ(to_string(apply(m, W, go)), "p0 x y y x y x^-1 r1");
    EXPECT_EQ(apply(m, apply(m, W, go), -go), W);
    EXPECT_EQ(theta_length(m, W, go), 2u + 3u);  // two state cells, three tape terms
}

TEST(Machine, InapplicableRuleReportsWhy) {
    const Machine m = tiny();
    const auto W = parse_admissible(m.hw, "p0 x r1");
    EXPECT_FALSE(is_admissible(m, W, m.ref("go")));
    try {
        (void)apply(m, W, m.ref("go"));
        FAIL() << "expected ApplyError";
    } catch (const ApplyError& e) {
        EXPECT_EQ(e.kind, ApplyFailure::state_mismatch);
    }
    try {
        (void)run(m, parse_admissible(m.hw, "p0 x p1"), {m.ref("go"), m.ref("go")});
        FAIL() << "expected StepError";
    } catch (const StepError& e) {
        EXPECT_EQ(e.index, 1u);
    }
}

TEST(Machine, HistoriesParseReduceInvert) {
    const M1 m1 = build_M1(std::vector<std::string>{"a"});
    const History h = parse_history(m1.machine, "θ_{a} θ_{b1}^-1 θ_{b1} θ_{b2}");
    EXPECT_EQ(h.size(), 4u);
    EXPECT_EQ(reduce_history(h).size(), 2u);
    EXPECT_EQ(invert_history(invert_history(h)), h);
    EXPECT_EQ(parse_history(m1.machine, history_to_string(m1.machine, h)), h);
    EXPECT_THROW(parse_history(m1.machine, "no-such-rule"), std::exception);
}

TEST(Machine, RoundTripOnRandomComputations) {
    auto rng = make_rng(21);
    const M1 m1 = build_M1(std::vector<std::string>{"a", "c"});
    const auto& m = m1.machine;
    std::vector<SymbolId> in(m1.scheme->A1());
    in.push_back(m1.scheme->B(0));
    in.push_back(m1.scheme->B(1));
    for (int i = 0; i < 200; ++i) {
        const auto W = m1_start(m1, random_reduced_word(rng, m1.scheme->A(), i % 4));
        History h;
        std::uniform_int_distribution<int> pick(1, static_cast<int>(m.rules.size()));
        while (h.size() < static_cast<std::size_t>(i % 6)) {
            const int r = pick(rng) * (rng() % 2 ? 1 : -1);
            if (!h.empty() && h.back() == -r) continue;
            h.push_back(r);
        }
        const auto c = run(m, W, h);
        EXPECT_EQ(run_final(m, c.end(), invert_history(h)), W);
        EXPECT_EQ(run_final(m, W, h), c.end());
        EXPECT_TRUE(is_well_formed(m.hw, c.end()));
    }
}

TEST(Machine, SemiApplicationIgnoresStates) {
    const Machine m = tiny();
    const Word w = parse_word("x y x");
    EXPECT_EQ(to_string(semi_apply(m, w, m.ref("go"), 0)), "x y y x y");
    EXPECT_EQ(semi_apply(m, semi_apply(m, w, m.ref("go"), 0), -m.ref("go"), 0), w);
    EXPECT_EQ(semi_theta_length(m, w, m.ref("go"), 0), 3u);
    EXPECT_THROW(semi_apply(m, parse_word("z"), m.ref("go"), 0), ApplyError);
}

TEST(Noisy, M1IsNoisyAndTinyIsNot) {
    const M1 m1 = build_M1(std::vector<std::string>{"a"});
    const auto rep = validate_noisy(m1.machine);
    EXPECT_TRUE(rep.valid) << (rep.violations.empty() ? "" : rep.violations.front());
    EXPECT_FALSE(validate_noisy(tiny()).valid);
}

TEST(Hardware, StandardConfiguration) {
    const M1 m1 = build_M1(std::vector<std::string>{"a"});
    const auto& hw = m1.machine.hw;
    const auto W = standard_configuration(hw, m1.machine.start_letters(), {parse_word("a_1"), Word{}});
    EXPECT_EQ(to_string(W), "q0 a_1 q1 q2");
    EXPECT_EQ(sectors_of(hw, W), (std::vector<int>{0, 1}));
    EXPECT_EQ(W.length(), 4u);
    EXPECT_EQ(to_admissible(hw, W.to_word()), W);
}
