#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <unistd.h>

#include "support.hpp"

using namespace smforge;
using namespace smforge::testing;

namespace {

std::vector<SymbolId> ids(std::initializer_list<const char*> names) {
    std::vector<SymbolId> out;
    for (auto n : names) out.push_back(intern(n));
    return out;
}

}  // namespace

TEST(Oracles, ExponentSums) {
    const auto z = make_oracle({"ex", "ey"}, "Z");
    const auto z2 = make_oracle({"ex", "ey"}, "Z2");
    EXPECT_TRUE(z.trivial(parse_word("ex ey ex^-1 ey^-1")));
    EXPECT_FALSE(z.trivial(parse_word("ex ex")));
    EXPECT_TRUE(z2.trivial(parse_word("ex ex")));
    EXPECT_FALSE(z2.trivial(parse_word("ex ey")));
    EXPECT_TRUE(z.trivial(Word{}));
}

TEST(Oracles, AnswersAreMemoized) {
    int calls = 0;
    RelatorOracle o(ids({"ex"}), [&](const Word& w) { ++calls; return w.empty(); }, "counting");
    for (int i = 0; i < 5; ++i) EXPECT_FALSE(o.trivial(parse_word("ex")));
    EXPECT_EQ(calls, 1);
    EXPECT_EQ(o.evaluations(), 1u);
    EXPECT_EQ(o.description(), "counting");
}

TEST(Oracles, BadGeneratorListsAreRejected) {
    EXPECT_THROW(make_oracle({}, "Z"), std::invalid_argument);
    EXPECT_THROW(make_oracle({"ex", "ex"}, "Z"), std::invalid_argument);
    EXPECT_THROW(make_oracle({"e x"}, "Z"), std::invalid_argument);
}

TEST(Oracles, ExternalCommand) {
    // Free group: a reduced word is trivial exactly when it prints as "1".
    const auto dir = std::filesystem::temp_directory_path() / ("smforge_oracle_" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir);
    const auto script = dir / "free.sh";
    {
        std::ofstream f(script);
        f << "#!/bin/sh\nif [ \"$1\" = \"1\" ]; then echo 1; else echo 0; fi\n";
    }
    std::filesystem::permissions(script, std::filesystem::perms::owner_all);
    const auto o = make_oracle({"fx", "fy"}, script.string());
    EXPECT_TRUE(o.trivial(Word{}));
    EXPECT_FALSE(o.trivial(parse_word("fx fy fx^-1 fy^-1")));
    const auto broken = command_oracle(ids({"fx"}), "false");
    EXPECT_THROW(broken.trivial(parse_word("fx")), std::runtime_error);
    std::filesystem::remove_all(dir);
}

TEST(Trick, BarredLettersMapToInverses) {
    StandardTrick t(make_oracle({"ex", "ey"}, "Z"));
    ASSERT_EQ(t.Y().size(), 4u);
    const SymbolId xb = t.bar(intern("ex"));
    EXPECT_EQ(symbol_name(xb), "exbar");
    EXPECT_EQ(t.xi(Word{make_letter(xb)}.letters()), parse_word("ex^-1"));
    EXPECT_TRUE(t.in_S(parse_word("ex exbar")));
    EXPECT_TRUE(t.in_S(parse_word("ex ey exbar eybar")));
    EXPECT_FALSE(t.in_S(parse_word("ex exbar^-1")));  // not positive
    EXPECT_FALSE(t.in_S(Word{}));
    EXPECT_FALSE(t.in_S(parse_word("ex ey")));
}

TEST(Expanded, BlocksParseBack) {
    auto t = std::make_shared<const StandardTrick>(make_oracle({"ex", "ey"}, "Z"));
    ExpandedPresentation e(t, 4);
    EXPECT_EQ(e.YC().size(), 16u);
    EXPECT_EQ(to_string(e.A(0)), "ex.1 ex.2 ex.3 ex.4");
    EXPECT_EQ(e.locate(e.block_letter(2, 3)), std::make_pair(std::size_t{2}, std::size_t{3}));
    auto rng = make_rng(41);
    for (int i = 0; i < 200; ++i) {
        const Word y = random_reduced_word(rng, t->Y(), i % 6);
        const Word p = e.phi(y);
        EXPECT_EQ(p.size(), 4 * y.size());
        EXPECT_EQ(e.parse_blocks(p.letters()), y);
    }
    EXPECT_FALSE(e.parse_blocks(parse_word("ex.1 ex.2").letters()).has_value());
    EXPECT_EQ(e.block_prefixes(parse_word("ex.1 ex.2 ex.3 ex.4 ey.1").letters()), (std::vector<std::size_t>{0, 4}));
}

TEST(Expanded, WordProblemAgreesWithFreeProducts) {
    for (const char* binding : {"Z", "Z2"}) {
        auto t = std::make_shared<const StandardTrick>(make_oracle({"gx"}, binding));
        ExpandedPresentation e(t, 3);
        FreeProductOracle ref(e);
        std::size_t trivial = 0;
        for (const Word& w : all_reduced_words(e.YC(), 3)) {
            EXPECT_EQ(e.wp(w), ref.trivial(w)) << binding << " " << to_string(w);
        }
        auto rng = make_rng(42);
        for (int i = 0; i < 2000; ++i) {
            const Word w = e.phi(random_reduced_word(rng, t->Y(), i % 5)) *
                           random_reduced_word(rng, e.YC(), i % 3);
            EXPECT_EQ(e.wp(w), ref.trivial(w)) << binding << " " << to_string(w);
            trivial += e.wp(w);
        }
        EXPECT_GT(trivial, 10u);
        EXPECT_TRUE(e.wp(e.phi(parse_word("gx gxbar"))));
        EXPECT_TRUE(e.in_SC(e.phi(parse_word("gx gxbar"))));
    }
}

TEST(Pipeline, PsiIsBlockEncoding) {
    EmbeddingPipeline p(make_oracle({"hx", "hy"}, "Z"), 3);
    EXPECT_EQ(p.alphabet().size(), 12u);
    const auto images = p.generator_images();
    ASSERT_EQ(images.size(), 2u);
    EXPECT_EQ(to_string(images[0].second), "hx.1 hx.2 hx.3");
    EXPECT_EQ(p.psi(parse_word("hx hy^-1")), p.psi(parse_word("hx")) * p.psi(parse_word("hy")).inverse());
    EXPECT_THROW(p.psi(parse_word("hxbar")), std::invalid_argument);
    // Relations of Z hold in the image; the free-group relation fails.
    const Word comm = parse_word("hx hy hx^-1 hy^-1");
    EXPECT_TRUE(p.expanded().wp(p.psi(comm)));
    EXPECT_FALSE(p.expanded().wp(p.psi(parse_word("hx"))));
    EXPECT_TRUE(p.lambda(p.expanded().phi(parse_word("hx hxbar"))));
    EXPECT_FALSE(p.lambda(Word{}));
    EXPECT_FALSE(p.lambda(p.psi(parse_word("hx"))));
}
