#include <gtest/gtest.h>

#include "support.hpp"

using namespace smforge;
using namespace smforge::testing;

namespace {

std::vector<SymbolId> gens(std::initializer_list<const char*> names) {
    std::vector<SymbolId> out;
    for (auto n : names) out.push_back(intern(n));
    return out;
}

std::vector<Letter> random_raw(std::mt19937_64& rng, const std::vector<SymbolId>& g, std::size_t len) {
    const auto alpha = signed_letters(g);
    std::uniform_int_distribution<std::size_t> pick(0, alpha.size() - 1);
    std::vector<Letter> raw;
    for (std::size_t i = 0; i < len; ++i) raw.push_back(alpha[pick(rng)]);
    return raw;
}

}  // namespace

TEST(Letters, SignsAndSymbols) {
    const SymbolId x = intern("wx");
    EXPECT_EQ(intern("wx"), x);
    EXPECT_EQ(symbol_of(make_letter(x, -1)), x);
    EXPECT_EQ(sign_of(make_letter(x, -1)), -1);
    EXPECT_EQ(letter("wx", -1), -letter("wx"));
    EXPECT_EQ(symbol_name(x), "wx");
    EXPECT_FALSE(find_symbol("never-interned-name").has_value());
}

TEST(Words, ParseAndPrint) {
    EXPECT_EQ(to_string(parse_word("1")), "1");
    EXPECT_THROW(parse_word(""), ParseError);
    EXPECT_THROW(parse_word("wx^0"), ParseError);
    EXPECT_EQ(parse_word("wx^-2"), parse_word("wx^-1 wx^-1"));
    const Word w = parse_word("wx wy^-1 wx^-1");
    EXPECT_EQ(w.size(), 3u);
    EXPECT_EQ(to_string(w), "wx wy^-1 wx^-1");
    EXPECT_EQ(parse_word(to_string(w)), w);
    EXPECT_TRUE(parse_word("wx wx^-1").empty());
}

TEST(Words, ReductionMatchesStackOracle) {
    auto rng = make_rng(11);
    const auto g = gens({"wx", "wy", "wz"});
    for (int i = 0; i < 2000; ++i) {
        const auto raw = random_raw(rng, g, static_cast<std::size_t>(i % 30));
        const Word w = Word::reduce(raw);
        EXPECT_EQ(w.letters(), stack_reduce(raw));
    }
}

TEST(Words, GroupLaws) {
    auto rng = make_rng(12);
    const auto g = gens({"wx", "wy"});
    for (int i = 0; i < 500; ++i) {
        const Word a = random_reduced_word(rng, g, i % 9), b = random_reduced_word(rng, g, i % 7),
                   c = random_reduced_word(rng, g, i % 5);
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_TRUE((a * a.inverse()).empty());
        EXPECT_EQ((a * b).inverse(), b.inverse() * a.inverse());
        EXPECT_EQ(a.power(3), a * a * a);
        EXPECT_EQ(a.power(-2), (a * a).inverse());
        std::vector<Letter> acc(a.begin(), a.end());
        append_reduced(acc, b.letters());
        EXPECT_EQ(Word::from_reduced(acc), a * b);
    }
}

TEST(Words, CyclicReduction) {
    auto rng = make_rng(13);
    const auto g = gens({"wx", "wy"});
    for (int i = 0; i < 500; ++i) {
        const Word w = random_reduced_word(rng, g, i % 12);
        const auto cr = cyclic_reduce(w);
        EXPECT_TRUE(is_cyclically_reduced(cr.core));
        EXPECT_EQ(cr.conjugator * cr.core * cr.conjugator.inverse(), w);
        const auto perms = cyclic_permutations(cr.core);
        EXPECT_EQ(perms.size(), std::max<std::size_t>(cr.core.size(), 1));
        if (!cr.core.empty()) EXPECT_EQ(perms.front(), cr.core);
    }
}

TEST(Alphabet, TypedLengths) {
    Alphabet a;
    a.add_state(intern("tq"), 0);
    a.add_tape(intern("tA"), 0, TapeClass::A);
    a.add_tape(intern("tb"), 0, TapeClass::b);
    a.add_theta(intern("tt"), 0, 1);
    const auto L = a.lengths(parse_word("tq tA tA^-1 tb tt tq^-1 other"));
    EXPECT_EQ(L.total, 5u);  // tA tA^-1 cancels
    EXPECT_EQ(L.q, 2u);
    EXPECT_EQ(L.theta, 1u);
    EXPECT_EQ(L.b, 1u);
    EXPECT_EQ(L.untyped, 1u);
    EXPECT_TRUE(a.is_state(letter("tq", -1)));
}

TEST(Subgroups, ExpressionEvaluatesBack) {
    auto rng = make_rng(14);
    const auto g = gens({"wx", "wy"});
    const std::vector<Word> basis{parse_word("wx wx"), parse_word("wy wy"), parse_word("wx wy wx")};
    ASSERT_TRUE(validate_basis(basis));
    SubgroupBasis sb(basis);
    EXPECT_EQ(sb.rank(), 3u);
    std::uniform_int_distribution<std::size_t> pick(0, basis.size() - 1);
    for (int i = 0; i < 300; ++i) {
        std::vector<Term> terms;
        for (int j = 0; j < i % 6; ++j) {
            Term t{pick(rng), rng() % 2 ? 1 : -1};
            if (!terms.empty() && terms.back().index == t.index && terms.back().sign == -t.sign) continue;
            terms.push_back(t);
        }
        const Word w = evaluate_terms(terms, basis);
        const auto e = sb.express(w);
        ASSERT_TRUE(e.has_value());
        EXPECT_EQ(*e, terms);  // free basis: expressions are unique
    }
    EXPECT_FALSE(sb.contains(parse_word("wx")));
}

TEST(Subgroups, DependentListsAreNotBases) {
    EXPECT_FALSE(validate_basis({parse_word("wx"), parse_word("wx wx")}));
    EXPECT_FALSE(validate_basis({parse_word("wx wy"), parse_word("wy^-1 wx^-1")}));
    EXPECT_FALSE(validate_basis({parse_word("wx"), Word{}}));
    EXPECT_TRUE(validate_basis({parse_word("wx"), parse_word("wy")}));
    SubgroupBasis sb({parse_word("wx"), parse_word("wx wx")});
    EXPECT_EQ(sb.rank(), 1u);
    EXPECT_FALSE(sb.is_free_basis());
}

TEST(Subgroups, BasePrefixes) {
    SubgroupBasis sb({parse_word("wx wy")});
    const auto p = sb.base_prefixes(parse_word("wx wy wx wy wx"));
    EXPECT_EQ(p, (std::vector<std::size_t>{0, 2, 4}));
}

TEST(Subgroups, ExpressInBasisHelper) {
    const std::vector<Word> basis{parse_word("wx wy wx"), parse_word("wy")};
    const Word w = parse_word("wx wy wx wy^-1");
    auto e = express_in_basis(w, basis);
    ASSERT_TRUE(e.has_value());
    EXPECT_EQ(e->length(), 2u);
    EXPECT_EQ(e->evaluate(), w);
}
