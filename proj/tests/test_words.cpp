#include <map>
#include <set>

#include <gtest/gtest.h>

#include <vicsek/words.hpp>

using namespace vicsek;

namespace {

ExactPoint pt(std::int64_t xn, std::int64_t xd, std::int64_t yn, std::int64_t yd) {
    return {Rational(xn, xd), Rational(yn, yd)};
}

// Independent oracle: apply F_i(x) = (x - p_i)/3 + p_i with exact rationals.
ExactPoint apply_ifs(const Address& a) {
    static const std::array<ExactPoint, 5> p{pt(0, 1, 1, 1), pt(1, 1, 1, 1), pt(1, 1, 0, 1), pt(0, 1, 0, 1),
                                             pt(1, 2, 1, 2)};
    ExactPoint x = p[static_cast<std::size_t>(a.corner - 1)];
    for (std::size_t k = a.word.size(); k-- > 0;) {
        const auto& q = p[static_cast<std::size_t>(a.word[k] - 1)];
        x = {(x.x - q.x) / 3 + q.x, (x.y - q.y) / 3 + q.y};
    }
    return x;
}

// Canonical name of a same-length address under the two identification
// rules: (w i, i) = (w, i) and (w 5, i) = (w i, opp(i)).
std::pair<std::vector<int>, int> canonical(const Address& a) {
    std::vector<int> w(a.word.letters().begin(), a.word.letters().end());
    int c = a.corner;
    while (!w.empty() && w.back() == c) w.pop_back();
    if (!w.empty() && w.back() == 5) {
        w.back() = c;
        c = opposite_corner(c);
    }
    return {w, c};
}

}  // namespace

TEST(Words, ProjectMatchesPrintedExamples) {
    EXPECT_EQ(project({Word{1}, 3}), pt(1, 3, 2, 3));
    EXPECT_EQ(project({Word{5}, 1}), pt(1, 3, 2, 3));
    EXPECT_EQ(project({Word{}, 2}), pt(1, 1, 1, 1));
    EXPECT_EQ(project({Word{5}, 3}), pt(2, 3, 1, 3));
}

TEST(Words, ProjectAgreesWithDirectIfs) {
    for (const auto& w : enumerate_words(4))
        for (int c = 1; c <= 4; ++c) {
            const Address a(w, c);
            ASSERT_EQ(project(a), apply_ifs(a)) << a.str();
        }
}

TEST(Words, FixedPointLaw) {
    for (const auto& w : enumerate_words(3))
        for (int i = 1; i <= 4; ++i) EXPECT_EQ(project({w.then(i), i}), project({w, i})) << w.str();
}

TEST(Words, CenterCellIdentification) {
    for (int i = 1; i <= 4; ++i)
        EXPECT_EQ(project({Word{5}, i}), project({Word{i}, opposite_corner(i)})) << i;
}

TEST(Words, CollisionsAreExactlyTheIdentifications) {
    for (int m = 1; m <= 4; ++m) {
        std::map<std::pair<std::vector<int>, int>, ExactPoint> by_name;
        std::set<std::pair<Rational, Rational>> points;
        std::set<std::pair<std::vector<int>, int>> names;
        for (const auto& w : enumerate_words(m)) {
            if (static_cast<int>(w.size()) != m) continue;
            for (int c = 1; c <= 4; ++c) {
                const Address a(w, c);
                const auto p = project(a);
                const auto name = canonical(a);
                auto [it, fresh] = by_name.emplace(name, p);
                if (!fresh) {
                    ASSERT_EQ(it->second, p) << a.str();
                }
                points.insert({p.x, p.y});
                names.insert(name);
            }
        }
        // Distinct points and distinct canonical names are in bijection.
        EXPECT_EQ(points.size(), names.size()) << "m=" << m;
        std::uint64_t expected = 1;
        for (int k = 0; k < m; ++k) expected *= 5;
        EXPECT_EQ(points.size(), 3 * expected + 1);
    }
}

TEST(Words, RotateExamples) {
    EXPECT_EQ(rotate2({Word{2, 5}, 4}), (Address{Word{3, 5}, 1}));
    EXPECT_EQ(rotate1({Word{2, 5}, 4}), (Address{Word{4, 5}, 2}));
    EXPECT_EQ(rotate1({Word{1, 3}, 1}), (Address{Word{1, 3}, 1}));
}

TEST(Words, RotationsAreIsometries) {
    for (const auto& w : enumerate_words(3))
        for (int c = 1; c <= 4; ++c) {
            const Address a(w, c);
            EXPECT_EQ(project(rotate1(a)), reflect_diagonal(project(a))) << a.str();
            EXPECT_EQ(project(rotate2(a)), quarter_turn(project(a))) << a.str();
            EXPECT_EQ(rotate2_inverse(rotate2(a)), a);
            EXPECT_EQ(rotate1(rotate1(a)), a);
        }
}

TEST(Words, RotateTwoHasOrderFour) {
    const Address a(Word{1, 2, 5, 3}, 2);
    Address b = a;
    for (int k = 0; k < 4; ++k) b = rotate2(b);
    EXPECT_EQ(a, b);
}

TEST(Words, EnumerationCountsAndOrder) {
    const auto words = enumerate_words(2);
    ASSERT_EQ(words.size(), 31u);
    EXPECT_TRUE(words.front().empty());
    EXPECT_EQ(words[1], (Word{1}));
    EXPECT_EQ(words[2], (Word{1, 1}));
    EXPECT_EQ(words.back(), (Word{5, 5}));
    EXPECT_TRUE(std::is_sorted(words.begin(), words.end()));
    EXPECT_EQ(word_count(2, 5), 31u);
    EXPECT_EQ(word_count(8, 5), 488281u);
    EXPECT_EQ(enumerate_words(3, {2}).size(), word_count(3, 1));
}

TEST(Words, RejectsBadInput) {
    EXPECT_THROW(Word({6}), domain_error);
    EXPECT_THROW(Word({0}), domain_error);
    EXPECT_THROW(Address(Word{1}, 5), domain_error);
    EXPECT_THROW(WordEnumerator(-1), domain_error);
    EXPECT_THROW(lattice_point(Word{1, 2}, 1, 1), level_mismatch);
}

TEST(Words, ParseRoundTrip) {
    const Word w = Word::parse("1253");
    EXPECT_EQ(w, (Word{1, 2, 5, 3}));
    EXPECT_EQ(Word::parse(w.str()), w);
}
