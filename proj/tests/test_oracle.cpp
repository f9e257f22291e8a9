#include "doctest.h"

#include <random>

#include "hsg/oracle.hpp"
#include "oracles.hpp"

using namespace hsg;
using hsg::testing::all_words;

namespace {

Word random_nonempty(std::mt19937& rng, int alphabet_size, int maxlen) {
    std::uniform_int_distribution<int> len(1, maxlen);
    std::uniform_int_distribution<int> let(0, alphabet_size - 1);
    Word w(len(rng));
    for (auto& x : w) x = let(rng);
    return w;
}

OraclePtr integers_oracle() {
    // Z with formal inverses via a confluent rewriting system.
    Alphabet gens({"a", "a^{-1}"});
    return std::make_shared<RewritingOracle>(
        gens, gens,
        std::vector<std::pair<Word, Word>>{{parse_word(gens, "a a^{-1}"), {}},
                                           {parse_word(gens, "a^{-1} a"), {}}},
        /*monoid=*/true);
}

// A 3-element right-zero-ish semigroup: x*y = y except z absorbs on the left.
FiniteOracle small_finite() {
    // elements e0,e1; table: associative (left projection semigroup x*y = x).
    return FiniteOracle(Alphabet({"p", "q"}), {"e0", "e1"}, {{0, 0}, {1, 1}}, {0, 1});
}

}  // namespace

TEST_CASE("bicyclic evaluation examples") {
    BicyclicOracle o;
    CHECK(o.evaluate(parse_word(o.alphabet(), "ab")) == o.identity());
    CHECK(o.evaluate(parse_word(o.alphabet(), "baa")) == "1,2");
    CHECK(o.evaluate({}) == "0,0");
}

TEST_CASE("free commutative oracle identifies ab and ba") {
    FreeCommutativeOracle o;
    CHECK(o.evaluate(parse_word(o.alphabet(), "ab")) ==
          o.evaluate(parse_word(o.alphabet(), "ba")));
    CHECK_THROWS(o.evaluate({}));  // semigroup mode
}

TEST_CASE("homomorphism law on random word pairs") {
    std::mt19937 rng(41);
    std::vector<OraclePtr> oracles = {
        std::make_shared<BicyclicOracle>(),
        std::make_shared<FreeCommutativeOracle>(),
        std::make_shared<FreeOracle>(Alphabet({"a", "b", "c"})),
        integers_oracle(),
        std::make_shared<FiniteOracle>(small_finite()),
        std::make_shared<AdjoinedOracle>(std::make_shared<BicyclicOracle>(),
                                         AdjoinedOracle::Mode::Zero),
    };
    for (const auto& o : oracles) {
        for (int trial = 0; trial < 2000; ++trial) {
            Word x = random_nonempty(rng, o->alphabet().size(), 6);
            Word y = random_nonempty(rng, o->alphabet().size(), 6);
            CHECK(o->evaluate(concat(x, y)) == o->product(o->evaluate(x), o->evaluate(y)));
        }
    }
}

TEST_CASE("bicyclic product satisfies both branches of the multiplication rule") {
    BicyclicOracle o;
    const Letter a = 0, b = 1;
    for (int i = 0; i <= 6; ++i)
        for (int j = 0; j <= 6; ++j)
            for (int k = 0; k <= 6; ++k)
                for (int l = 0; l <= 6; ++l) {
                    Word left, right;
                    for (int t = 0; t < i; ++t) left.push_back(b);
                    for (int t = 0; t < j; ++t) left.push_back(a);
                    for (int t = 0; t < k; ++t) right.push_back(b);
                    for (int t = 0; t < l; ++t) right.push_back(a);
                    Element prod = o.evaluate(concat(left, right));
                    Element expect = j >= k ? BicyclicOracle::print(i, j - k + l)
                                            : BicyclicOracle::print(i + k - j, l);
                    CHECK(prod == expect);
                }
}

TEST_CASE("adjoined zero absorbs, adjoined identity is neutral") {
    auto inner = std::make_shared<BicyclicOracle>();
    AdjoinedOracle zero(inner, AdjoinedOracle::Mode::Zero);
    AdjoinedOracle one(inner, AdjoinedOracle::Mode::Identity);
    std::mt19937 rng(7);
    const Letter x = inner->alphabet().size();
    for (int trial = 0; trial < 200; ++trial) {
        Word u = random_nonempty(rng, 2, 5), v = random_nonempty(rng, 2, 5);
        Word uxv = concat(concat(u, {x}), v);
        CHECK(zero.evaluate(uxv) == zero.evaluate({x}));
        CHECK(one.evaluate(uxv) == one.evaluate(concat(u, v)));
    }
    CHECK(one.identity() == "@one");
    CHECK(zero.identity() == inner->identity());
    CHECK(zero.monoid_mode());
    CHECK(AdjoinedOracle(std::make_shared<FreeOracle>(Alphabet({"a"})),
                         AdjoinedOracle::Mode::Zero)
              .monoid_mode() == false);
}

TEST_CASE("finite oracle validates its table") {
    CHECK_THROWS(FiniteOracle(Alphabet({"p"}), {"e0", "e1"},
                              {{1, 0}, {0, 0}},  // not associative
                              {0}));
    CHECK_THROWS(FiniteOracle(Alphabet({"p"}), {"e0", "e1"}, {{0, 0}, {1, 1}}, {0},
                              /*identity=*/1));  // e1 is not neutral
    FiniteOracle o = small_finite();
    CHECK(o.evaluate(parse_word(o.alphabet(), "pq")) == "e0");
}

TEST_CASE("ball examples") {
    {
        FreeCommutativeOracle o;
        auto b = ball(o, 2);
        std::set<Element> got;
        for (const auto& e : b) got.insert(e.element);
        CHECK(got == std::set<Element>{"1,0", "0,1", "2,0", "1,1", "0,2"});
    }
    {
        // Monoid mode: the identity is the length-0 element. Six elements in
        // the radius-2 ball, by direct enumeration of words of length <= 2.
        BicyclicOracle o;
        auto b = ball(o, 2);
        std::set<Element> got;
        for (const auto& e : b) got.insert(e.element);
        CHECK(got == std::set<Element>{"0,0", "0,1", "1,0", "0,2", "1,1", "2,0"});
    }
    {
        FiniteOracle o = small_finite();
        auto b2 = ball(o, 2), b5 = ball(o, 5);
        CHECK(b2.size() == b5.size());  // stabilizes once all elements reached
        CHECK(b2.size() == 2);
    }
    CHECK_THROWS(ball(BicyclicOracle(), 0));
}

TEST_CASE("ball minimal lengths and witnesses are minimal") {
    BicyclicOracle o;
    auto b = ball(o, 4);
    for (const auto& entry : b) {
        auto [i, j] = BicyclicOracle::parse(entry.element);
        CHECK(entry.min_length == i + j);  // b^i a^j is shortest
        CHECK(static_cast<int>(entry.witness.size()) == entry.min_length);
        CHECK(o.evaluate(entry.witness) == entry.element);
    }
}

TEST_CASE("minimal_combing_words for the bicyclic normal-form combing") {
    BicyclicOracle o;
    Nfa r = compile("b* a*", o.alphabet());
    auto m = minimal_combing_words(o, r, 10);
    for (const auto& [e, wit] : m) {
        auto [i, j] = BicyclicOracle::parse(e);
        CHECK(wit.length == i + j);
        // The unique R-representative b^i a^j.
        Word expect;
        for (int t = 0; t < i; ++t) expect.push_back(1);
        for (int t = 0; t < j; ++t) expect.push_back(0);
        CHECK(wit.word == expect);
    }
    CHECK(m.count("0,0"));  // ε represents the identity in monoid mode
    CHECK(m.at("0,0").length == 0);
}

TEST_CASE("minimal_combing_words: free oracle minimal length is the word length") {
    FreeOracle o(Alphabet({"a", "b"}));
    Nfa r = sigma_plus(o.alphabet());
    auto m = minimal_combing_words(o, r, 5);
    for (const auto& [e, wit] : m) {
        CHECK(static_cast<int>(e.size()) == wit.length);
        CHECK(word_text(o.alphabet(), wit.word) == e);
    }
}

TEST_CASE("minimal_combing_words agrees with naive enumeration") {
    FreeCommutativeOracle o;
    Nfa r = intersect(compile("a* b*", o.alphabet()), sigma_plus(o.alphabet()));
    auto m = minimal_combing_words(o, r, 8);
    CHECK(m.at("2,1").length == 3);
    CHECK(word_text(o.alphabet(), m.at("2,1").word) == "aab");
    // Naive route: walk all R-words by increasing length.
    std::map<Element, int> naive;
    for (const Word& w : bounded_words(r, 8))
        if (!w.empty() && !naive.count(o.evaluate(w))) naive[o.evaluate(w)] = w.size();
    CHECK(naive.size() == m.size());
    for (const auto& [e, len] : naive) CHECK(m.at(e).length == len);
}

TEST_CASE("combing_words_by_element groups everything") {
    BicyclicOracle o;
    Nfa r = compile("b* a*", o.alphabet());
    CombingWords cw = combing_words_by_element(o, r, 6);
    // b^i a^j for i+j <= 6, one word per element, plus ε.
    CHECK(cw.words.size() == 28);
    for (const auto& [e, idxs] : cw.by_element) {
        CHECK(idxs.size() == 1);
        CHECK(o.evaluate(cw.words[idxs[0]]) == e);
    }
    // (length, lex) order.
    for (size_t i = 1; i < cw.words.size(); ++i) {
        bool ordered = cw.words[i - 1].size() < cw.words[i].size() ||
                       (cw.words[i - 1].size() == cw.words[i].size() &&
                        cw.words[i - 1] < cw.words[i]);
        CHECK(ordered);
    }
}

TEST_CASE("rewriting oracle: integers via formal inverses") {
    OraclePtr z = integers_oracle();
    const Alphabet& sigma = z->alphabet();
    CHECK(z->evaluate(parse_word(sigma, "a a^{-1}")) == z->identity());
    CHECK(z->evaluate(parse_word(sigma, "a a a^{-1}")) == z->evaluate(parse_word(sigma, "a")));
    CHECK(z->evaluate(parse_word(sigma, "a^{-1}")) != z->evaluate(parse_word(sigma, "a")));
}

TEST_CASE("rewriting oracle: subsemigroup image presentation") {
    // Generators {u,v} mapping into {a,b}^+ via u -> ab, v -> b.
    Alphabet gens({"u", "v"});
    Alphabet working({"u", "v", "a", "b"});
    RewritingOracle o(gens, working,
                      {{parse_word(working, "u"), parse_word(working, "ab")},
                       {parse_word(working, "v"), parse_word(working, "b")}});
    CHECK(o.evaluate(parse_word(gens, "uv")) == "abb");
    CHECK(o.evaluate(parse_word(gens, "vu")) == "bab");
}

TEST_CASE("rewriting normal form is strategy independent on samples") {
    OraclePtr z = integers_oracle();
    const auto* o = dynamic_cast<const RewritingOracle*>(z.get());
    REQUIRE(o != nullptr);
    std::mt19937 rng(13);
    for (int trial = 0; trial < 200; ++trial) {
        Word w = random_nonempty(rng, 2, 10);
        Word nf = o->normal_form(w);
        for (unsigned seed = 0; seed < 3; ++seed)
            CHECK(o->normal_form_random(w, seed) == nf);
    }
}
