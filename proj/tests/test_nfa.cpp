#include "doctest.h"

#include <random>

#include "hsg/nfa.hpp"

using namespace hsg;

namespace {

// Exhaustive word list over the alphabet, lengths 0..maxlen, (length, lex) order.
std::vector<Word> all_words(const Alphabet& alphabet, int maxlen) {
    std::vector<Word> out = {{}};
    size_t level_begin = 0;
    for (int len = 1; len <= maxlen; ++len) {
        size_t level_end = out.size();
        for (size_t i = level_begin; i < level_end; ++i)
            for (Letter x = 0; x < alphabet.size(); ++x) {
                Word w = out[i];
                w.push_back(x);
                out.push_back(std::move(w));
            }
        level_begin = level_end;
    }
    return out;
}

Nfa random_nfa(std::mt19937& rng, const Alphabet& alphabet) {
    std::uniform_int_distribution<int> nstates(1, 4);
    Nfa a = nfa_empty(alphabet);
    int n = nstates(rng);
    a.num_states = n;
    std::uniform_int_distribution<int> st(0, n - 1);
    std::uniform_int_distribution<int> lab(-1, alphabet.size() - 1);
    std::uniform_int_distribution<int> nedges(0, 8);
    int m = nedges(rng);
    for (int i = 0; i < m; ++i) a.add_edge(st(rng), lab(rng), st(rng));
    a.initial = {st(rng)};
    a.final = {st(rng)};
    return a;
}

}  // namespace

TEST_CASE("compile a*b* matches the figure-1 language") {
    Alphabet ab({"a", "b"});
    Nfa fig1 = compile("a* b*", ab);
    CHECK(member(fig1, parse_word(ab, "aab")));
    CHECK(!member(fig1, parse_word(ab, "ba")));
    CHECK(member(fig1, {}));
    for (const Word& w : all_words(ab, 6)) {
        bool sorted = std::is_sorted(w.begin(), w.end());
        CHECK(member(fig1, w) == sorted);
    }
}

TEST_CASE("compile the empty expression and the bicyclic combing") {
    Alphabet ab({"a", "b"});
    Nfa empty = compile("@empty", ab);
    CHECK(is_empty(empty));

    Nfa r = compile("b* a*", ab);
    CHECK(member(r, parse_word(ab, "baa")));
    CHECK(!member(r, parse_word(ab, "aba")));
}

TEST_CASE("ratexpr parser handles parens, eps, plus-as-union") {
    Alphabet ab({"a", "b"});
    Nfa e = compile("(a + @eps) b", ab);
    CHECK(member(e, parse_word(ab, "ab")));
    CHECK(member(e, parse_word(ab, "b")));
    CHECK(!member(e, parse_word(ab, "a")));
    CHECK_THROWS(parse_ratexpr("(a"));
    CHECK_THROWS(parse_ratexpr(""));
}

TEST_CASE("boolean operation semantics, exhaustive to length 8") {
    Alphabet ab({"a", "b"});
    std::mt19937 rng(21);
    auto words = all_words(ab, 8);
    for (int trial = 0; trial < 12; ++trial) {
        Nfa a = random_nfa(rng, ab), b = random_nfa(rng, ab);
        Nfa au = union_nfa(a, b), ai = intersect(a, b), ac = concat(a, b), as = star(a),
            cmpl = complement(a);
        for (const Word& w : words) {
            bool ma = member(a, w), mb = member(b, w);
            CHECK(member(au, w) == (ma || mb));
            CHECK(member(ai, w) == (ma && mb));
            CHECK(member(cmpl, w) == !ma);
            bool mc = false;
            for (size_t cut = 0; cut <= w.size() && !mc; ++cut) {
                Word x(w.begin(), w.begin() + cut), y(w.begin() + cut, w.end());
                mc = member(a, x) && member(b, y);
            }
            CHECK(member(ac, w) == mc);
            if (w.size() <= 6) {
                // star oracle: dynamic programming over prefixes
                std::vector<char> ok(w.size() + 1, 0);
                ok[0] = 1;
                for (size_t i = 1; i <= w.size(); ++i)
                    for (size_t j = 0; j < i && !ok[i]; ++j)
                        if (ok[j] && member(a, Word(w.begin() + j, w.begin() + i))) ok[i] = 1;
                CHECK(member(as, w) == static_cast<bool>(ok[w.size()]));
            }
        }
    }
}

TEST_CASE("intersect(a*b*, b*a*) equals a* + b*") {
    Alphabet ab({"a", "b"});
    Nfa lhs = intersect(compile("a* b*", ab), compile("b* a*", ab));
    Nfa rhs = compile("a* + b*", ab);
    CHECK(bounded_equal(lhs, rhs, 6));
}

TEST_CASE("determinize preserves membership and normal form") {
    Alphabet ab({"a", "b"});
    std::mt19937 rng(5);
    auto words = all_words(ab, 8);
    for (int trial = 0; trial < 10; ++trial) {
        Nfa a = random_nfa(rng, ab);
        Nfa d = determinize(a);
        CHECK(d.initial.size() == 1);
        for (const auto& e : d.edges) CHECK(e.label != kEpsilonLabel);
        for (const Word& w : words) CHECK(member(a, w) == member(d, w));
    }
}

TEST_CASE("complement of the full language is empty") {
    Alphabet a({"a"});
    Nfa c = complement(compile("a*", a));
    CHECK(is_empty(trim(remove_epsilon(c))));
}

TEST_CASE("hom_image compiles (ab)* from a*") {
    Alphabet a({"a"});
    Alphabet ab({"a", "b"});
    FreeHom h = FreeHom::from_map(a, ab, {{"a", "ab"}});
    Nfa img = hom_image(h, compile("a*", a));
    Nfa expect = compile("(a b)*", ab);
    CHECK(bounded_equal(img, expect, 10));
}

TEST_CASE("identity hom_image preserves the language") {
    Alphabet ab({"a", "b"});
    Nfa a = compile("a* b*", ab);
    CHECK(bounded_equal(hom_image(FreeHom::identity(ab), a), a, 8));
}

TEST_CASE("hom_preimage matches membership of images") {
    Alphabet ab({"a", "b"});
    Alphabet cd({"c", "d"});
    FreeHom h = FreeHom::from_map(cd, ab, {{"c", "ab"}, {"d", "b"}});
    Nfa a = compile("a b (a + b)*", ab);
    Nfa pre = hom_preimage(h, a);
    for (const Word& w : all_words(cd, 7)) CHECK(member(pre, w) == member(a, h.apply(w)));
}

TEST_CASE("hom_preimage of hom_image contains the original; equality for renamings") {
    Alphabet ab({"a", "b"});
    Alphabet cd({"c", "d"});
    FreeHom rename = FreeHom::from_map(ab, cd, {{"a", "c"}, {"b", "d"}});
    std::mt19937 rng(31);
    for (int trial = 0; trial < 8; ++trial) {
        Nfa a = random_nfa(rng, ab);
        Nfa round = hom_preimage(rename, hom_image(rename, a));
        for (const Word& w : all_words(ab, 6)) {
            if (member(a, w)) CHECK(member(round, w));
            CHECK(member(round, w) == member(a, w));  // injective letter-to-letter case
        }
    }
    FreeHom fold = FreeHom::from_map(ab, ab, {{"a", "a"}, {"b", "a"}});
    Nfa a = compile("a b", ab);
    Nfa round = hom_preimage(fold, hom_image(fold, a));
    for (const Word& w : all_words(ab, 4))
        if (member(a, w)) CHECK(member(round, w));
}

TEST_CASE("marked_shape recognizes two-marker words") {
    Alphabet marked = Alphabet({"a", "b"}).with_marker();
    Nfa plus_shape = marked_shape(marked, true);
    CHECK(member(plus_shape, parse_word(marked, "a#b#ab")));
    CHECK(!member(plus_shape, parse_word(marked, "#b#ab")));
    CHECK(!member(plus_shape, parse_word(marked, "a#b")));
    Nfa star_shape = marked_shape(marked, false);
    CHECK(member(star_shape, parse_word(marked, "##")));
    CHECK(member(star_shape, parse_word(marked, "a##")));
    CHECK(!member(star_shape, parse_word(marked, "#")));
}

TEST_CASE("bounded_words is length-lex sorted and complete") {
    Alphabet ab({"a", "b"});
    Nfa a = compile("b* a*", ab);
    auto ws = bounded_words(a, 4);
    CHECK(ws.front() == Word{});
    for (size_t i = 1; i < ws.size(); ++i) {
        bool ordered = ws[i - 1].size() < ws[i].size() ||
                       (ws[i - 1].size() == ws[i].size() && ws[i - 1] < ws[i]);
        CHECK(ordered);
    }
    int count = 0;
    for (const Word& w : all_words(ab, 4))
        if (member(a, w)) ++count;
    CHECK(static_cast<int>(ws.size()) == count);
}

TEST_CASE("alphabet mismatch is rejected") {
    Nfa a = compile("a*", Alphabet({"a"}));
    Nfa b = compile("b*", Alphabet({"b"}));
    CHECK_THROWS(union_nfa(a, b));
    CHECK_THROWS(member(a, Word{5}));
}
