#include "doctest.h"

#include <random>
#include <set>

#include "hsg/valence.hpp"
#include "oracles.hpp"

using namespace hsg;
using hsg::testing::all_words;

namespace {

// Exhaustive rewriting: apply p_i q_i deletions at every position in every
// order; the set of reachable irreducible words checks confluence.
std::set<PolycyclicWord> all_normal_forms(const PolycyclicWord& m) {
    std::set<PolycyclicWord> seen, result;
    std::vector<PolycyclicWord> stack = {m};
    seen.insert(m);
    while (!stack.empty()) {
        PolycyclicWord w = stack.back();
        stack.pop_back();
        bool reducible = false;
        for (size_t i = 0; i + 1 < w.size(); ++i) {
            if (w[i] > 0 && w[i + 1] == -w[i]) {
                reducible = true;
                PolycyclicWord next(w.begin(), w.begin() + i);
                next.insert(next.end(), w.begin() + i + 2, w.end());
                if (seen.insert(next).second) stack.push_back(next);
            }
        }
        if (!reducible) result.insert(w);
    }
    return result;
}

PolycyclicWord random_poly(std::mt19937& rng, int maxlen, int max_index) {
    std::uniform_int_distribution<int> len(0, maxlen);
    std::uniform_int_distribution<int> idx(1, max_index);
    std::uniform_int_distribution<int> sign(0, 1);
    PolycyclicWord w(len(rng));
    for (auto& op : w) op = sign(rng) ? idx(rng) : -idx(rng);
    return w;
}

// Successful figure-3 path labels, parameterized by Equation (1).
bool equation1(long long i, long long j, long long k, long long l, long long m, long long n) {
    return (j >= k && j - k + l == m && i == n) || (j < k && i + k - j == n && l == m);
}

Word triple_word(const Alphabet& marked, long long i, long long j, long long k, long long l,
                 long long m, long long n) {
    const Letter a = marked.at("a"), b = marked.at("b"), h = marked.marker();
    Word w;
    for (int t = 0; t < i; ++t) w.push_back(b);
    for (int t = 0; t < j; ++t) w.push_back(a);
    w.push_back(h);
    for (int t = 0; t < k; ++t) w.push_back(b);
    for (int t = 0; t < l; ++t) w.push_back(a);
    w.push_back(h);
    for (int t = 0; t < m; ++t) w.push_back(a);
    for (int t = 0; t < n; ++t) w.push_back(b);
    return w;
}

}  // namespace

TEST_CASE("reduce: defining relation and nested pairs") {
    CHECK(reduce({+1, -1}).empty());
    CHECK(reduce({+2, +1, -1, -2}).empty());
    CHECK(all_normal_forms({+2, +1, -1, -2}) == std::set<PolycyclicWord>{{}});
    // q1 p1 is irreducible: q1 has no right inverse.
    PolycyclicWord qp = {-1, +1};
    CHECK(reduce(qp) == qp);
    CHECK(!is_identity(qp));
}

TEST_CASE("reduce is confluent on random words") {
    std::mt19937 rng(99);
    for (int trial = 0; trial < 400; ++trial) {
        PolycyclicWord w = random_poly(rng, 12, 3);
        auto nfs = all_normal_forms(w);
        REQUIRE(nfs.size() == 1);
        CHECK(*nfs.begin() == reduce(w));
    }
}

TEST_CASE("identity iff stack simulation succeeds, exhaustive") {
    // All op sequences of length <= 8 over {p1,q1,p2,q2}.
    std::vector<PolycyclicWord> frontier = {{}};
    for (int len = 0; len <= 8; ++len) {
        std::vector<PolycyclicWord> next;
        for (const auto& w : frontier) {
            CHECK(is_identity(w) == stack_sim_identity(w));
            if (len == 8) continue;
            for (PolyOp op : {+1, -1, +2, -2}) {
                PolycyclicWord w2 = w;
                w2.push_back(op);
                next.push_back(std::move(w2));
            }
        }
        frontier = std::move(next);
    }
}

TEST_CASE("poly text round trip") {
    PolycyclicWord w = {+1, -2, +3};
    CHECK(poly_text(w) == "p1 q2 p3");
    CHECK(parse_poly("p1 q2 p3") == w);
    CHECK(parse_poly("@one").empty());
    CHECK(poly_text({}) == "@one");
    CHECK_THROWS(parse_poly("x3"));
    CHECK_THROWS(parse_poly("p0"));
}

TEST_CASE("figure-2 automaton defines a^i b^i") {
    ValenceAutomaton v = figure2_automaton();
    CHECK(defined_language_member(v, parse_word(v.alphabet, "aabb")));
    CHECK(!defined_language_member(v, parse_word(v.alphabet, "aab")));
    CHECK(defined_language_member(v, {}));

    CnfGrammar cnf = to_cnf(to_cfg(v));
    for (const Word& w : all_words(v.alphabet, 12)) {
        size_t half = w.size() / 2;
        bool expect = w.size() % 2 == 0 &&
                      std::all_of(w.begin(), w.begin() + half, [](Letter x) { return x == 0; }) &&
                      std::all_of(w.begin() + half, w.end(), [](Letter x) { return x == 1; });
        CHECK(cyk_member(cnf, w) == expect);
    }
    // Longer words through the bounded language enumeration.
    std::vector<Word> expect;
    for (int i = 0; i <= 10; ++i) {
        Word w;
        for (int t = 0; t < i; ++t) w.push_back(0);
        for (int t = 0; t < i; ++t) w.push_back(1);
        expect.push_back(std::move(w));
    }
    CHECK(cfg_bounded_words(cnf, 20) == expect);
}

TEST_CASE("valence automaton with identity labels degenerates to its NFA") {
    ValenceAutomaton v;
    v.alphabet = Alphabet({"a", "b"});
    int s0 = v.add_state(), s1 = v.add_state();
    v.add_edge(s0, {0}, {}, s0);
    v.add_edge(s0, {}, {}, s1);
    v.add_edge(s1, {1}, {}, s1);
    v.initial = {s0};
    v.final = {s1};
    CnfGrammar cnf = to_cnf(to_cfg(v));
    for (const Word& w : all_words(v.alphabet, 7))
        CHECK(cyk_member(cnf, w) == std::is_sorted(w.begin(), w.end()));
}

TEST_CASE("figure-3 automaton: pinned members and non-members") {
    ValenceAutomaton v = figure3_automaton();
    const Alphabet& m = v.alphabet;
    CnfGrammar cnf = to_cnf(to_cfg(v));
    CHECK(cyk_member(cnf, parse_word(m, "baa#ba#aab")));
    CHECK(cyk_member(cnf, parse_word(m, "b#b#bb")));
    CHECK(cyk_member(cnf, parse_word(m, "a#a#aa")));
    CHECK(cyk_member(cnf, parse_word(m, "##")));
    CHECK(!cyk_member(cnf, parse_word(m, "b#b#b")));
    CHECK(!cyk_member(cnf, parse_word(m, "a#a#a")));
    CHECK(!cyk_member(cnf, parse_word(m, "ab#a#aba")));
}

TEST_CASE("figure-3 automaton matches the two-branch formula") {
    ValenceAutomaton v = figure3_automaton();
    CnfGrammar cnf = to_cnf(to_cfg(v));
    for (long long i = 0; i <= 3; ++i)
        for (long long j = 0; j <= 3; ++j)
            for (long long k = 0; k <= 3; ++k)
                for (long long l = 0; l <= 3; ++l)
                    for (long long m = 0; m <= 3; ++m)
                        for (long long n = 0; n <= 3; ++n) {
                            Word w = triple_word(v.alphabet, i, j, k, l, m, n);
                            CHECK(cyk_member(cnf, w) == equation1(i, j, k, l, m, n));
                        }
}

TEST_CASE("multi-letter valence edges normalize") {
    // One edge reading "ab" with ops p1 p1, one reading "c" with q1 q1.
    ValenceAutomaton v;
    v.alphabet = Alphabet({"a", "b", "c"});
    int s0 = v.add_state(), s1 = v.add_state(), s2 = v.add_state();
    v.add_edge(s0, parse_word(v.alphabet, "ab"), {+1, +1}, s1);
    v.add_edge(s1, parse_word(v.alphabet, "c"), {-1, -1}, s2);
    v.initial = {s0};
    v.final = {s2};
    CnfGrammar cnf = to_cnf(to_cfg(v));
    CHECK(cyk_member(cnf, parse_word(v.alphabet, "abc")));
    for (const Word& w : all_words(v.alphabet, 4))
        CHECK(cyk_member(cnf, w) == (w == parse_word(v.alphabet, "abc")));
}
