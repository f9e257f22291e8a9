#include "doctest.h"

#include "hsg/transducer.hpp"

using namespace hsg;

namespace {

std::vector<Word> all_words(const Alphabet& alphabet, int maxlen) {
    std::vector<Word> out = {{}};
    size_t begin = 0;
    for (int len = 1; len <= maxlen; ++len) {
        size_t end = out.size();
        for (size_t i = begin; i < end; ++i)
            for (Letter x = 0; x < alphabet.size(); ++x) {
                Word w = out[i];
                w.push_back(x);
                out.push_back(std::move(w));
            }
        begin = end;
    }
    return out;
}

// Direct computation of τ_h, the independent route.
Word tau_direct(const FreeHom& h, const Word& x) { return reverse(h.apply(reverse(x))); }

}  // namespace

TEST_CASE("tau_of_hom agrees with h(x^r)^r on all short words") {
    Alphabet ab({"a", "b"});
    Alphabet ac({"a", "c"});
    FreeHom h = FreeHom::from_map(ab, ac, {{"a", "ac"}, {"b", "ca"}});
    Transducer tau = tau_of_hom(h);
    for (const Word& x : all_words(ab, 8)) {
        auto images = image_of_word(tau, x, 32);
        if (x.empty()) {
            CHECK(images.empty());  // domain is Σ^+
        } else {
            REQUIRE(images.size() == 1);
            CHECK(images[0] == tau_direct(h, x));
        }
    }
}

TEST_CASE("tau examples") {
    Alphabet ab({"a", "b"});
    FreeHom id = FreeHom::identity(ab);
    CHECK(image_of_word(tau_of_hom(id), parse_word(ab, "ab"), 8) ==
          std::vector<Word>{parse_word(ab, "ab")});

    Alphabet ac({"a", "c"});
    FreeHom h = FreeHom::from_map(ab, ac, {{"a", "ac"}, {"b", "ca"}});
    CHECK(image_of_word(tau_of_hom(h), parse_word(ab, "ab"), 8) ==
          std::vector<Word>{parse_word(ac, "caac")});
    // A single letter forces h(a)^r.
    CHECK(image_of_word(tau_of_hom(h), parse_word(ab, "a"), 8) ==
          std::vector<Word>{reverse(h.image(ab.at("a")))});
}

TEST_CASE("from_pairs builds letterwise and staged relations") {
    Alphabet ab({"a", "b"});
    // (Σ_a (a,a))^+ relates each word to itself.
    PairExpr letters = PairExpr::alt(PairExpr::pair({0}, {0}), PairExpr::pair({1}, {1}));
    Transducer ident = from_pairs(PairExpr::plus_of(letters), ab, ab);
    CHECK(relates(ident, parse_word(ab, "ab"), parse_word(ab, "ab")));
    CHECK(!relates(ident, parse_word(ab, "ab"), parse_word(ab, "ba")));

    // (a,p1)^* (b,q1)^* relates a^i b^j to p1^i q1^j.
    Alphabet pq({"p1", "q1"});
    PairExpr expr = PairExpr::seq(PairExpr::star_of(PairExpr::pair({0}, {pq.at("p1")})),
                                  PairExpr::star_of(PairExpr::pair({1}, {pq.at("q1")})));
    Transducer staged = from_pairs(expr, ab, pq);
    CHECK(relates(staged, parse_word(ab, "aabb"), parse_word(pq, "p1 p1 q1 q1")));
    CHECK(relates(staged, {}, {}));
    CHECK(!relates(staged, parse_word(ab, "ba"), parse_word(pq, "q1 p1")));
    for (const Word& x : all_words(ab, 5)) {
        auto images = image_of_word(staged, x, 8);
        bool sorted = std::is_sorted(x.begin(), x.end());
        CHECK(images.size() == (sorted ? 1u : 0u));
    }
}

TEST_CASE("generator_change_rho formula on an expanding hom") {
    Alphabet a({"a"});
    Alphabet ab({"a", "b"});
    FreeHom h = FreeHom::from_map(a, ab, {{"a", "ab"}});
    Transducer rho = generator_change_rho(h);
    Alphabet in_m = a.with_marker(), out_m = ab.with_marker();

    CHECK(image_of_word(rho, parse_word(in_m, "a#a#a"), 16) ==
          std::vector<Word>{parse_word(out_m, "ab#ab#ba")});
    CHECK(image_of_word(rho, parse_word(in_m, "a#a"), 16).empty());

    // Exhaustive domain/formula check on all inputs of length <= 6.
    for (const Word& x : all_words(in_m, 6)) {
        auto images = image_of_word(rho, x, 40);
        int markers = static_cast<int>(std::count(x.begin(), x.end(), in_m.marker()));
        bool in_domain = false;
        MarkedWord t;
        if (markers == 2) {
            t = unmark(in_m, x);
            in_domain = !t.u.empty() && !t.v.empty() && !t.w.empty();
        }
        if (!in_domain) {
            CHECK(images.empty());
        } else {
            REQUIRE(images.size() == 1);
            MarkedWord expect{h.apply(t.u), h.apply(t.v), h.apply(t.w)};
            CHECK(images[0] == mark(out_m, expect));
        }
    }
}

TEST_CASE("generator_change_rho identity is the identity on the marked shape") {
    Alphabet ab({"a", "b"});
    FreeHom id = FreeHom::identity(ab);
    Transducer rho = generator_change_rho(id);
    Alphabet marked = ab.with_marker();
    for (const Word& x : all_words(marked, 6)) {
        auto images = image_of_word(rho, x, 12);
        int markers = static_cast<int>(std::count(x.begin(), x.end(), marked.marker()));
        bool in_domain = false;
        if (markers == 2) {
            MarkedWord t = unmark(marked, x);
            in_domain = !t.u.empty() && !t.v.empty() && !t.w.empty();
        }
        if (in_domain) {
            REQUIRE(images.size() == 1);
            CHECK(images[0] == x);
        } else {
            CHECK(images.empty());
        }
    }
}

TEST_CASE("wp_rho formula") {
    Alphabet uv({"u", "v"});
    Alphabet abc({"a", "b", "c"});
    FreeHom h = FreeHom::from_map(uv, abc, {{"u", "c"}, {"v", "ac"}});
    Transducer rho = wp_rho(h);
    Alphabet in_m = uv.with_marker(), out_m = abc.with_marker();
    CHECK(image_of_word(rho, parse_word(in_m, "u#v"), 16) ==
          std::vector<Word>{parse_word(out_m, "c#ca")});
    CHECK(image_of_word(rho, parse_word(in_m, "uv"), 16).empty());

    FreeHom id = FreeHom::identity(uv);
    Transducer rho_id = wp_rho(id);
    CHECK(image_of_word(rho_id, parse_word(in_m, "uv#vu"), 16) ==
          std::vector<Word>{parse_word(in_m, "uv#vu")});

    // ρ(x#y^r) = h(x)#h(y)^r on all inputs of length <= 6.
    for (const Word& x : all_words(in_m, 6)) {
        auto images = image_of_word(rho, x, 40);
        int markers = static_cast<int>(std::count(x.begin(), x.end(), in_m.marker()));
        bool in_domain = false;
        Word left, tail;
        if (markers == 1) {
            auto cut = std::find(x.begin(), x.end(), in_m.marker());
            left.assign(x.begin(), cut);
            tail.assign(cut + 1, x.end());
            in_domain = !left.empty() && !tail.empty();
        }
        if (!in_domain) {
            CHECK(images.empty());
        } else {
            REQUIRE(images.size() == 1);
            Word expect = h.apply(left);
            expect.push_back(out_m.marker());
            Word img_tail = reverse(h.apply(reverse(tail)));
            expect.insert(expect.end(), img_tail.begin(), img_tail.end());
            CHECK(images[0] == expect);
        }
    }
}

TEST_CASE("invert is an involution on bounded words") {
    Alphabet ab({"a", "b"});
    Alphabet ac({"a", "c"});
    FreeHom h = FreeHom::from_map(ab, ac, {{"a", "ac"}, {"b", "c"}});
    Transducer t = tau_of_hom(h);
    Transducer tt = invert(invert(t));
    for (const Word& x : all_words(ab, 6))
        CHECK(image_of_word(t, x, 16) == image_of_word(tt, x, 16));
    // invert swaps the relation: τ(ab) = (h(b)h(a))^r = (c ac)^r = cac.
    Transducer ti = invert(t);
    CHECK(relates(t, parse_word(ab, "ab"), parse_word(ac, "cac")));
    CHECK(relates(ti, parse_word(ac, "cac"), parse_word(ab, "ab")));
}

TEST_CASE("compose chains relations") {
    Alphabet ab({"a", "b"});
    Alphabet cd({"c", "d"});
    Alphabet ef({"e", "f"});
    FreeHom h1 = FreeHom::from_map(ab, cd, {{"a", "cd"}, {"b", "d"}});
    FreeHom h2 = FreeHom::from_map(cd, ef, {{"c", "fe"}, {"d", "e"}});
    Transducer t1 = hom_transducer(h1), t2 = hom_transducer(h2);
    Transducer t12 = compose(t1, t2);
    for (const Word& x : all_words(ab, 5)) {
        auto images = image_of_word(t12, x, 24);
        if (x.empty()) {
            CHECK(images.empty());
        } else {
            REQUIRE(images.size() == 1);
            CHECK(images[0] == h2.apply(h1.apply(x)));
        }
    }
}

TEST_CASE("apply_to_regular examples") {
    Alphabet ab({"a", "b"});
    Transducer ident = t_identity(ab);
    Nfa r = compile("a* b*", ab);
    CHECK(bounded_equal(apply_to_regular(ident, r), r, 6));

    // Letter renaming a->p1, b->q1 carries a*b* to p1*q1*.
    Alphabet pq({"p1", "q1"});
    FreeHom rename = FreeHom::from_map(ab, pq, {{"a", "p1"}, {"b", "q1"}});
    Nfa image = apply_to_regular(hom_transducer(rename, /*include_empty=*/true), r);
    CHECK(bounded_equal(image, compile("p1* q1*", pq), 6));
}

TEST_CASE("image of a regular language equals bounded relation enumeration") {
    Alphabet ab({"a", "b"});
    Alphabet ac({"a", "c"});
    FreeHom h = FreeHom::from_map(ab, ac, {{"a", "ac"}, {"b", "ca"}});
    Transducer tau = tau_of_hom(h);
    Nfa r = compile("a (a + b)*", ab);
    Nfa image = apply_to_regular(tau, r);
    // Oracle route: enumerate inputs, apply the direct formula.
    std::vector<Word> expected;
    for (const Word& x : bounded_words(r, 3)) expected.push_back(reverse(h.apply(reverse(x))));
    std::sort(expected.begin(), expected.end(), [](const Word& p, const Word& q) {
        if (p.size() != q.size()) return p.size() < q.size();
        return p < q;
    });
    expected.erase(std::unique(expected.begin(), expected.end()), expected.end());
    CHECK(bounded_words(image, 6) == expected);
}
