/* transducer.hpp -- rational transductions between free monoids, realized as
 * finite automata over Σ*×Δ*. Edge labels carry whole words on both tapes;
 * normalization to letter-or-ε per tape happens inside compose/apply.
 */
#pragma once

#include "hsg/nfa.hpp"
#include "hsg/words.hpp"

namespace hsg {

struct TransducerEdge {
    int from = 0;
    Word in;
    Word out;
    int to = 0;
};

struct Transducer {
    Alphabet in_alphabet;
    Alphabet out_alphabet;
    int num_states = 0;
    std::vector<TransducerEdge> edges;
    std::vector<int> initial;
    std::vector<int> final;

    int add_state() { return num_states++; }
    void add_edge(int from, Word in, Word out, int to) {
        edges.push_back({from, std::move(in), std::move(out), to});
    }
};

// Rational-relation constructors and combinators.
Transducer t_empty(const Alphabet& in, const Alphabet& out);
Transducer t_pair(const Alphabet& in, const Alphabet& out, const Word& u, const Word& v);
Transducer t_union(const Transducer& a, const Transducer& b);
Transducer t_concat(const Transducer& a, const Transducer& b);
Transducer t_star(const Transducer& a);
Transducer t_plus(const Transducer& a);
/// The identity relation on Σ* (or Σ^+).
Transducer t_identity(const Alphabet& alphabet, bool include_empty = true);

/// Expressions over pairs of words, mirroring RatExpr.
struct PairExpr {
    enum class Kind { Empty, Pair, Union, Concat, Star, Plus };
    Kind kind = Kind::Empty;
    Word in, out;
    std::vector<PairExpr> children;

    static PairExpr empty();
    static PairExpr pair(Word in, Word out);
    static PairExpr alt(PairExpr a, PairExpr b);
    static PairExpr seq(PairExpr a, PairExpr b);
    static PairExpr star_of(PairExpr a);
    static PairExpr plus_of(PairExpr a);
};
Transducer from_pairs(const PairExpr& e, const Alphabet& in, const Alphabet& out);

/// Letterwise graph of a homomorphism: (Σ_a (a, h(a)))^+, with ε admitted
/// when include_empty is set.
Transducer hom_transducer(const FreeHom& h, bool include_empty = false);

/// τ_h(x) = reverse(h(reverse(x))), with graph (Σ_a (a, h(a)^r))^+ (or its
/// star when include_empty is set).
Transducer tau_of_hom(const FreeHom& h, bool include_empty = false);

/// ρ = (h)(#,#)(h)(#,#)(τ_h): partial function with domain Σ^+#Σ^+#Σ^+ and
/// ρ(u#v#w^r) = h(u)#h(v)#h(w)^r, over the marked alphabets. With
/// monoid_domain the factors are starred, extending the domain to Σ^*
/// components for tables over free monoids.
Transducer generator_change_rho(const FreeHom& h, bool monoid_domain = false);

/// ρ = (h)(#,#)(τ_h): domain Σ^+#Σ^+, ρ(x#y^r) = h(x)#h(y)^r.
Transducer wp_rho(const FreeHom& h);

/// Every edge carries at most one letter per tape afterwards.
Transducer normalize_letters(const Transducer& t);
Transducer invert(const Transducer& t);
Transducer compose(const Transducer& first, const Transducer& second);

bool relates(const Transducer& t, const Word& x, const Word& y);
/// {y : ∃x ∈ L(a), (x,y) ∈ t}.
Nfa apply_to_regular(const Transducer& t, const Nfa& a);
/// Output words for a single input, cut off at maxlen.
std::vector<Word> image_of_word(const Transducer& t, const Word& x, int maxlen);

}  // namespace hsg
