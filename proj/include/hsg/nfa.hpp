/* nfa.hpp -- nondeterministic finite automata and rational expressions over a
 * free monoid, with the boolean and (inverse-)homomorphic closure operations.
 */
#pragma once

#include <memory>
#include <string>
#include <vector>

#include "hsg/words.hpp"

namespace hsg {

/// Edge label: a letter id, or kEpsilonLabel for the empty word.
inline constexpr Letter kEpsilonLabel = -1;

struct NfaEdge {
    int from = 0;
    Letter label = kEpsilonLabel;
    int to = 0;
};

struct Nfa {
    Alphabet alphabet;
    int num_states = 0;
    std::vector<NfaEdge> edges;
    std::vector<int> initial;
    std::vector<int> final;

    int add_state() { return num_states++; }
    void add_edge(int from, Letter label, int to) { edges.push_back({from, label, to}); }
};

// Basic constructors.
Nfa nfa_empty(const Alphabet& alphabet);
Nfa nfa_epsilon(const Alphabet& alphabet);
Nfa nfa_letter(const Alphabet& alphabet, Letter a);
Nfa nfa_word(const Alphabet& alphabet, const Word& w);
Nfa sigma_star(const Alphabet& alphabet);
Nfa sigma_plus(const Alphabet& alphabet);
/// Words over `marked` with exactly two markers and components in Σ^+ (or Σ^*
/// when nonempty_components is false).
Nfa marked_shape(const Alphabet& marked, bool nonempty_components);
/// One-marker variant: Σ^+#Σ^+ (or Σ^*#Σ^*).
Nfa marked_pair_shape(const Alphabet& marked, bool nonempty_components);

// Rational operations. Binary operations require equal alphabets.
Nfa union_nfa(const Nfa& a, const Nfa& b);
Nfa concat(const Nfa& a, const Nfa& b);
Nfa star(const Nfa& a);
Nfa plus(const Nfa& a);
Nfa intersect(const Nfa& a, const Nfa& b);
Nfa complement(const Nfa& a);

/// Equivalent ε-free automaton.
Nfa remove_epsilon(const Nfa& a);
/// Subset construction; result has one initial state and no ε edges.
Nfa determinize(const Nfa& a);
/// Drops states that are not both reachable and co-reachable.
Nfa trim(const Nfa& a);

Nfa hom_image(const FreeHom& h, const Nfa& a);
Nfa hom_preimage(const FreeHom& h, const Nfa& a);
/// Reinterpret an automaton over a prefix sub-alphabet; every edge label must
/// fall inside the smaller alphabet (intersect with sigma_star first).
Nfa restrict_alphabet(const Nfa& a, const Alphabet& smaller);
/// The same automaton over an extended alphabet that keeps old letter ids.
Nfa extend_alphabet(const Nfa& a, const Alphabet& bigger);
/// Re-index labels by token name into another alphabet (all must exist there).
Nfa remap_labels(const Nfa& a, const Alphabet& target);

bool member(const Nfa& a, const Word& w);
bool is_empty(const Nfa& a);

/// All accepted words of length <= maxlen, ordered by (length, lex).
std::vector<Word> bounded_words(const Nfa& a, int maxlen, size_t cap = 1u << 22);
bool bounded_equal(const Nfa& a, const Nfa& b, int maxlen);

/// Rational expressions: ∅, ε, letters, union, concatenation, star, plus.
struct RatExpr {
    enum class Kind { Empty, Epsilon, Letter, Union, Concat, Star, Plus };
    Kind kind = Kind::Empty;
    std::string letter;
    std::vector<RatExpr> children;

    static RatExpr empty();
    static RatExpr epsilon();
    static RatExpr lit(std::string token);
    static RatExpr alt(RatExpr a, RatExpr b);
    static RatExpr seq(RatExpr a, RatExpr b);
    static RatExpr star_of(RatExpr a);
    static RatExpr plus_of(RatExpr a);
};

/// Text grammar: union '+', postfix '*', parentheses, @eps, @empty;
/// juxtaposition is concatenation and letters are whitespace-separated tokens
/// (single characters may be run together when no letter is multi-character).
RatExpr parse_ratexpr(const std::string& text);
Nfa compile(const RatExpr& e, const Alphabet& alphabet);
Nfa compile(const std::string& expr_text, const Alphabet& alphabet);

}  // namespace hsg
