/* grammar.hpp -- context-free grammars: CNF conversion, CYK membership,
 * emptiness, the per-nonterminal shortest-word bound k, and CFL closure under
 * regular intersection, homomorphism, inverse homomorphism, and rational
 * transduction.
 */
#pragma once

#include <string>
#include <vector>

#include "hsg/nfa.hpp"
#include "hsg/transducer.hpp"
#include "hsg/words.hpp"

namespace hsg {

struct CfgSymbol {
    bool is_terminal = false;
    int id = 0;

    static CfgSymbol terminal(int id) { return {true, id}; }
    static CfgSymbol nonterminal(int id) { return {false, id}; }
    bool operator==(const CfgSymbol& o) const {
        return is_terminal == o.is_terminal && id == o.id;
    }
};

struct CfgProduction {
    int head = 0;
    std::vector<CfgSymbol> body;  // empty body = ε-production
};

struct Cfg {
    Alphabet terminals;
    std::vector<std::string> nonterminals;
    std::vector<CfgProduction> productions;
    int start = 0;

    int add_nonterminal(std::string name) {
        nonterminals.push_back(std::move(name));
        return static_cast<int>(nonterminals.size()) - 1;
    }
    void add_production(int head, std::vector<CfgSymbol> body) {
        productions.push_back({head, std::move(body)});
    }
};

/// Chomsky normal form: every production is A→BC or A→a; the empty word is
/// carried by an explicit flag rather than an ε-production.
struct CnfGrammar {
    Alphabet terminals;
    std::vector<std::string> nonterminals;
    std::vector<std::array<int, 3>> binary;        // {A, B, C} for A→BC
    std::vector<std::pair<int, Letter>> lexical;   // {A, a} for A→a
    int start = 0;
    bool accepts_epsilon = false;
};

/// ε-productions (tracking the start flag), then unit productions, then
/// useless symbols, then terminal lifting and body binarization.
CnfGrammar to_cnf(const Cfg& g);
Cfg cnf_to_cfg(const CnfGrammar& g);

bool cyk_member(const CnfGrammar& g, const Word& w);

/// max over nonterminals of the shortest derivable terminal word length,
/// with one shortest (lexicographically least) witness per nonterminal.
struct NonterminalBound {
    int k = 0;
    std::vector<Word> witnesses;  // indexed by nonterminal
};
NonterminalBound nonterminal_bound_k(const CnfGrammar& g);

/// Drops nonterminals that are not both generating and reachable.
Cfg trim(const Cfg& g);
bool is_empty_cfg(const Cfg& g);

Cfg union_cfg(const Cfg& a, const Cfg& b);
/// Right-linear embedding of a regular language.
Cfg cfg_from_nfa(const Nfa& a);
/// The single-word (or empty-word) grammar.
Cfg cfg_word(const Alphabet& alphabet, const Word& w);

/// Bar-Hillel triple construction (the automaton is ε-eliminated and given a
/// single initial state first).
Cfg intersect_regular(const Cfg& g, const Nfa& a);

Cfg hom_image_cfg(const FreeHom& h, const Cfg& g);
Cfg hom_preimage_cfg(const FreeHom& h, const Cfg& g);

/// Nivat-style factorization over the transducer's edge coding:
/// hom_image ∘ intersect_regular ∘ hom_preimage.
Cfg apply_transduction(const Transducer& t, const Cfg& g);

/// Reinterpret over a prefix sub-alphabet (all terminals must fit) or over an
/// extension that keeps old letter ids.
Cfg restrict_terminals(const Cfg& g, const Alphabet& smaller);
Cfg extend_terminals(const Cfg& g, const Alphabet& bigger);
/// Re-index terminals by token name into another alphabet.
Cfg remap_terminals(const Cfg& g, const Alphabet& target);

/// All words of the language with length <= maxlen, ordered by (length, lex).
std::vector<Word> cfg_bounded_words(const CnfGrammar& g, int maxlen,
                                    size_t cap = 8u << 20);

/// Text format: one production per line, "A -> a B | b"; the first head is
/// the start symbol; heads are the nonterminals, all other tokens terminals.
Cfg parse_cfg(const std::string& text);
std::string cfg_text(const Cfg& g);

}  // namespace hsg
