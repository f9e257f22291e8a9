/* hyper.hpp -- hyperbolic structures for semigroups: combings, multiplication
 * tables, brute-force table generation and verification, and the
 * structure-transporting constructions (generator change, subsemigroups,
 * adjoined zero/identity, word problems).
 */
#pragma once

#include <optional>

#include "hsg/grammar.hpp"
#include "hsg/oracle.hpp"
#include "hsg/valence.hpp"

namespace hsg {

/// A regular language R over the oracle's generators with R̄ = S. True
/// surjectivity is undecidable, so construction performs a desk-scale check:
/// every element of ball(oracle, n0) must be hit by an R-word of length <= N0.
struct Combing {
    OraclePtr oracle;
    Nfa r;
};
Combing make_combing(OraclePtr oracle, Nfa r, int surjectivity_radius = 6,
                     int surjectivity_maxlen = 12, bool check = true);

/// The table language T over Σ_#, held as a grammar or a valence automaton;
/// all verification routes convert to a grammar.
struct TableLanguage {
    enum class Kind { Cfg, Valence };
    Kind kind = Kind::Cfg;
    Cfg cfg;
    std::optional<ValenceAutomaton> valence;
    std::string provenance;

    static TableLanguage from_cfg(Cfg g, std::string provenance);
    static TableLanguage from_valence(ValenceAutomaton v, std::string provenance);
};

struct HyperbolicStructure {
    Combing combing;
    TableLanguage table;
};

/// All u#v#w^r with u,v,w in L(R), |u|+|v|+|w| <= maxlen and ūv̄ = w̄,
/// in (total length, lex) order.
std::vector<MarkedWord> generate_table(const Combing& c, int maxlen, size_t cap = 1u << 22);

struct Disagreement {
    MarkedWord triple;
    bool in_table = false;
    bool oracle_holds = false;
};

struct VerifyReport {
    int maxlen = 0;
    long long checked = 0;  // number of R-triples in the quantification domain
    std::vector<Disagreement> disagreements;
    bool ok() const { return disagreements.empty(); }
};

/// Compares the table language against the oracle predicate on every R-triple
/// with |u|+|v|+|w| <= maxlen. Implemented by two-sided set comparison: the
/// oracle-generated table versus the bounded enumeration of the table
/// language's words, which keeps large domains (|Σ|^maxlen triples) tractable.
VerifyReport verify_table(const HyperbolicStructure& s, int maxlen, size_t cap = 8u << 20);

/// Transport along a change of generators h with g∘h = f (checked letterwise
/// against both oracles): (hom_image(h, R), apply_transduction(ρ_h, T)).
HyperbolicStructure change_generators(const HyperbolicStructure& s, const FreeHom& h,
                                      OraclePtr target);

/// Pull the ambient free-semigroup table back along the embedding h:
/// combing Σ^+, table = apply_transduction(invert(ρ_h), ambient table).
HyperbolicStructure subsemigroup_structure(const HyperbolicStructure& ambient_free,
                                           const FreeHom& h, OraclePtr sub_oracle);

/// Adjoin a zero generator: combing R + x, table T + R#x#x + x#R#x + x#x#x.
HyperbolicStructure adjoin_zero(const HyperbolicStructure& s, const std::string& letter = "x");

/// Intersect back to the sub-alphabet of the target oracle:
/// R ∩ Σ^+ and T ∩ Σ^+#Σ^+#Σ^+ (Σ^* forms in monoid mode).
HyperbolicStructure restrict_structure(const HyperbolicStructure& s, OraclePtr target);

/// The S^I direction: erase the adjoined identity letter (monoid-mode
/// homomorphic image), then discard empty components.
HyperbolicStructure erase_identity_letter(const HyperbolicStructure& s, OraclePtr target);

/// L = {u#w^r : u,w in R, ū = w̄} up to |u|+|w| <= maxlen, plus an injectivity
/// probe: does R restricted to length <= maxlen hit every element at most once?
struct IdentityPairs {
    std::vector<Word> words;  // over the marked alphabet
    bool injective = true;
};
IdentityPairs identity_pairs_language(const Combing& c, int maxlen, size_t cap = 1u << 22);

/// The semigroup word problem {w#v^r : w,v in Σ^+, w̄ = v̄}, |w|+|v| <= maxlen.
std::vector<Word> word_problem_language(const SemigroupOracle& o, int maxlen,
                                        size_t cap = 1u << 22);

/// W0 = ρ^{-1}(W) for the inclusion given by h (domain Δ^+#Δ^+).
Cfg subsemigroup_word_problem(const Cfg& w, const FreeHom& h);

/// An alphabet with formal inverses: inverse[a] is the letter with
/// ā^{-1} = \overline{inverse[a]}; the map is an involution.
struct InvolutiveAlphabet {
    Alphabet alphabet;
    std::vector<Letter> inverse;
};
InvolutiveAlphabet involutive_alphabet(const std::vector<std::pair<std::string, std::string>>& pairs);

/// From the standard group word problem V ⊆ Σ^* to the semigroup word problem
/// W = ρ(h^{-1}(V) ∩ Σ^+#Σ^+) with ρ = (I)(#,#)(τ), τ(w) = (w^{-1})^r.
Cfg group_wp_to_semigroup(const Cfg& v, const InvolutiveAlphabet& sigma);

/// Back from the semigroup word problem: V = ε + {w : w#w1^r in W}.
Cfg semigroup_wp_to_group(const Cfg& w, const Word& w1,
                          const SemigroupOracle* check_identity = nullptr);

}  // namespace hsg
