/* oracle.hpp -- ground-truth semigroup arithmetic for the worked examples:
 * evaluation of words to canonical elements, balls, and minimal combing
 * representatives. Elements are canonical serializations, so maps and sets
 * are deterministic across runs.
 */
#pragma once

#include <map>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "hsg/nfa.hpp"
#include "hsg/words.hpp"

namespace hsg {

using Element = std::string;

class SemigroupOracle {
public:
    virtual ~SemigroupOracle() = default;

    virtual const Alphabet& alphabet() const = 0;
    virtual bool monoid_mode() const { return false; }
    virtual Element generator(Letter a) const = 0;
    virtual Element product(const Element& x, const Element& y) const = 0;
    virtual Element identity() const;

    /// Homomorphic fold; ε evaluates to the identity in monoid mode and is
    /// rejected otherwise.
    virtual Element evaluate(const Word& w) const;
};

using OraclePtr = std::shared_ptr<const SemigroupOracle>;

/// Explicit multiplication table over at most 64 elements; associativity and
/// closure are verified at construction.
class FiniteOracle : public SemigroupOracle {
public:
    FiniteOracle(Alphabet alphabet, std::vector<std::string> elements,
                 std::vector<std::vector<int>> table, std::vector<int> generator_map,
                 int identity_index = -1);

    const Alphabet& alphabet() const override { return alphabet_; }
    bool monoid_mode() const override { return identity_index_ >= 0; }
    Element generator(Letter a) const override { return elements_.at(generator_map_.at(a)); }
    Element product(const Element& x, const Element& y) const override;
    Element identity() const override;

    const std::vector<std::string>& elements() const { return elements_; }
    const std::vector<std::vector<int>>& table() const { return table_; }
    const std::vector<int>& generator_map() const { return generator_map_; }
    int identity_index() const { return identity_index_; }

private:
    Alphabet alphabet_;
    std::vector<std::string> elements_;
    std::vector<std::vector<int>> table_;
    std::vector<int> generator_map_;
    std::unordered_map<std::string, int> index_;
    int identity_index_;
};

/// The free semigroup on its alphabet; an element is the word itself.
class FreeOracle : public SemigroupOracle {
public:
    explicit FreeOracle(Alphabet alphabet) : alphabet_(std::move(alphabet)) {}
    const Alphabet& alphabet() const override { return alphabet_; }
    Element generator(Letter a) const override { return alphabet_.name(a); }
    Element product(const Element& x, const Element& y) const override;

private:
    Alphabet alphabet_;
};

/// The bicyclic monoid ⟨a,b | ab = 1⟩; elements are normal forms b^i a^j,
/// serialized "i,j".
class BicyclicOracle : public SemigroupOracle {
public:
    explicit BicyclicOracle(Alphabet alphabet = Alphabet({"a", "b"}));
    const Alphabet& alphabet() const override { return alphabet_; }
    bool monoid_mode() const override { return true; }
    Element generator(Letter a) const override;
    Element product(const Element& x, const Element& y) const override;
    Element identity() const override { return "0,0"; }
    Element evaluate(const Word& w) const override;

    static std::pair<long long, long long> parse(const Element& e);
    static Element print(long long i, long long j);

private:
    Alphabet alphabet_;  // letter 0 acts as a (0,1), letter 1 as b (1,0)
};

/// The free commutative semigroup on {a, b}; elements are letter-count pairs.
class FreeCommutativeOracle : public SemigroupOracle {
public:
    explicit FreeCommutativeOracle(Alphabet alphabet = Alphabet({"a", "b"}));
    const Alphabet& alphabet() const override { return alphabet_; }
    Element generator(Letter a) const override;
    Element product(const Element& x, const Element& y) const override;

private:
    Alphabet alphabet_;
};

/// Normal forms of a user-supplied confluent, terminating rewriting system.
/// The working alphabet may extend the generator alphabet (images of rules
/// can leave the generators, as in subsemigroup presentations).
class RewritingOracle : public SemigroupOracle {
public:
    RewritingOracle(Alphabet generators, Alphabet working,
                    std::vector<std::pair<Word, Word>> rules, bool monoid = false,
                    size_t step_budget = 1u << 20);

    const Alphabet& alphabet() const override { return generators_; }
    bool monoid_mode() const override { return monoid_; }
    Element generator(Letter a) const override;
    Element product(const Element& x, const Element& y) const override;
    Element identity() const override;

    const Alphabet& working_alphabet() const { return working_; }
    const std::vector<std::pair<Word, Word>>& rules() const { return rules_; }
    Word normal_form(Word w) const;
    /// Rewrites with randomized position choices; for confluence spot-checks.
    Word normal_form_random(Word w, unsigned seed) const;

private:
    Alphabet generators_;
    Alphabet working_;
    std::vector<std::pair<Word, Word>> rules_;
    bool monoid_;
    size_t step_budget_;
};

/// Wraps an oracle, adjoining a fresh zero or identity generator.
class AdjoinedOracle : public SemigroupOracle {
public:
    enum class Mode { Zero, Identity };
    AdjoinedOracle(OraclePtr inner, Mode mode, const std::string& letter = "x");

    const Alphabet& alphabet() const override { return alphabet_; }
    bool monoid_mode() const override;
    Element generator(Letter a) const override;
    Element product(const Element& x, const Element& y) const override;
    Element identity() const override;

    const OraclePtr& inner() const { return inner_; }
    Mode mode() const { return mode_; }
    const std::string& letter() const { return letter_; }

private:
    OraclePtr inner_;
    Mode mode_;
    std::string letter_;
    Alphabet alphabet_;
    Element adjoined_element() const;
};

struct BallEntry {
    Element element;
    int min_length = 0;
    Word witness;
};

/// Elements representable by words of length <= radius, each with its minimal
/// representing length and lexicographically least witness of that length.
std::vector<BallEntry> ball(const SemigroupOracle& o, int radius, size_t cap = 1u << 20);

struct CombingWitness {
    int length = 0;
    Word word;
};

/// For every element hit by an R-word of length <= maxlen, the minimal such
/// length and one lexicographically least witness (BFS over the product of
/// R's determinized state space with oracle elements).
std::map<Element, CombingWitness> minimal_combing_words(const SemigroupOracle& o, const Nfa& r,
                                                        int maxlen, size_t cap = 1u << 20);

/// Every R-word of length <= maxlen with its element, in (length, lex) order,
/// grouped by element.
struct CombingWords {
    std::vector<Word> words;
    std::vector<Element> elements;
    std::unordered_map<Element, std::vector<int>> by_element;  // indices into words
};
CombingWords combing_words_by_element(const SemigroupOracle& o, const Nfa& r, int maxlen,
                                      size_t cap = 1u << 22);

}  // namespace hsg
