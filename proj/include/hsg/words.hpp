/* words.hpp -- alphabets, words, the marker symbol, free-monoid homomorphisms.
 */
#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace hsg {

/// Letters are indices into an Alphabet; a Word is a sequence of them.
using Letter = int;
using Word = std::vector<Letter>;

inline constexpr const char* kMarkerToken = "#";
inline constexpr const char* kEpsilonToken = "@eps";

/// An ordered finite set of distinct printable tokens. Tokens may be longer
/// than one character ("a^{-1}" is a single letter). The marker "#" is
/// reserved and rejected here; with_marker() appends it as the last letter,
/// so letter ids over the base alphabet stay valid over the marked one.
class Alphabet {
public:
    Alphabet() = default;
    explicit Alphabet(std::vector<std::string> letters);

    int size() const { return static_cast<int>(letters_.size()); }
    const std::string& name(Letter a) const { return letters_.at(a); }
    const std::vector<std::string>& letters() const { return letters_; }

    std::optional<Letter> find(const std::string& token) const;
    Letter at(const std::string& token) const;
    bool contains(const std::string& token) const { return find(token).has_value(); }

    bool has_marker() const;
    Letter marker() const;
    Alphabet with_marker() const;
    /// The alphabet without its trailing marker.
    Alphabet without_marker() const;
    /// Appends a fresh letter (used when adjoining a zero/identity generator).
    Alphabet with_letter(const std::string& token) const;

    bool any_multichar() const;

    bool operator==(const Alphabet& other) const { return letters_ == other.letters_; }
    bool operator!=(const Alphabet& other) const { return !(*this == other); }

private:
    std::vector<std::string> letters_;
    std::unordered_map<std::string, Letter> index_;

    void build_index();
    static Alphabet unchecked(std::vector<std::string> letters);
};

Word reverse(Word w);
Word concat(const Word& x, const Word& y);

/// Text form: tokens joined by spaces when the alphabet has multi-character
/// letters, concatenated characters otherwise; the empty word prints as @eps.
std::string word_text(const Alphabet& alphabet, const Word& w);
Word parse_word(const Alphabet& alphabet, const std::string& text);

/// A triple (u, v, w) of marker-free words, serialized as u#v#reverse(w).
struct MarkedWord {
    Word u, v, w;
    bool operator==(const MarkedWord& o) const { return u == o.u && v == o.v && w == o.w; }
};

/// Serialize over the marked alphabet. u, v, w keep their base-alphabet ids.
Word mark(const Alphabet& marked, const MarkedWord& t);
/// Inverse of mark(); rejects words that do not contain exactly two markers.
MarkedWord unmark(const Alphabet& marked, const Word& serialized);

/// A homomorphism between free semigroups (or monoids when monoid_mode is
/// set, in which case letters may map to the empty word).
class FreeHom {
public:
    FreeHom(Alphabet source, Alphabet target, std::vector<Word> images, bool monoid_mode = false);

    const Alphabet& source() const { return source_; }
    const Alphabet& target() const { return target_; }
    bool monoid_mode() const { return monoid_mode_; }
    const Word& image(Letter a) const { return images_.at(a); }

    Word apply(const Word& w) const;

    static FreeHom identity(const Alphabet& alphabet);
    /// Build from token-level images, e.g. {{"a","ac"},{"b","ca"}}.
    static FreeHom from_map(const Alphabet& source, const Alphabet& target,
                            const std::vector<std::pair<std::string, std::string>>& images,
                            bool monoid_mode = false);

private:
    Alphabet source_;
    Alphabet target_;
    std::vector<Word> images_;
    bool monoid_mode_ = false;
};

}  // namespace hsg
