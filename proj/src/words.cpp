#include "hsg/words.hpp"

#include <algorithm>
#include <sstream>

namespace hsg {

void Alphabet::build_index() {
    index_.clear();
    for (int i = 0; i < static_cast<int>(letters_.size()); ++i) {
        if (letters_[i].empty())
            throw std::invalid_argument("alphabet letter must be a nonempty token");
        if (!index_.emplace(letters_[i], i).second)
            throw std::invalid_argument("duplicate alphabet letter: " + letters_[i]);
    }
}

Alphabet::Alphabet(std::vector<std::string> letters) : letters_(std::move(letters)) {
    for (const auto& tok : letters_) {
        if (tok == kMarkerToken)
            throw std::invalid_argument("the marker # is reserved; use with_marker()");
        if (tok == kEpsilonToken)
            throw std::invalid_argument("@eps is reserved for the empty word");
    }
    build_index();
}

Alphabet Alphabet::unchecked(std::vector<std::string> letters) {
    Alphabet a;
    a.letters_ = std::move(letters);
    a.build_index();
    return a;
}

std::optional<Letter> Alphabet::find(const std::string& token) const {
    auto it = index_.find(token);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

Letter Alphabet::at(const std::string& token) const {
    auto l = find(token);
    if (!l) throw std::out_of_range("letter not in alphabet: " + token);
    return *l;
}

bool Alphabet::has_marker() const {
    return !letters_.empty() && letters_.back() == kMarkerToken;
}

Letter Alphabet::marker() const {
    if (!has_marker()) throw std::logic_error("alphabet has no marker; call with_marker()");
    return size() - 1;
}

Alphabet Alphabet::with_marker() const {
    if (has_marker()) return *this;
    auto ls = letters_;
    ls.push_back(kMarkerToken);
    return unchecked(std::move(ls));
}

Alphabet Alphabet::without_marker() const {
    if (!has_marker()) return *this;
    auto ls = letters_;
    ls.pop_back();
    return unchecked(std::move(ls));
}

Alphabet Alphabet::with_letter(const std::string& token) const {
    if (has_marker())
        throw std::logic_error("extend the base alphabet before adding the marker");
    if (contains(token))
        throw std::invalid_argument("letter already present: " + token);
    auto ls = letters_;
    ls.push_back(token);
    return Alphabet(std::move(ls));
}

bool Alphabet::any_multichar() const {
    return std::any_of(letters_.begin(), letters_.end(),
                       [](const std::string& s) { return s.size() > 1; });
}

Word reverse(Word w) {
    std::reverse(w.begin(), w.end());
    return w;
}

Word concat(const Word& x, const Word& y) {
    Word r;
    r.reserve(x.size() + y.size());
    r.insert(r.end(), x.begin(), x.end());
    r.insert(r.end(), y.begin(), y.end());
    return r;
}

std::string word_text(const Alphabet& alphabet, const Word& w) {
    if (w.empty()) return kEpsilonToken;
    std::string out;
    const bool spaced = alphabet.any_multichar();
    for (size_t i = 0; i < w.size(); ++i) {
        if (spaced && i > 0) out += ' ';
        out += alphabet.name(w[i]);
    }
    return out;
}

Word parse_word(const Alphabet& alphabet, const std::string& text) {
    if (text == kEpsilonToken) return {};
    std::vector<std::string> tokens;
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) tokens.push_back(tok);
    if (tokens.empty()) return {};
    Word w;
    if (tokens.size() == 1 && !alphabet.contains(tokens[0])) {
        // Compact form: split into characters.
        for (char c : tokens[0]) w.push_back(alphabet.at(std::string(1, c)));
        return w;
    }
    for (const auto& t : tokens) {
        if (t == kEpsilonToken)
            throw std::invalid_argument("@eps may only appear alone");
        w.push_back(alphabet.at(t));
    }
    return w;
}

Word mark(const Alphabet& marked, const MarkedWord& t) {
    const Letter m = marked.marker();
    for (const Word* part : {&t.u, &t.v, &t.w})
        for (Letter a : *part)
            if (a == m) throw std::invalid_argument("marked-word components must be #-free");
    Word out = t.u;
    out.push_back(m);
    out.insert(out.end(), t.v.begin(), t.v.end());
    out.push_back(m);
    Word wr = reverse(t.w);
    out.insert(out.end(), wr.begin(), wr.end());
    return out;
}

MarkedWord unmark(const Alphabet& marked, const Word& serialized) {
    const Letter m = marked.marker();
    std::vector<size_t> cuts;
    for (size_t i = 0; i < serialized.size(); ++i)
        if (serialized[i] == m) cuts.push_back(i);
    if (cuts.size() != 2)
        throw std::invalid_argument("marked word must contain exactly two # symbols");
    MarkedWord t;
    t.u.assign(serialized.begin(), serialized.begin() + cuts[0]);
    t.v.assign(serialized.begin() + cuts[0] + 1, serialized.begin() + cuts[1]);
    Word tail(serialized.begin() + cuts[1] + 1, serialized.end());
    t.w = reverse(std::move(tail));
    return t;
}

FreeHom::FreeHom(Alphabet source, Alphabet target, std::vector<Word> images, bool monoid_mode)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)),
      monoid_mode_(monoid_mode) {
    if (static_cast<int>(images_.size()) != source_.size())
        throw std::invalid_argument("homomorphism must be total on the source alphabet");
    for (const Word& img : images_) {
        if (!monoid_mode_ && img.empty())
            throw std::invalid_argument("semigroup homomorphism images must be nonempty");
        for (Letter a : img)
            if (a < 0 || a >= target_.size())
                throw std::invalid_argument("homomorphism image uses a letter outside the target");
    }
}

Word FreeHom::apply(const Word& w) const {
    Word out;
    for (Letter a : w) {
        if (a < 0 || a >= source_.size())
            throw std::out_of_range("word letter outside the homomorphism source");
        const Word& img = images_[a];
        out.insert(out.end(), img.begin(), img.end());
    }
    return out;
}

FreeHom FreeHom::identity(const Alphabet& alphabet) {
    std::vector<Word> images;
    for (int i = 0; i < alphabet.size(); ++i) images.push_back({i});
    return FreeHom(alphabet, alphabet, std::move(images));
}

FreeHom FreeHom::from_map(const Alphabet& source, const Alphabet& target,
                          const std::vector<std::pair<std::string, std::string>>& images,
                          bool monoid_mode) {
    std::vector<Word> imgs(source.size());
    std::vector<bool> seen(source.size(), false);
    for (const auto& [tok, text] : images) {
        Letter a = source.at(tok);
        imgs[a] = parse_word(target, text);
        seen[a] = true;
    }
    for (bool s : seen)
        if (!s) throw std::invalid_argument("homomorphism must be total on the source alphabet");
    return FreeHom(source, target, std::move(imgs), monoid_mode);
}

}  // namespace hsg
