#include "seqlimit/word.hpp"

#include <algorithm>

#include "seqlimit/error.hpp"

namespace seqlimit {

Alphabet::Alphabet(std::string symbols) : symbols_(std::move(symbols)) {
    if (symbols_.empty()) throw DomainError("alphabet must contain at least one symbol");
    if (symbols_.size() > 255) throw DomainError("alphabet has more than 255 symbols");
    std::string sorted = symbols_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw DomainError("alphabet '" + symbols_ + "' repeats a symbol");
}

std::uint8_t Alphabet::index_of(char symbol) const {
    auto pos = symbols_.find(symbol);
    if (pos == std::string::npos)
        throw DomainError(std::string("symbol '") + symbol + "' is not in alphabet '" + symbols_ + "'");
    return static_cast<std::uint8_t>(pos);
}

Word::Word(Alphabet alphabet, std::vector<std::uint8_t> letters)
    : alphabet_(std::move(alphabet)), letters_(std::move(letters)) {
    for (auto letter : letters_)
        if (letter >= alphabet_.size())
            throw DomainError("letter index " + std::to_string(letter) + " outside alphabet of size " +
                              std::to_string(alphabet_.size()));
}

Word Word::parse(std::string_view text, const Alphabet& alphabet) {
    std::vector<std::uint8_t> letters;
    letters.reserve(text.size());
    for (char c : text) letters.push_back(alphabet.index_of(c));
    return Word(alphabet, std::move(letters));
}

Word Word::repeat(std::uint8_t letter, std::size_t n, const Alphabet& alphabet) {
    return Word(alphabet, std::vector<std::uint8_t>(n, letter));
}

std::size_t Word::count(std::uint8_t letter) const noexcept {
    return static_cast<std::size_t>(std::count(letters_.begin(), letters_.end(), letter));
}

std::string Word::str() const {
    std::string s;
    s.reserve(letters_.size());
    for (auto letter : letters_) s.push_back(alphabet_.symbol(letter));
    return s;
}

Word Word::operator+(const Word& other) const {
    if (!(alphabet_ == other.alphabet_)) throw DomainError("cannot concatenate words over different alphabets");
    std::vector<std::uint8_t> letters = letters_;
    letters.insert(letters.end(), other.letters_.begin(), other.letters_.end());
    return Word(alphabet_, std::move(letters));
}

Word Word::power(std::size_t k) const {
    std::vector<std::uint8_t> letters;
    letters.reserve(letters_.size() * k);
    for (std::size_t i = 0; i < k; ++i) letters.insert(letters.end(), letters_.begin(), letters_.end());
    return Word(alphabet_, std::move(letters));
}

Word indicator_word(const Word& w, std::uint8_t letter) {
    std::vector<std::uint8_t> bits(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) bits[i] = w[i] == letter ? 1 : 0;
    return Word(Alphabet::binary(), std::move(bits));
}

std::vector<Word> all_words(const Alphabet& alphabet, std::size_t len) {
    std::vector<Word> out;
    const std::size_t k = alphabet.size();
    std::vector<std::uint8_t> digits(len, 0);
    while (true) {
        out.emplace_back(alphabet, digits);
        std::size_t pos = len;
        while (pos > 0) {
            --pos;
            if (++digits[pos] < k) break;
            digits[pos] = 0;
            if (pos == 0) return out;
        }
        if (len == 0) return out;
    }
}

}  // namespace seqlimit
