#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace seqlimit {

/// Ordered set of single-character symbols. Letter index i stands for the
/// i-th symbol; on the binary alphabet "01" the index equals the letter's
/// numeric value.
class Alphabet {
public:
    /// Binary alphabet {'0','1'}.
    Alphabet() : symbols_("01") {}
    explicit Alphabet(std::string symbols);

    static Alphabet binary() { return Alphabet(); }

    std::size_t size() const noexcept { return symbols_.size(); }
    bool is_binary() const noexcept { return symbols_ == "01"; }
    const std::string& symbols() const noexcept { return symbols_; }
    char symbol(std::uint8_t letter) const { return symbols_.at(letter); }

    /// Index of a symbol; throws DomainError when absent.
    std::uint8_t index_of(char symbol) const;
    bool contains(char symbol) const noexcept { return symbols_.find(symbol) != std::string::npos; }

    friend bool operator==(const Alphabet&, const Alphabet&) = default;

private:
    std::string symbols_;
};

/// Finite sequence of letters over an Alphabet. Immutable once built.
class Word {
public:
    Word() = default;
    Word(Alphabet alphabet, std::vector<std::uint8_t> letters);

    /// Parses a string of alphabet symbols.
    static Word parse(std::string_view text, const Alphabet& alphabet = Alphabet::binary());
    /// n copies of one letter.
    static Word repeat(std::uint8_t letter, std::size_t n, const Alphabet& alphabet = Alphabet::binary());

    const Alphabet& alphabet() const noexcept { return alphabet_; }
    std::span<const std::uint8_t> letters() const noexcept { return letters_; }
    std::size_t size() const noexcept { return letters_.size(); }
    bool empty() const noexcept { return letters_.empty(); }
    std::uint8_t operator[](std::size_t i) const { return letters_[i]; }

    /// Number of occurrences of `letter` (||w||_1 for letter 1).
    std::size_t count(std::uint8_t letter) const noexcept;

    std::string str() const;

    /// Concatenation; both words must share an alphabet.
    Word operator+(const Word& other) const;
    /// k-fold concatenation.
    Word power(std::size_t k) const;

    friend bool operator==(const Word&, const Word&) = default;
    friend auto operator<=>(const Word& a, const Word& b) {
        return a.letters_ <=> b.letters_;
    }

private:
    Alphabet alphabet_;
    std::vector<std::uint8_t> letters_;
};

/// Binary word marking the positions that hold `letter`.
Word indicator_word(const Word& w, std::uint8_t letter);

/// All k^len words of length `len`, in lexicographic order of letter indices.
std::vector<Word> all_words(const Alphabet& alphabet, std::size_t len);

}  // namespace seqlimit
