#pragma once

// Symbolic addresses on the Vicsek set: words over {1..5}, corner labels,
// the two letter permutations, and exact projection into the unit square.

#include <array>
#include <cstdint>
#include <algorithm>
#include <functional>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/rational.hpp>

#include "error.hpp"

namespace vicsek {

using Letter = std::uint8_t;
using Rational = boost::rational<std::int64_t>;

inline constexpr int kAlphabetSize = 5;
inline constexpr int kCorners = 4;

/// Finite word over the alphabet {1,2,3,4,5}. The empty word is allowed.
class Word {
public:
    Word() = default;

    Word(std::initializer_list<int> letters) {
        letters_.reserve(letters.size());
        for (int l : letters) push_back(l);
    }

    explicit Word(std::vector<Letter> letters) : letters_(std::move(letters)) {
        for (Letter l : letters_) check_letter(l);
    }

    /// Parses "125" style words; "" and "-" both denote the empty word.
    static Word parse(std::string_view text) {
        Word w;
        if (text == "-") return w;
        for (char ch : text) {
            if (ch < '1' || ch > '5') throw domain_error("invalid letter '" + std::string(1, ch) + "' in word");
            w.letters_.push_back(static_cast<Letter>(ch - '0'));
        }
        return w;
    }

    /// The word [letter]^count.
    static Word repeat(int letter, std::size_t count) {
        check_letter(letter);
        Word w;
        w.letters_.assign(count, static_cast<Letter>(letter));
        return w;
    }

    std::size_t size() const noexcept { return letters_.size(); }
    bool empty() const noexcept { return letters_.empty(); }
    int operator[](std::size_t i) const { return letters_[i]; }
    int front() const { return letters_.front(); }
    int back() const { return letters_.back(); }
    const std::vector<Letter>& letters() const noexcept { return letters_; }

    void push_back(int letter) {
        check_letter(letter);
        letters_.push_back(static_cast<Letter>(letter));
    }
    void pop_back() { letters_.pop_back(); }

    /// Word with `letter` appended (omega i).
    Word then(int letter) const {
        Word w = *this;
        w.push_back(letter);
        return w;
    }

    /// Word with `letter` prepended (i omega).
    Word after(int letter) const {
        check_letter(letter);
        Word w;
        w.letters_.reserve(size() + 1);
        w.letters_.push_back(static_cast<Letter>(letter));
        w.letters_.insert(w.letters_.end(), letters_.begin(), letters_.end());
        return w;
    }

    friend Word concat(const Word& a, const Word& b) {
        Word w = a;
        w.letters_.insert(w.letters_.end(), b.letters_.begin(), b.letters_.end());
        return w;
    }

    /// Rank of the word among words of the same length in base-5 order.
    std::uint64_t rank() const noexcept {
        std::uint64_t r = 0;
        for (Letter l : letters_) r = r * kAlphabetSize + (l - 1);
        return r;
    }

    std::string str() const {
        if (letters_.empty()) return "-";
        std::string s;
        s.reserve(letters_.size());
        for (Letter l : letters_) s.push_back(static_cast<char>('0' + l));
        return s;
    }

    friend bool operator==(const Word&, const Word&) = default;
    friend auto operator<=>(const Word& a, const Word& b) { return a.letters_ <=> b.letters_; }

private:
    static void check_letter(int l) {
        if (l < 1 || l > kAlphabetSize) throw domain_error("letter " + std::to_string(l) + " outside {1..5}");
    }

    std::vector<Letter> letters_;
};

/// The point q_{omega,i} = F_omega(q_i) named symbolically.
struct Address {
    Word word;
    int corner = 1;

    Address() = default;
    Address(Word w, int c) : word(std::move(w)), corner(c) {
        if (c < 1 || c > kCorners) throw domain_error("corner " + std::to_string(c) + " outside {1..4}");
    }

    std::string str() const { return "(" + word.str() + "," + std::to_string(corner) + ")"; }

    friend bool operator==(const Address&, const Address&) = default;
    friend auto operator<=>(const Address&, const Address&) = default;
};

/// Exact point of the unit square with rational coordinates.
struct ExactPoint {
    Rational x;
    Rational y;

    friend bool operator==(const ExactPoint&, const ExactPoint&) = default;

    std::pair<double, double> to_double() const {
        return {boost::rational_cast<double>(x), boost::rational_cast<double>(y)};
    }
};

/// Fixed points p_1..p_5 of the five similarities, doubled so they are integral.
inline constexpr std::array<std::array<std::int64_t, 2>, 5> kDoubledFixedPoints{{
    {0, 2}, {2, 2}, {2, 0}, {0, 0}, {1, 1}}};

/// Opposite corner across the square: 1<->3, 2<->4.
inline constexpr int opposite_corner(int i) noexcept { return (i + 1) % 4 + 1; }

inline std::int64_t pow3(int m) {
    std::int64_t r = 1;
    for (int k = 0; k < m; ++k) r *= 3;
    return r;
}

/// Integer lattice coordinates of q_{omega,i} in units of 1/(2*3^level).
/// Requires |omega| <= level.
inline std::array<std::int64_t, 2> lattice_point(const Word& word, int corner, int level) {
    const int m = static_cast<int>(word.size());
    if (m > level) throw level_mismatch("word longer than lattice level");
    // X_m = 2 q_corner; X_{k-1} = X_k + 2*3^{m-k} * (2 p_{omega_k}) scaled to denominator 2*3^m.
    std::array<std::int64_t, 2> X = kDoubledFixedPoints[static_cast<std::size_t>(corner - 1)];
    std::int64_t scale = 1;  // 3^{m-k}
    for (int k = m; k >= 1; --k) {
        const auto& p = kDoubledFixedPoints[static_cast<std::size_t>(word[static_cast<std::size_t>(k - 1)] - 1)];
        X[0] += 2 * scale * p[0];
        X[1] += 2 * scale * p[1];
        scale *= 3;
    }
    // X is in units of 1/(2*3^m); rescale to 1/(2*3^level).
    const std::int64_t lift = pow3(level - m);
    return {X[0] * lift, X[1] * lift};
}

/// Exact coordinates of q_{omega,i}.
inline ExactPoint project(const Address& addr) {
    const int m = static_cast<int>(addr.word.size());
    const auto X = lattice_point(addr.word, addr.corner, m);
    const std::int64_t den = 2 * pow3(m);
    return {Rational(X[0], den), Rational(X[1], den)};
}

/// Transposition (2 4) on letters and corners.
inline int permute_r1(int letter) noexcept {
    if (letter == 2) return 4;
    if (letter == 4) return 2;
    return letter;
}

/// 4-cycle 1->2->3->4->1 on letters and corners; 5 fixed.
inline int permute_r2(int letter) noexcept { return letter == 5 ? 5 : letter % 4 + 1; }

inline int permute_r2_inverse(int letter) noexcept { return letter == 5 ? 5 : (letter + 2) % 4 + 1; }

inline Word map_letters(const Word& w, int (*perm)(int) noexcept) {
    std::vector<Letter> out;
    out.reserve(w.size());
    for (Letter l : w.letters()) out.push_back(static_cast<Letter>(perm(l)));
    return Word(std::move(out));
}

inline Address rotate1(const Address& a) { return {map_letters(a.word, permute_r1), permute_r1(a.corner)}; }

inline Address rotate2(const Address& a) { return {map_letters(a.word, permute_r2), permute_r2(a.corner)}; }

inline Address rotate2_inverse(const Address& a) {
    return {map_letters(a.word, permute_r2_inverse), permute_r2_inverse(a.corner)};
}

/// Reflection across the q1-q3 diagonal, the isometry behind rotate1.
inline ExactPoint reflect_diagonal(const ExactPoint& p) { return {Rational(1) - p.y, Rational(1) - p.x}; }

/// Quarter turn about (1/2,1/2) sending q_i to q_{i+1}, the isometry behind rotate2.
inline ExactPoint quarter_turn(const ExactPoint& p) { return {p.y, Rational(1) - p.x}; }

/// Lazy preorder (lexicographic) enumeration of all words of length <= depth
/// whose first letter lies in `first_letters`. Yields the empty word first.
class WordEnumerator {
public:
    explicit WordEnumerator(int depth, std::vector<int> first_letters = {1, 2, 3, 4, 5})
        : depth_(depth), first_(std::move(first_letters)) {
        if (depth < 0) throw domain_error("enumeration depth must be >= 0");
        std::sort(first_.begin(), first_.end());
        first_.erase(std::unique(first_.begin(), first_.end()), first_.end());
        for (int l : first_)
            if (l < 1 || l > kAlphabetSize) throw domain_error("first letter outside {1..5}");
    }

    /// Advances to the next word; returns nullptr when exhausted.
    const Word* next() {
        if (!started_) {
            started_ = true;
            return &current_;
        }
        if (static_cast<int>(current_.size()) < depth_) {
            const auto& allowed = letters_at(current_.size());
            if (!allowed.empty()) {
                current_.push_back(allowed.front());
                return &current_;
            }
        }
        while (!current_.empty()) {
            const int last = current_.back();
            current_.pop_back();
            const auto& allowed = letters_at(current_.size());
            auto it = std::upper_bound(allowed.begin(), allowed.end(), last);
            if (it != allowed.end()) {
                current_.push_back(*it);
                return &current_;
            }
        }
        return nullptr;
    }

private:
    const std::vector<int>& letters_at(std::size_t position) const { return position == 0 ? first_ : all_; }

    int depth_;
    std::vector<int> first_;
    std::vector<int> all_{1, 2, 3, 4, 5};
    Word current_;
    bool started_ = false;
};

/// Calls fn(word) for every word enumerated by WordEnumerator(depth, first_letters).
template <class Fn>
void for_each_word(int depth, const std::vector<int>& first_letters, Fn&& fn) {
    WordEnumerator e(depth, first_letters);
    while (const Word* w = e.next()) fn(*w);
}

inline std::vector<Word> enumerate_words(int depth, const std::vector<int>& first_letters = {1, 2, 3, 4, 5}) {
    std::vector<Word> out;
    for_each_word(depth, first_letters, [&](const Word& w) { out.push_back(w); });
    return out;
}

/// Number of words enumerate_words(depth, first_letters) yields.
inline std::uint64_t word_count(int depth, std::size_t first_letter_count) {
    std::uint64_t total = 1, layer = first_letter_count;
    for (int k = 1; k <= depth; ++k) {
        total += layer;
        layer *= kAlphabetSize;
    }
    return total;
}

}  // namespace vicsek
