#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "baire/errors.hpp"

namespace baire {

using Letter = std::uint32_t;
using StateId = std::uint32_t;

// Finite sequence of letters; the empty sequence is a valid value.
class FinSeq {
public:
    FinSeq() = default;
    FinSeq(std::initializer_list<Letter> xs) : letters_(xs) {}
    explicit FinSeq(std::vector<Letter> xs) : letters_(std::move(xs)) {}

    std::size_t size() const { return letters_.size(); }
    bool empty() const { return letters_.empty(); }
    Letter operator[](std::size_t i) const { return letters_[i]; }
    Letter front() const { return letters_.front(); }
    const std::vector<Letter>& letters() const { return letters_; }

    FinSeq prefix(std::size_t n) const {
        return FinSeq(std::vector<Letter>(letters_.begin(), letters_.begin() + n));
    }
    FinSeq suffix_from(std::size_t n) const {
        return FinSeq(std::vector<Letter>(letters_.begin() + n, letters_.end()));
    }

    // Non-strict prefix order.
    bool is_prefix_of(const FinSeq& v) const {
        if (size() > v.size()) return false;
        for (std::size_t i = 0; i < size(); ++i)
            if (letters_[i] != v.letters_[i]) return false;
        return true;
    }
    bool extends(const FinSeq& u) const { return u.is_prefix_of(*this); }

    bool compatible_with(const FinSeq& v) const {
        return is_prefix_of(v) || v.is_prefix_of(*this);
    }

    FinSeq concat(const FinSeq& v) const {
        std::vector<Letter> out = letters_;
        out.insert(out.end(), v.letters_.begin(), v.letters_.end());
        return FinSeq(std::move(out));
    }
    FinSeq append(Letter x) const {
        std::vector<Letter> out = letters_;
        out.push_back(x);
        return FinSeq(std::move(out));
    }

    friend bool operator==(const FinSeq&, const FinSeq&) = default;
    // Plain lexicographic order on the letter vectors.
    friend auto operator<=>(const FinSeq& a, const FinSeq& b) {
        return a.letters_ <=> b.letters_;
    }

    // "1,0,2"; empty sequence prints as "()".
    std::string to_string() const;
    static FinSeq parse(const std::string& text);

private:
    std::vector<Letter> letters_;
};

// Length-then-lex: the fixed enumeration order used everywhere.
inline bool llex_less(const FinSeq& a, const FinSeq& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
}

inline std::string FinSeq::to_string() const {
    if (letters_.empty()) return "()";
    std::string out;
    for (std::size_t i = 0; i < letters_.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(letters_[i]);
    }
    return out;
}

inline FinSeq FinSeq::parse(const std::string& text) {
    if (text.empty() || text == "()") return FinSeq();
    std::vector<Letter> out;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t end = text.find(',', pos);
        if (end == std::string::npos) end = text.size();
        const std::string tok = text.substr(pos, end - pos);
        if (tok.empty()) throw input_error("empty letter in sequence '" + text + "'");
        for (char c : tok)
            if (c < '0' || c > '9') throw input_error("bad letter '" + tok + "' in sequence");
        out.push_back(static_cast<Letter>(std::stoul(tok)));
        pos = end + 1;
    }
    return FinSeq(std::move(out));
}

} // namespace baire
