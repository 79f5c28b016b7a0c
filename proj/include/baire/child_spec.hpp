#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "baire/alphabet.hpp"
#include "baire/errors.hpp"
#include "baire/fin_seq.hpp"

namespace baire {

// Symbolic description of the direct-successor letters of a tree node.
// Set{..} is an explicit finite set; All is every letter of the alphabet;
// Above(k) is every letter strictly greater than k (omega alphabets only).
class ChildSpec {
public:
    enum class Kind { Set, All, Above };

    static ChildSpec set(std::vector<Letter> letters) {
        if (letters.empty()) throw input_error("set{} child spec must be non-empty");
        std::sort(letters.begin(), letters.end());
        letters.erase(std::unique(letters.begin(), letters.end()), letters.end());
        ChildSpec s;
        s.kind_ = Kind::Set;
        s.letters_ = std::move(letters);
        return s;
    }
    static ChildSpec all() {
        ChildSpec s;
        s.kind_ = Kind::All;
        return s;
    }
    static ChildSpec above(Letter k) {
        ChildSpec s;
        s.kind_ = Kind::Above;
        s.above_ = k;
        return s;
    }

    Kind kind() const { return kind_; }
    const std::vector<Letter>& letters() const { return letters_; }
    Letter above_bound() const { return above_; }

    bool is_finite() const { return kind_ == Kind::Set; }

    bool contains(Letter x) const {
        switch (kind_) {
        case Kind::Set: return std::binary_search(letters_.begin(), letters_.end(), x);
        case Kind::All: return true;
        case Kind::Above: return x > above_;
        }
        return false;
    }

    Letter min_letter() const {
        switch (kind_) {
        case Kind::Set: return letters_.front();
        case Kind::All: return 0;
        case Kind::Above: return above_ + 1;
        }
        return 0;
    }
    Letter max_letter() const { // finite specs only
        return letters_.back();
    }

    // Letters of the spec that are <= cap, ascending. Finite specs are listed
    // whole regardless of cap (the cap bounds only the infinite kinds).
    std::vector<Letter> sample_letters(Letter cap) const {
        std::vector<Letter> out;
        switch (kind_) {
        case Kind::Set:
            out = letters_;
            break;
        case Kind::All:
            for (Letter x = 0; x <= cap; ++x) out.push_back(x);
            break;
        case Kind::Above:
            for (Letter x = above_ + 1; x <= cap; ++x) out.push_back(x);
            if (out.empty()) out.push_back(above_ + 1);
            break;
        }
        return out;
    }

    bool disjoint_with(const ChildSpec& other) const {
        auto finite_vs = [](const std::vector<Letter>& xs, const ChildSpec& s) {
            for (Letter x : xs)
                if (s.contains(x)) return false;
            return true;
        };
        if (kind_ == Kind::Set) return finite_vs(letters_, other);
        if (other.kind_ == Kind::Set) return finite_vs(other.letters_, *this);
        // two infinite specs over omega always share a large enough letter
        return false;
    }

    bool valid_for(const Alphabet& a) const {
        if (kind_ == Kind::Set) {
            for (Letter x : letters_)
                if (!a.contains(x)) return false;
            return true;
        }
        // All under a finite alphabet is fine (means "every letter");
        // Above is only meaningful when infinitely many letters exceed k.
        return kind_ == Kind::All || !a.is_finite();
    }

    // Infinite kinds under a finite alphabet never arise (valid_for); for omega
    // they mean infinitely many successors.
    bool infinite_under(const Alphabet& a) const {
        if (kind_ == Kind::Set) return false;
        if (kind_ == Kind::All) return !a.is_finite();
        return true;
    }

    friend bool operator==(const ChildSpec&, const ChildSpec&) = default;

    std::string to_string() const {
        switch (kind_) {
        case Kind::Set: {
            std::string out = "set{";
            for (std::size_t i = 0; i < letters_.size(); ++i) {
                if (i) out += ',';
                out += std::to_string(letters_[i]);
            }
            return out + "}";
        }
        case Kind::All: return "all";
        case Kind::Above: return "above(" + std::to_string(above_) + ")";
        }
        return "?";
    }

    static ChildSpec parse(const std::string& tok) {
        if (tok == "all") return all();
        if (tok.rfind("above(", 0) == 0 && tok.back() == ')') {
            const std::string num = tok.substr(6, tok.size() - 7);
            if (num.empty()) throw input_error("above() needs a bound");
            return above(static_cast<Letter>(std::stoul(num)));
        }
        if (tok.rfind("set{", 0) == 0 && tok.back() == '}') {
            const std::string body = tok.substr(4, tok.size() - 5);
            if (body.empty()) throw input_error("set{} child spec must be non-empty");
            return set(FinSeq::parse(body).letters());
        }
        throw input_error("unknown child spec token '" + tok + "'");
    }

    // Ordering key for canonical edge order within a state.
    friend bool spec_order_less(const ChildSpec& a, const ChildSpec& b) {
        return a.min_letter() < b.min_letter();
    }

private:
    Kind kind_ = Kind::All;
    std::vector<Letter> letters_;
    Letter above_ = 0;
};

} // namespace baire
