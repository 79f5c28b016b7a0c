#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "baire/errors.hpp"
#include "baire/fin_seq.hpp"

namespace baire {

// Letter alphabet: an initial segment {0..n-1} or all naturals.
class Alphabet {
public:
    static Alphabet finite(std::uint32_t n) {
        if (n == 0) throw input_error("finite alphabet must have a positive size");
        return Alphabet(n);
    }
    static Alphabet omega() { return Alphabet(std::nullopt); }

    bool is_finite() const { return size_.has_value(); }
    std::uint32_t size() const { return *size_; } // finite only
    bool contains(Letter x) const { return !size_ || x < *size_; }

    bool contains(const FinSeq& u) const {
        for (Letter x : u.letters())
            if (!contains(x)) return false;
        return true;
    }

    friend bool operator==(const Alphabet&, const Alphabet&) = default;

    std::string to_string() const {
        return size_ ? "finite " + std::to_string(*size_) : "omega";
    }

private:
    explicit Alphabet(std::optional<std::uint32_t> n) : size_(n) {}
    std::optional<std::uint32_t> size_;
};

} // namespace baire
