#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <string>

namespace qcircle {

/// numerator / 2^log2_denominator, always stored in lowest terms
/// (odd numerator, or log2_denominator == 0).
class DyadicRational {
public:
    static constexpr unsigned kMaxLog2Denominator = 62;

    DyadicRational() = default;
    DyadicRational(std::int64_t numerator, unsigned log2_denominator);

    std::int64_t numerator() const noexcept { return num_; }
    unsigned log2_denominator() const noexcept { return log2_den_; }

    double to_double() const noexcept;

    DyadicRational operator+(const DyadicRational& other) const;
    DyadicRational operator-(const DyadicRational& other) const;
    DyadicRational half() const;
    DyadicRational twice() const;
    /// Representative in [0, 2).
    DyadicRational mod2() const;

    bool operator==(const DyadicRational&) const = default;
    std::strong_ordering operator<=>(const DyadicRational& other) const;

    std::string str() const;

private:
    void normalize();

    std::int64_t num_ = 0;
    unsigned log2_den_ = 0;
};

/// Bit string eps_1 ... eps_n, n in [1, kMaxLength]. Ordering is
/// lexicographic with eps_1 most significant.
class DyadicWord {
public:
    static constexpr unsigned kMaxLength = 62;

    /// Word of `length` bits whose binary value (eps_1 most significant) is
    /// `index`.
    DyadicWord(std::uint64_t index, unsigned length);
    DyadicWord(std::initializer_list<int> bits);

    static DyadicWord parse(const std::string& bits);

    unsigned length() const noexcept { return length_; }
    std::uint64_t index() const noexcept { return index_; }

    /// eps_k, 1-based.
    int bit(unsigned k) const;
    /// eps_1 ... eps_k for 1 <= k <= n.
    DyadicWord prefix(unsigned k) const;
    /// Appends eps_{n+1}.
    DyadicWord extended(int bit) const;

    bool operator==(const DyadicWord&) const = default;
    std::strong_ordering operator<=>(const DyadicWord& other) const;

    std::string str() const;

private:
    std::uint64_t index_;
    unsigned length_;
};

} // namespace qcircle
