#include "qcircle/dyadic.hpp"

#include "qcircle/errors.hpp"

#include <cmath>

namespace qcircle {

DyadicRational::DyadicRational(std::int64_t numerator, unsigned log2_denominator)
    : num_(numerator), log2_den_(log2_denominator) {
    if (log2_den_ > kMaxLog2Denominator) {
        throw InvalidArgument("dyadic denominator exceeds 2^62");
    }
    normalize();
}

void DyadicRational::normalize() {
    if (num_ == 0) {
        log2_den_ = 0;
        return;
    }
    while (log2_den_ > 0 && (num_ & 1) == 0) {
        num_ /= 2;
        --log2_den_;
    }
}

double DyadicRational::to_double() const noexcept {
    return std::ldexp(static_cast<double>(num_), -static_cast<int>(log2_den_));
}

DyadicRational DyadicRational::operator+(const DyadicRational& other) const {
    const unsigned k = std::max(log2_den_, other.log2_den_);
    const std::int64_t a = num_ * (std::int64_t{1} << (k - log2_den_));
    const std::int64_t b = other.num_ * (std::int64_t{1} << (k - other.log2_den_));
    return DyadicRational(a + b, k);
}

DyadicRational DyadicRational::operator-(const DyadicRational& other) const {
    return *this + DyadicRational(-other.num_, other.log2_den_);
}

DyadicRational DyadicRational::half() const {
    if (num_ % 2 == 0) {
        return DyadicRational(num_ / 2, log2_den_);
    }
    return DyadicRational(num_, log2_den_ + 1);
}

DyadicRational DyadicRational::twice() const {
    if (log2_den_ > 0) {
        return DyadicRational(num_, log2_den_ - 1);
    }
    return DyadicRational(num_ * 2, 0);
}

DyadicRational DyadicRational::mod2() const {
    const std::int64_t period = std::int64_t{2} << log2_den_;
    std::int64_t r = num_ % period;
    if (r < 0) {
        r += period;
    }
    return DyadicRational(r, log2_den_);
}

std::strong_ordering DyadicRational::operator<=>(const DyadicRational& other) const {
    const unsigned k = std::max(log2_den_, other.log2_den_);
    const std::int64_t a = num_ * (std::int64_t{1} << (k - log2_den_));
    const std::int64_t b = other.num_ * (std::int64_t{1} << (k - other.log2_den_));
    return a <=> b;
}

std::string DyadicRational::str() const {
    if (log2_den_ == 0) {
        return std::to_string(num_);
    }
    return std::to_string(num_) + "/" + std::to_string(std::uint64_t{1} << log2_den_);
}

DyadicWord::DyadicWord(std::uint64_t index, unsigned length) : index_(index), length_(length) {
    if (length == 0 || length > kMaxLength) {
        throw InvalidArgument("dyadic word length must be in [1, 62]");
    }
    if (length < 64 && (index >> length) != 0) {
        throw InvalidArgument("dyadic word index has bits beyond its length");
    }
}

DyadicWord::DyadicWord(std::initializer_list<int> bits) : index_(0), length_(0) {
    if (bits.size() == 0 || bits.size() > kMaxLength) {
        throw InvalidArgument("dyadic word length must be in [1, 62]");
    }
    for (int b : bits) {
        if (b != 0 && b != 1) {
            throw InvalidArgument("dyadic word bits must be 0 or 1");
        }
        index_ = (index_ << 1) | static_cast<std::uint64_t>(b);
        ++length_;
    }
}

DyadicWord DyadicWord::parse(const std::string& bits) {
    if (bits.empty() || bits.size() > kMaxLength) {
        throw InvalidArgument("dyadic word length must be in [1, 62]");
    }
    std::uint64_t index = 0;
    for (char ch : bits) {
        if (ch != '0' && ch != '1') {
            throw InvalidArgument("dyadic word must be a string of 0/1, got '" + bits + "'");
        }
        index = (index << 1) | static_cast<std::uint64_t>(ch - '0');
    }
    return DyadicWord(index, static_cast<unsigned>(bits.size()));
}

int DyadicWord::bit(unsigned k) const {
    if (k < 1 || k > length_) {
        throw InvalidArgument("dyadic word bit index out of range");
    }
    return static_cast<int>((index_ >> (length_ - k)) & 1u);
}

DyadicWord DyadicWord::prefix(unsigned k) const {
    if (k < 1 || k > length_) {
        throw InvalidArgument("dyadic word prefix length out of range");
    }
    return DyadicWord(index_ >> (length_ - k), k);
}

DyadicWord DyadicWord::extended(int bit) const {
    return DyadicWord((index_ << 1) | static_cast<std::uint64_t>(bit & 1), length_ + 1);
}

std::strong_ordering DyadicWord::operator<=>(const DyadicWord& other) const {
    // Compare the common prefix, then shorter-first.
    const unsigned m = std::min(length_, other.length_);
    const std::uint64_t a = index_ >> (length_ - m);
    const std::uint64_t b = other.index_ >> (other.length_ - m);
    if (a != b) {
        return a <=> b;
    }
    return length_ <=> other.length_;
}

std::string DyadicWord::str() const {
    std::string out(length_, '0');
    for (unsigned k = 1; k <= length_; ++k) {
        out[k - 1] = static_cast<char>('0' + bit(k));
    }
    return out;
}

} // namespace qcircle
