#include "qcircle/coding.hpp"

#include <numbers>

namespace qcircle::coding {

DyadicRational TreeNode::q() const {
    if (depth == 0) {
        return DyadicRational();
    }
    return DyadicRational(q_numerator, depth - 1);
}

TreeNode tree_root(const Parameter& c) {
    return TreeNode{dynamics::fixed_point_alpha(c), 0, 0};
}

std::array<TreeNode, 2> children(const Parameter& c, const TreeNode& parent) {
    const unsigned d = parent.depth + 1;
    if (d > DyadicWord::kMaxLength) {
        throw InvalidArgument("preimage tree depth exceeds 62");
    }
    // Child 0 carries Q = Q'/2, i.e. numerator q' over 2^(d-1).
    const Complex target = phase(DyadicRational(parent.q_numerator, d - 1));
    const Complex w = dynamics::inverse_branch(c, parent.xi, 0);
    const bool aligned = (w * std::conj(target)).real() >= 0.0;
    const Complex first = dynamics::inverse_branch(c, parent.xi, aligned ? 0 : 1);
    const std::int64_t one = std::int64_t{1} << (d - 1);
    return {TreeNode{first, parent.q_numerator, d}, TreeNode{-first, parent.q_numerator + one, d}};
}

DyadicRational q_exponent(const DyadicWord& word) {
    // Q * 2^(n-1) = sum_k eps_k 2^(k-1): the bit-reversed index.
    std::int64_t num = 0;
    for (unsigned k = 1; k <= word.length(); ++k) {
        num |= static_cast<std::int64_t>(word.bit(k)) << (k - 1);
    }
    return DyadicRational(num, word.length() - 1);
}

Complex phase(const DyadicRational& q) {
    const DyadicRational r = q.mod2();
    if (r.log2_denominator() <= 1) {
        // Quarter turns: 0, 1/2, 1, 3/2.
        switch (r.log2_denominator() == 0 ? 2 * r.numerator() : r.numerator()) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0};
        case 2: return {-1.0, 0.0};
        case 3: return {0.0, -1.0};
        default: break;
        }
    }
    return std::polar(1.0, std::numbers::pi * r.to_double());
}

Complex u_phase(const DyadicWord& word) {
    return phase(DyadicRational() - q_exponent(word));
}

Complex u_power(const DyadicWord& word, unsigned power) {
    DyadicRational e = q_exponent(word);
    for (unsigned i = 0; i < power; ++i) {
        e = e.twice().mod2();
    }
    return phase(DyadicRational() - e);
}

std::vector<Complex> prefix_xi(const Parameter& c, const DyadicWord& word) {
    std::vector<Complex> chain;
    chain.reserve(word.length());
    TreeNode node = tree_root(c);
    for (unsigned k = 1; k <= word.length(); ++k) {
        std::array<TreeNode, 2> kids;
        try {
            kids = children(c, node);
        } catch (const Error& e) {
            detail::rethrow_with_word(e, word.index() >> (word.length() - k + 1), k - 1);
        }
        node = kids[static_cast<std::size_t>(word.bit(k))];
        chain.push_back(node.xi);
    }
    return chain;
}

Complex xi(const Parameter& c, const DyadicWord& word) {
    return prefix_xi(c, word).back();
}

std::vector<Complex> r_chain(const Parameter& c, std::span<const Complex> prefix_xi) {
    const Complex cv = c.value();
    std::vector<Complex> r;
    r.reserve(prefix_xi.size());
    if (prefix_xi.empty()) {
        return r;
    }
    const Complex base = dynamics::fixed_point_alpha(c) - cv;
    if (!(base.real() > 0.0)) {
        throw LogBranchViolation("alpha - c left the right half plane");
    }
    r.push_back(0.5 * std::log(base));
    for (std::size_t k = 1; k < prefix_xi.size(); ++k) {
        const Complex arg = 1.0 - cv / prefix_xi[k - 1];
        if (!(arg.real() > 0.0)) {
            throw LogBranchViolation("1 - c/xi(prefix) left the right half plane at depth "
                                     + std::to_string(k));
        }
        r.push_back(0.5 * r.back() + 0.5 * std::log(arg));
    }
    return r;
}

Complex r_log(const Parameter& c, const DyadicWord& word) {
    const auto chain = prefix_xi(c, word);
    return r_chain(c, chain).back();
}

Complex phi_series(Complex u, unsigned n) {
    Complex sum{0.0, 0.0};
    Complex power = u;
    double weight = 1.0;
    for (unsigned k = 1; k <= n; ++k) {
        power *= power;
        weight *= 0.5;
        sum += (1.0 - weight) * power;
    }
    return sum;
}

PreimagePoint preimage_point(const Parameter& c, const DyadicWord& word) {
    const auto chain = prefix_xi(c, word);
    const auto r = r_chain(c, chain);
    return PreimagePoint{word, chain.back(), q_exponent(word), r.back()};
}

namespace detail {

void check_depth(unsigned n) {
    if (n < 1 || n > kMaxEnumerationDepth) {
        throw InvalidArgument("enumeration depth must be in [1, 30], got " + std::to_string(n));
    }
}

void rethrow_with_word(const Error& e, std::uint64_t index, unsigned depth) {
    const std::string where = depth == 0 ? std::string("root") : DyadicWord(index, depth).str();
    const std::string msg = std::string(e.what()) + " (below word " + where + ")";
    if (dynamic_cast<const CriticalCollision*>(&e) != nullptr) {
        throw CriticalCollision(msg);
    }
    if (dynamic_cast<const LogBranchViolation*>(&e) != nullptr) {
        throw LogBranchViolation(msg);
    }
    if (dynamic_cast<const InvalidArgument*>(&e) != nullptr) {
        throw InvalidArgument(msg);
    }
    throw Error(msg);
}

} // namespace detail
} // namespace qcircle::coding
