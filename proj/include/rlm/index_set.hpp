#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace rlm {

inline constexpr int kMaxRank = 21;

/// Signature / type (r, s): r members in {1..n}, s members in {n+1..2n}.
struct TypePair {
    int r = 0;
    int s = 0;
    friend bool operator==(const TypePair&, const TypePair&) = default;
};

/// Subset of {1..2n}, stored as a bitmask (bit i-1 <-> element i).
/// Usually |S| = n, but lower wedge degrees use the same type.
class IndexSet {
public:
    IndexSet() = default;
    IndexSet(int n, std::uint64_t bits) : n_(n), bits_(bits) { check_rank(n); }
    IndexSet(int n, std::initializer_list<int> elems) : IndexSet(n, std::vector<int>(elems)) {}
    IndexSet(int n, const std::vector<int>& elems) : n_(n) {
        check_rank(n);
        for (int e : elems) {
            if (e < 1 || e > 2 * n) throw std::out_of_range("index " + std::to_string(e) + " outside 1.." + std::to_string(2 * n));
            if (contains(e)) throw std::invalid_argument("repeated index " + std::to_string(e));
            bits_ |= bit(e);
        }
    }

    static IndexSet range(int n, int lo, int hi) {
        std::uint64_t b = 0;
        for (int i = lo; i <= hi; ++i) b |= bit(i);
        return IndexSet(n, b);
    }

    int rank() const { return n_; }
    std::uint64_t bits() const { return bits_; }
    int size() const { return std::popcount(bits_); }
    bool contains(int i) const { return (bits_ >> (i - 1)) & 1u; }

    IndexSet with(int i) const { return IndexSet(n_, bits_ | bit(i)); }
    IndexSet without(int i) const { return IndexSet(n_, bits_ & ~bit(i)); }

    std::vector<int> elements() const {
        std::vector<int> out;
        for (auto b = bits_; b; b &= b - 1) out.push_back(std::countr_zero(b) + 1);
        return out;
    }

    /// Number of members strictly greater than i.
    int count_above(int i) const { return std::popcount(bits_ >> i); }

    int sum() const {
        int s = 0;
        for (int e : elements()) s += e;
        return s;
    }

    /// i -> 2n+1-i
    IndexSet star() const {
        std::uint64_t b = 0;
        for (int e : elements()) b |= bit(2 * n_ + 1 - e);
        return IndexSet(n_, b);
    }
    IndexSet complement() const { return IndexSet(n_, ~bits_ & full_mask()); }
    IndexSet perp() const { return star().complement(); }

    TypePair type() const {
        auto low = bits_ & ((std::uint64_t{1} << n_) - 1);
        return {std::popcount(low), size() - std::popcount(low)};
    }

    /// i-th entry is #(S ∩ {i, n+i}).
    std::vector<int> weight() const {
        std::vector<int> w(n_);
        for (int i = 1; i <= n_; ++i) w[i - 1] = contains(i) + contains(n_ + i);
        return w;
    }

    /// Lexicographic order of the increasing element lists (sets of equal size).
    friend std::strong_ordering operator<=>(const IndexSet& a, const IndexSet& b) {
        if (a.n_ != b.n_) return a.n_ <=> b.n_;
        auto d = a.bits_ ^ b.bits_;
        if (d == 0) return std::strong_ordering::equal;
        auto low = d & (~d + 1);
        return (a.bits_ & low) ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    friend bool operator==(const IndexSet& a, const IndexSet& b) { return a.n_ == b.n_ && a.bits_ == b.bits_; }

    std::string to_string() const {
        std::string s = "{";
        bool first = true;
        for (int e : elements()) {
            if (!first) s += ",";
            first = false;
            s += std::to_string(e);
        }
        return s + "}";
    }

    static std::uint64_t bit(int i) { return std::uint64_t{1} << (i - 1); }

private:
    static void check_rank(int n) {
        if (n < 1 || n > kMaxRank) throw std::out_of_range("rank must be in 1.." + std::to_string(kMaxRank));
    }
    std::uint64_t full_mask() const { return (std::uint64_t{1} << (2 * n_)) - 1; }

    int n_ = 1;
    std::uint64_t bits_ = 0;
};

struct IndexSetHash {
    std::size_t operator()(const IndexSet& s) const { return std::hash<std::uint64_t>{}(s.bits() * 64 + s.rank()); }
};

inline int dual_index(int n, int i) { return n + 1 - i; }  // i^vee
inline int star_index(int n, int i) { return 2 * n + 1 - i; }  // i^*

/// All l-subsets of {1..2n} in lexicographic order.
inline std::vector<IndexSet> enumerate_subsets(int n, int l) {
    std::vector<IndexSet> out;
    int N = 2 * n;
    if (l < 0 || l > N) return out;
    std::vector<int> c(l);
    for (int i = 0; i < l; ++i) c[i] = i + 1;
    while (true) {
        out.emplace_back(n, c);
        int i = l - 1;
        while (i >= 0 && c[i] == N - l + i + 1) --i;
        if (i < 0) break;
        ++c[i];
        for (int j = i + 1; j < l; ++j) c[j] = c[j - 1] + 1;
    }
    return out;
}

/// Type-(r,s) n-subsets in lexicographic order.
inline std::vector<IndexSet> enumerate_type(int n, int r, int s) {
    std::vector<IndexSet> out;
    for (auto& S : enumerate_subsets(n, n))
        if (S.type() == TypePair{r, s}) out.push_back(S);
    return out;
}

/// Sign of the shuffle sending 1..n to S and n+1..2n to the complement, each in
/// increasing order, computed from the permutation itself.
inline int sigma_sign_bruteforce(const IndexSet& S) {
    int n = S.rank();
    std::vector<int> img;
    for (int e : S.elements()) img.push_back(e - 1);
    for (int e : S.complement().elements()) img.push_back(e - 1);
    std::vector<bool> seen(2 * n, false);
    int cycles = 0;
    for (int i = 0; i < 2 * n; ++i) {
        if (seen[i]) continue;
        ++cycles;
        for (int j = i; !seen[j]; j = img[j]) seen[j] = true;
    }
    return ((2 * n - cycles) % 2 == 0) ? 1 : -1;
}

/// (-1)^(ΣS + ceil(n/2))
inline int sigma_sign_closed(const IndexSet& S) {
    int n = S.rank();
    return ((S.sum() + (n + 1) / 2) % 2 == 0) ? 1 : -1;
}

}  // namespace rlm
