#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace jetvar {

struct BaseSpec;

/// Symmetric multi-index over n base directions: a multiset of directions,
/// stored as a dense multiplicity vector. The canonical order is graded:
/// lower degree first, then more weight on earlier directions first, so that
/// for n = 2 the degree-2 indices run (t,t), (t,x), (x,x).
class MultiIndex {
public:
    MultiIndex() = default;
    explicit MultiIndex(int n) : counts_(static_cast<std::size_t>(n), 0) {}
    MultiIndex(int n, std::initializer_list<int> dirs);

    static MultiIndex unit(int n, int dir);

    int dim() const { return static_cast<int>(counts_.size()); }
    int degree() const;
    bool empty() const { return degree() == 0; }
    int count(int dir) const { return counts_[static_cast<std::size_t>(dir)]; }

    /// Multiplicity-wise sum; throws DimensionMismatch if dims differ.
    MultiIndex plus(const MultiIndex& other) const;
    MultiIndex plus(int dir) const;
    /// Remove one occurrence of dir; nullopt if dir is absent.
    std::optional<MultiIndex> minus(int dir) const;

    /// Number of distinct sequences representing this multiset
    /// (multinomial degree!/prod(counts!)).
    std::uint64_t orderings() const;

    /// Directions listed with multiplicity in canonical order, e.g. {0,1,1}.
    std::vector<int> directions() const;

    /// All multi-indices over n directions of degree exactly k, canonical order.
    static std::vector<MultiIndex> enumerate(int n, int k);
    /// Degrees 0..k inclusive, canonical order.
    static std::vector<MultiIndex> enumerate_up_to(int n, int k);

    /// Comma-joined direction names, e.g. "t,x,x".
    std::string str(const BaseSpec& base) const;

    bool operator==(const MultiIndex&) const = default;
    std::strong_ordering operator<=>(const MultiIndex& other) const;

private:
    std::vector<int> counts_;
};

} // namespace jetvar
