#include "jetvar/multi_index.hpp"

#include "jetvar/bundle.hpp"
#include "jetvar/errors.hpp"

#include <numeric>

namespace jetvar {

MultiIndex::MultiIndex(int n, std::initializer_list<int> dirs)
    : counts_(static_cast<std::size_t>(n), 0) {
    for (int d : dirs) counts_[static_cast<std::size_t>(d)] += 1;
}

MultiIndex MultiIndex::unit(int n, int dir) {
    MultiIndex m(n);
    m.counts_[static_cast<std::size_t>(dir)] = 1;
    return m;
}

int MultiIndex::degree() const {
    return std::accumulate(counts_.begin(), counts_.end(), 0);
}

MultiIndex MultiIndex::plus(const MultiIndex& other) const {
    if (dim() != other.dim())
        throw DimensionMismatch("multi-index dimensions differ: " + std::to_string(dim()) +
                                " vs " + std::to_string(other.dim()));
    MultiIndex out = *this;
    for (std::size_t k = 0; k < counts_.size(); ++k) out.counts_[k] += other.counts_[k];
    return out;
}

MultiIndex MultiIndex::plus(int dir) const {
    MultiIndex out = *this;
    out.counts_[static_cast<std::size_t>(dir)] += 1;
    return out;
}

std::optional<MultiIndex> MultiIndex::minus(int dir) const {
    if (counts_[static_cast<std::size_t>(dir)] == 0) return std::nullopt;
    MultiIndex out = *this;
    out.counts_[static_cast<std::size_t>(dir)] -= 1;
    return out;
}

std::uint64_t MultiIndex::orderings() const {
    // degree! / prod(counts!), computed without intermediate overflow by
    // accumulating binomials: choose positions for each direction in turn.
    std::uint64_t result = 1;
    int remaining = degree();
    for (int c : counts_) {
        // multiply by C(remaining, c)
        std::uint64_t binom = 1;
        for (int j = 1; j <= c; ++j)
            binom = binom * static_cast<std::uint64_t>(remaining - c + j) /
                    static_cast<std::uint64_t>(j);
        result *= binom;
        remaining -= c;
    }
    return result;
}

std::vector<int> MultiIndex::directions() const {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(degree()));
    for (int d = 0; d < dim(); ++d)
        for (int k = 0; k < counts_[static_cast<std::size_t>(d)]; ++k) out.push_back(d);
    return out;
}

std::strong_ordering MultiIndex::operator<=>(const MultiIndex& other) const {
    if (auto c = dim() <=> other.dim(); c != 0) return c;
    if (auto c = degree() <=> other.degree(); c != 0) return c;
    // Same degree: more weight on earlier directions sorts first.
    for (std::size_t k = 0; k < counts_.size(); ++k)
        if (auto c = other.counts_[k] <=> counts_[k]; c != 0) return c;
    return std::strong_ordering::equal;
}

static void enumerate_rec(int n, int dir, int left, MultiIndex& scratch,
                          std::vector<MultiIndex>& out) {
    if (dir == n - 1) {
        MultiIndex m = scratch;
        for (int k = 0; k < left; ++k) m = m.plus(dir);
        out.push_back(std::move(m));
        return;
    }
    for (int c = left; c >= 0; --c) {
        MultiIndex saved = scratch;
        for (int k = 0; k < c; ++k) scratch = scratch.plus(dir);
        enumerate_rec(n, dir + 1, left - c, scratch, out);
        scratch = saved;
    }
}

std::vector<MultiIndex> MultiIndex::enumerate(int n, int k) {
    std::vector<MultiIndex> out;
    MultiIndex scratch(n);
    enumerate_rec(n, 0, k, scratch, out);
    return out;
}

std::vector<MultiIndex> MultiIndex::enumerate_up_to(int n, int k) {
    std::vector<MultiIndex> out;
    for (int d = 0; d <= k; ++d) {
        auto layer = enumerate(n, d);
        out.insert(out.end(), layer.begin(), layer.end());
    }
    return out;
}

std::string MultiIndex::str(const BaseSpec& base) const {
    std::string out;
    bool first = true;
    for (int d = 0; d < dim(); ++d)
        for (int k = 0; k < counts_[static_cast<std::size_t>(d)]; ++k) {
            if (!first) out += ",";
            out += base.coords[static_cast<std::size_t>(d)];
            first = false;
        }
    return out;
}

} // namespace jetvar
