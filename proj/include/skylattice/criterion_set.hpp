#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "skylattice/errors.hpp"

namespace sky {

/// A subset of the schema's criteria, encoded as a bit mask ordered by the
/// schema's criterion order. The encoding is canonical: two equal subsets
/// always compare and print identically.
class CriterionSet {
public:
    static constexpr std::size_t kMaxCriteria = 32;

    constexpr CriterionSet() = default;

    static constexpr CriterionSet from_bits(std::uint32_t bits) {
        CriterionSet s;
        s.bits_ = bits;
        return s;
    }

    static CriterionSet none() { return CriterionSet{}; }

    static CriterionSet full(std::size_t criterion_count) {
        if (criterion_count > kMaxCriteria)
            throw ResourceError("criterion count exceeds supported maximum of 32");
        if (criterion_count == 0) return CriterionSet{};
        return from_bits(criterion_count == kMaxCriteria
                             ? ~std::uint32_t{0}
                             : ((std::uint32_t{1} << criterion_count) - 1));
    }

    static CriterionSet single(std::size_t index) {
        if (index >= kMaxCriteria)
            throw ResourceError("criterion index exceeds supported maximum of 32");
        return from_bits(std::uint32_t{1} << index);
    }

    constexpr std::uint32_t bits() const { return bits_; }
    constexpr bool empty() const { return bits_ == 0; }
    constexpr std::size_t size() const { return static_cast<std::size_t>(std::popcount(bits_)); }

    constexpr bool contains(std::size_t index) const {
        return index < kMaxCriteria && (bits_ >> index & 1u) != 0;
    }

    CriterionSet with(std::size_t index) const {
        if (index >= kMaxCriteria)
            throw ResourceError("criterion index exceeds supported maximum of 32");
        return from_bits(bits_ | (std::uint32_t{1} << index));
    }

    CriterionSet without(std::size_t index) const {
        if (index >= kMaxCriteria) return *this;
        return from_bits(bits_ & ~(std::uint32_t{1} << index));
    }

    constexpr bool subset_of(CriterionSet other) const {
        return (bits_ & ~other.bits_) == 0;
    }

    friend constexpr CriterionSet operator&(CriterionSet a, CriterionSet b) {
        return from_bits(a.bits_ & b.bits_);
    }
    friend constexpr CriterionSet operator|(CriterionSet a, CriterionSet b) {
        return from_bits(a.bits_ | b.bits_);
    }
    friend constexpr bool operator==(CriterionSet a, CriterionSet b) { return a.bits_ == b.bits_; }
    friend constexpr bool operator!=(CriterionSet a, CriterionSet b) { return a.bits_ != b.bits_; }
    // Order by (cardinality, mask): top-down enumerations and document output
    // stay stable under this order.
    friend constexpr bool operator<(CriterionSet a, CriterionSet b) {
        const auto ca = std::popcount(a.bits_);
        const auto cb = std::popcount(b.bits_);
        if (ca != cb) return ca < cb;
        return a.bits_ < b.bits_;
    }

    /// Member indices in ascending (canonical) order.
    std::vector<std::size_t> indices() const {
        std::vector<std::size_t> out;
        out.reserve(size());
        for (std::uint32_t rest = bits_; rest != 0; rest &= rest - 1)
            out.push_back(static_cast<std::size_t>(std::countr_zero(rest)));
        return out;
    }

private:
    std::uint32_t bits_ = 0;
};

}  // namespace sky
