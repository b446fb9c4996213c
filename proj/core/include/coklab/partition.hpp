#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace coklab {

/// Integer partition: weakly decreasing sequence of positive parts.
/// The empty sequence is the zero partition.
class Partition {
public:
    Partition() = default;
    explicit Partition(std::vector<uint32_t> parts);

    static Partition parse(const std::string& s);

    const std::vector<uint32_t>& parts() const { return parts_; }
    bool empty() const { return parts_.empty(); }
    std::size_t length() const { return parts_.size(); }
    uint64_t size() const;

    /// Part with 1-based index; 0 beyond the length.
    uint32_t part(std::size_t i) const { return i >= 1 && i <= parts_.size() ? parts_[i - 1] : 0; }

    Partition conjugate() const;
    /// m_i = number of parts equal to i.
    uint32_t multiplicity(uint32_t i) const;
    /// n(lambda) = sum over rows of (i-1)*lambda_i.
    uint64_t weighted_sum() const;

    /// Componentwise containment of Young diagrams.
    bool contains(const Partition& mu) const;
    /// Interlacing: this_1 >= mu_1 >= this_2 >= mu_2 >= ...
    bool interlaces_above(const Partition& mu) const;

    std::string to_string() const;  // "2,1"; empty partition prints "[]"

    auto operator<=>(const Partition&) const = default;

private:
    std::vector<uint32_t> parts_;
};

inline bool interlaces(const Partition& mu, const Partition& la) { return la.interlaces_above(mu); }

/// All partitions with |p| <= max_size, parts <= max_part, length <= max_len,
/// in graded order (by size, then descending lexicographic within a grade).
std::vector<Partition> partitions_bounded(uint32_t max_size, uint32_t max_part, uint32_t max_len);

/// Subdiagrams mu with mu contained in la, graded order.
std::vector<Partition> subdiagrams(const Partition& la);

}  // namespace coklab
