#pragma once

#include "coklab/numeric.hpp"
#include "coklab/partition.hpp"

#include <cstdint>
#include <map>
#include <string>

namespace coklab {

/// Isomorphism type of a finite abelian group: one partition per prime in the
/// support.  Empty partitions are never stored; the trivial group has an
/// empty component map.
class GroupType {
public:
    GroupType() = default;

    static GroupType trivial() { return {}; }
    static GroupType single(uint64_t p, Partition la);
    /// {"2":"2,1","3":"1"} (JSON object rendered as a compact string parse).
    static GroupType parse_json(const std::string& json_text);

    void set(uint64_t p, Partition la);
    const Partition& at(uint64_t p) const;  // empty partition when p absent
    const std::map<uint64_t, Partition>& components() const { return components_; }

    bool is_trivial() const { return components_.empty(); }
    Int order() const;
    std::string to_json() const;

    auto operator<=>(const GroupType&) const = default;

private:
    std::map<uint64_t, Partition> components_;
};

}  // namespace coklab
