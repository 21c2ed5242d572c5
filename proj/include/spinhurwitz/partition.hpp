#pragma once

#include "spinhurwitz/rational.hpp"

#include <compare>
#include <map>
#include <string>
#include <vector>

namespace spinhurwitz {

/// Weakly decreasing sequence of positive integers.
class Partition {
public:
    Partition() = default;
    /// Sorts the input; throws on nonpositive parts.
    explicit Partition(std::vector<int> parts);

    const std::vector<int>& parts() const { return parts_; }
    int length() const { return static_cast<int>(parts_.size()); }
    int weight() const { return weight_; }
    int operator[](int i) const { return parts_[i]; }
    bool empty() const { return parts_.empty(); }

    /// prod_j m_j! where m_j is the multiplicity of part j.
    Integer automorphisms() const;
    std::string to_string() const;

    auto operator<=>(const Partition& o) const { return parts_ <=> o.parts_; }
    bool operator==(const Partition& o) const { return parts_ == o.parts_; }

private:
    std::vector<int> parts_;
    int weight_ = 0;
};

/// All partitions of d in reverse-lexicographic order: (d), (d-1,1), ...
std::vector<Partition> partitions_of(int d);

/// Set partitions of {0..n-1}, each as a list of blocks with ascending
/// elements, blocks ordered by their smallest element.
const std::vector<std::vector<std::vector<int>>>& set_partitions(int n);

} // namespace spinhurwitz
