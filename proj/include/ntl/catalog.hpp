#pragma once

// Reference lists of novel partitions.

#include "ntl/partition.hpp"

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

namespace ntl {

struct ListedPartition {
    std::string_view digits;
    std::uint32_t complement_size;  // |lambda^{perp B}|
};

/// The 122 partitions of length 8 conjectured to be exactly the novel ones,
/// with their complement sizes, in published order.
const std::vector<ListedPartition>& length8_list();

std::vector<Partition> length8_partitions();

/// Novel partitions of length k: exact enumeration for k <= 7 (computed once
/// per process), the published list for k = 8, empty otherwise.
const std::vector<Partition>& known_novel(std::size_t k);

/// Union of known_novel(k) for 2 <= k <= max_len (max_len <= 8).
std::vector<Partition> known_novel_up_to(std::size_t max_len);

}  // namespace ntl
