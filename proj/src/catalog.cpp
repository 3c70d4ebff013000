#include "ntl/catalog.hpp"

#include "ntl/novelty.hpp"

#include <array>
#include <mutex>

namespace ntl {

const std::vector<ListedPartition>& length8_list() {
    static const std::vector<ListedPartition> list = {
        {"11111111", 70}, {"22111111", 52}, {"22221111", 44}, {"33111111", 42},
        {"31111111", 42}, {"32211111", 40}, {"33221111", 36}, {"32222111", 36},
        {"33222211", 34}, {"43211111", 32}, {"42111111", 32}, {"42221111", 32},
        {"33311111", 30}, {"33322111", 30}, {"44221111", 30}, {"43222111", 30},
        {"43321111", 30}, {"43322211", 28}, {"33322221", 26}, {"44322111", 26},
        {"44332211", 26}, {"43332111", 26}, {"43332221", 26}, {"54222111", 26},
        {"53221111", 26}, {"53322111", 26}, {"53331111", 26}, {"52222111", 26},
        {"54321111", 24}, {"54322211", 24}, {"54332111", 24}, {"53222211", 24},
        {"53311111", 24}, {"52211111", 24}, {"44311111", 22}, {"44333221", 22},
        {"55322111", 22}, {"54332221", 22}, {"54333211", 22}, {"54422111", 22},
        {"54432211", 22}, {"54433221", 22}, {"53332211", 22}, {"65322211", 22},
        {"64322111", 22}, {"64432111", 22}, {"63222111", 22}, {"55422211", 20},
        {"55433211", 20}, {"65332111", 20}, {"65432211", 20}, {"64331111", 20},
        {"64332211", 20}, {"63321111", 20}, {"63322211", 20}, {"44333111", 18},
        {"55333111", 18}, {"55443221", 18}, {"54433111", 18}, {"54433322", 18},
        {"65332221", 18}, {"65422111", 18}, {"65433111", 18}, {"65433221", 18},
        {"65443211", 18}, {"65443321", 18}, {"65543221", 18}, {"64421111", 18},
        {"64433211", 18}, {"62221111", 18}, {"76332221", 18}, {"76432211", 18},
        {"75332211", 18}, {"75432111", 18}, {"75433211", 18}, {"75442211", 18},
        {"75533111", 18}, {"74322211", 18}, {"74422111", 18}, {"74432211", 18},
        {"73322111", 18}, {"73332211", 18}, {"65522211", 16}, {"65533211", 16},
        {"65544332", 16}, {"76433221", 16}, {"76533211", 16}, {"76543221", 16},
        {"76544321", 16}, {"75543211", 16}, {"87433221", 16}, {"86433211", 16},
        {"86543211", 16}, {"85432211", 16}, {"85542211", 16}, {"84332211", 16},
        {"55443331", 14}, {"54411111", 14}, {"53332222", 14}, {"51111111", 14},
        {"76433111", 14}, {"76522211", 14}, {"76544211", 14}, {"76554331", 14},
        {"75443322", 14}, {"75522111", 14}, {"74333222", 14}, {"74431111", 14},
        {"73331111", 14}, {"72222111", 14}, {"87533211", 14}, {"87543221", 14},
        {"87654321", 14}, {"86533111", 14}, {"85532111", 14}, {"83332111", 14},
        {"98543221", 14}, {"97543211", 14}, {"97644211", 14}, {"96542211", 14},
        {"95532211", 14}, {"94432211", 14},
    };
    return list;
}

std::vector<Partition> length8_partitions() {
    std::vector<Partition> out;
    for (const auto& entry : length8_list()) out.push_back(Partition::from_digits(entry.digits));
    return out;
}

const std::vector<Partition>& known_novel(std::size_t k) {
    static std::array<std::vector<Partition>, 9> cache;
    static std::array<std::once_flag, 9> once;
    static const std::vector<Partition> empty;
    if (k < 2 || k > 8) return empty;
    std::call_once(once[k], [k] {
        cache[k] = k == 8 ? length8_partitions() : enumerate_novel(k);
    });
    return cache[k];
}

std::vector<Partition> known_novel_up_to(std::size_t max_len) {
    std::vector<Partition> out;
    for (std::size_t k = 2; k <= max_len && k <= 8; ++k) {
        const auto& list = known_novel(k);
        out.insert(out.end(), list.begin(), list.end());
    }
    return out;
}

}  // namespace ntl
