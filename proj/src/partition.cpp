#include "skylattice/partition.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

namespace sky {

Partition Partition::of_classes(std::vector<std::vector<RowId>> classes) {
    Partition p;
    for (auto& cls : classes) {
        if (cls.empty()) throw DomainError("partition classes must be non-empty");
        std::sort(cls.begin(), cls.end());
        if (std::adjacent_find(cls.begin(), cls.end()) != cls.end())
            throw DomainError("partition class contains a duplicate member");
    }
    std::sort(classes.begin(), classes.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    std::size_t total = 0;
    for (const auto& cls : classes) total += cls.size();
    std::vector<RowId> all;
    all.reserve(total);
    for (const auto& cls : classes) all.insert(all.end(), cls.begin(), cls.end());
    std::sort(all.begin(), all.end());
    if (std::adjacent_find(all.begin(), all.end()) != all.end())
        throw DomainError("partition classes are not disjoint");
    p.classes_ = std::move(classes);
    return p;
}

std::vector<RowId> Partition::ground() const {
    std::vector<RowId> all;
    for (const auto& cls : classes_) all.insert(all.end(), cls.begin(), cls.end());
    std::sort(all.begin(), all.end());
    return all;
}

namespace {

void require_same_ground(const Partition& p, const Partition& q) {
    if (p.ground() != q.ground())
        throw DomainError("partitions cover different ground sets");
}

}  // namespace

bool partition_refines(const Partition& p, const Partition& q) {
    require_same_ground(p, q);
    std::unordered_map<RowId, std::size_t> class_of;
    for (std::size_t i = 0; i < q.classes().size(); ++i)
        for (RowId id : q.classes()[i]) class_of[id] = i;
    for (const auto& cls : p.classes()) {
        const std::size_t target = class_of.at(cls.front());
        for (RowId id : cls)
            if (class_of.at(id) != target) return false;
    }
    return true;
}

Partition partition_product(const Partition& p, const Partition& q) {
    require_same_ground(p, q);
    std::unordered_map<RowId, std::size_t> q_class;
    for (std::size_t i = 0; i < q.classes().size(); ++i)
        for (RowId id : q.classes()[i]) q_class[id] = i;
    std::vector<std::vector<RowId>> out;
    for (const auto& cls : p.classes()) {
        std::unordered_map<std::size_t, std::vector<RowId>> pieces;
        for (RowId id : cls) pieces[q_class.at(id)].push_back(id);
        for (auto& [_, piece] : pieces) out.push_back(std::move(piece));
    }
    return Partition::of_classes(std::move(out));
}

Partition partition_sum(const Partition& p, const Partition& q) {
    require_same_ground(p, q);
    const auto ground = p.ground();
    std::unordered_map<RowId, std::size_t> slot;
    for (std::size_t i = 0; i < ground.size(); ++i) slot[ground[i]] = i;

    // Union-find over the ground set; each class links its members.
    std::vector<std::size_t> parent(ground.size());
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    auto unite = [&](std::size_t a, std::size_t b) { parent[find(a)] = find(b); };
    for (const Partition* part : {&p, &q})
        for (const auto& cls : part->classes())
            for (std::size_t i = 1; i < cls.size(); ++i)
                unite(slot.at(cls[i - 1]), slot.at(cls[i]));

    std::unordered_map<std::size_t, std::vector<RowId>> groups;
    for (RowId id : ground) groups[find(slot.at(id))].push_back(id);
    std::vector<std::vector<RowId>> classes;
    classes.reserve(groups.size());
    for (auto& [_, members] : groups) classes.push_back(std::move(members));
    return Partition::of_classes(std::move(classes));
}

}  // namespace sky
