#ifndef EAMATCH_CATALOG_HPP
#define EAMATCH_CATALOG_HPP

#include <cstddef>
#include <string>
#include <unordered_map>
#include <vector>

#include "eamatch/error.hpp"

namespace eamatch {

/// Ordered set of entity identifiers with O(1) id -> index lookup.
/// Entries appended by pad_to_square are flagged as dummies so matchers
/// can discard pairs that involve them.
class EntityCatalog {
public:
    EntityCatalog() = default;

    explicit EntityCatalog(std::vector<std::string> ids) {
        for (auto& id : ids) add(std::move(id));
    }

    std::size_t add(std::string id, bool dummy = false) {
        auto [it, inserted] = index_.emplace(id, ids_.size());
        if (!inserted) throw DataError("duplicate entity id: " + id);
        ids_.push_back(std::move(id));
        dummy_.push_back(dummy);
        return ids_.size() - 1;
    }

    /// Index of `id`, inserting it if unseen.
    std::size_t intern(const std::string& id) {
        auto it = index_.find(id);
        if (it != index_.end()) return it->second;
        return add(id);
    }

    std::size_t size() const { return ids_.size(); }
    const std::string& id(std::size_t k) const { return ids_.at(k); }
    const std::vector<std::string>& ids() const { return ids_; }
    bool is_dummy(std::size_t k) const { return dummy_.at(k); }

    bool contains(const std::string& id) const { return index_.count(id) > 0; }

    std::size_t index_of(const std::string& id) const {
        auto it = index_.find(id);
        if (it == index_.end()) throw UsageError("unknown entity id: " + id);
        return it->second;
    }

private:
    std::vector<std::string> ids_;
    std::vector<bool> dummy_;
    std::unordered_map<std::string, std::size_t> index_;
};

} // namespace eamatch

#endif
