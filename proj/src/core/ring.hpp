#pragma once

#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "errors.hpp"

namespace sgikit {

/// An ordered list of named indeterminates. Rings are immutable and shared;
/// polynomials refer to variables by index into their ring.
class Ring {
public:
    explicit Ring(std::vector<std::string> vars) : vars_(std::move(vars)) {
        for (int i = 0; i < static_cast<int>(vars_.size()); ++i) {
            auto [it, fresh] = index_.emplace(vars_[i], i);
            if (!fresh) throw InvalidArgument("duplicate ring variable: " + vars_[i]);
        }
    }

    int size() const { return static_cast<int>(vars_.size()); }
    const std::string& name(int i) const { return vars_.at(i); }
    const std::vector<std::string>& names() const { return vars_; }

    /// Index of a variable, or -1 if absent.
    int index(const std::string& name) const {
        auto it = index_.find(name);
        return it == index_.end() ? -1 : it->second;
    }

    bool contains(const std::string& name) const { return index(name) >= 0; }

    bool operator==(const Ring& other) const { return vars_ == other.vars_; }
    bool operator!=(const Ring& other) const { return !(*this == other); }

private:
    std::vector<std::string> vars_;
    std::unordered_map<std::string, int> index_;
};

using RingPtr = std::shared_ptr<const Ring>;

inline RingPtr make_ring(std::vector<std::string> vars) {
    return std::make_shared<const Ring>(std::move(vars));
}

/// Smallest ring containing the variables of both, keeping a's order first.
inline RingPtr ring_union(const RingPtr& a, const RingPtr& b) {
    if (*a == *b) return a;
    std::vector<std::string> vars = a->names();
    bool grew = false;
    for (const auto& v : b->names())
        if (!a->contains(v)) {
            vars.push_back(v);
            grew = true;
        }
    if (!grew && static_cast<int>(vars.size()) == a->size()) return a;
    return make_ring(std::move(vars));
}

} // namespace sgikit
