#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include <json.hpp>

#include "rolloutkit/errors.hpp"

namespace rolloutkit {

// Two-dimensional assignment instance: persons 0..n-1 are matched to
// distinct objects 0..n_obj-1 maximizing total benefit.  An optional mask
// restricts the allowed pairs; an empty mask means all pairs are allowed.
class Assignment2DInstance {
public:
    // Empty instance; fill via the factories (required by deserialization).
    Assignment2DInstance() = default;

    static Assignment2DInstance dense(int num_persons, int num_objects,
                                      std::vector<std::int64_t> benefits);

    // `trust_feasible` skips the perfect-matching existence check; intended
    // for instances too large to validate or known feasible by construction.
    static Assignment2DInstance masked(int num_persons, int num_objects,
                                       std::vector<std::int64_t> benefits,
                                       std::vector<std::pair<int, int>> mask,
                                       bool trust_feasible = false);

    int num_persons() const { return num_persons_; }
    int num_objects() const { return num_objects_; }
    bool is_dense() const { return mask_.empty(); }
    const std::vector<std::pair<int, int>>& mask() const { return mask_; }
    const std::vector<std::int64_t>& benefits() const { return benefits_; }

    std::int64_t benefit(int person, int object) const {
        return benefits_[static_cast<std::size_t>(person) * num_objects_ +
                         object];
    }
    bool allowed(int person, int object) const {
        return mask_.empty() ||
               allowed_flat_[static_cast<std::size_t>(person) * num_objects_ +
                             object] != 0;
    }
    // Ascending object indices allowed for a person.
    const std::vector<int>& allowed_objects(int person) const {
        return allowed_objects_[person];
    }

    std::int64_t max_abs_benefit() const { return max_abs_benefit_; }

private:
    void finish_construction(bool trust_feasible);

    int num_persons_ = 0;
    int num_objects_ = 0;
    std::vector<std::int64_t> benefits_;
    std::vector<std::pair<int, int>> mask_;
    std::vector<char> allowed_flat_;
    std::vector<std::vector<int>> allowed_objects_;
    std::int64_t max_abs_benefit_ = 0;
};

// True when every person can be matched to a distinct allowed object
// (augmenting-path matching on the mask graph).
bool has_perfect_matching(const Assignment2DInstance& instance);

void to_json(nlohmann::json& j, const Assignment2DInstance& instance);
void from_json(const nlohmann::json& j, Assignment2DInstance& instance);

} // namespace rolloutkit
