#include "rolloutkit/assignment2d.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

#include <json.hpp>

#include "rolloutkit/errors.hpp"

namespace rolloutkit {

Assignment2DInstance Assignment2DInstance::dense(
    int num_persons, int num_objects, std::vector<std::int64_t> benefits) {
    Assignment2DInstance inst;
    if (num_persons <= 0 || num_objects < num_persons)
        throw BadParams("assignment needs 0 < persons <= objects");
    if (benefits.size() !=
        static_cast<std::size_t>(num_persons) * num_objects)
        throw BadParams("benefit matrix size mismatch");
    inst.num_persons_ = num_persons;
    inst.num_objects_ = num_objects;
    inst.benefits_ = std::move(benefits);
    inst.finish_construction(true);
    return inst;
}

Assignment2DInstance Assignment2DInstance::masked(
    int num_persons, int num_objects, std::vector<std::int64_t> benefits,
    std::vector<std::pair<int, int>> mask, bool trust_feasible) {
    Assignment2DInstance inst;
    if (num_persons <= 0 || num_objects < num_persons)
        throw BadParams("assignment needs 0 < persons <= objects");
    if (benefits.size() !=
        static_cast<std::size_t>(num_persons) * num_objects)
        throw BadParams("benefit matrix size mismatch");
    if (mask.empty())
        throw BadParams("masked instance needs at least one allowed pair");
    for (const auto& [i, j] : mask)
        if (i < 0 || i >= num_persons || j < 0 || j >= num_objects)
            throw BadParams("mask pair out of range");
    inst.num_persons_ = num_persons;
    inst.num_objects_ = num_objects;
    inst.benefits_ = std::move(benefits);
    inst.mask_ = std::move(mask);
    inst.finish_construction(trust_feasible);
    return inst;
}

void Assignment2DInstance::finish_construction(bool trust_feasible) {
    if (!mask_.empty()) {
        allowed_flat_.assign(
            static_cast<std::size_t>(num_persons_) * num_objects_, 0);
        for (const auto& [i, j] : mask_)
            allowed_flat_[static_cast<std::size_t>(i) * num_objects_ + j] = 1;
    }
    allowed_objects_.assign(num_persons_, {});
    max_abs_benefit_ = 0;
    for (int i = 0; i < num_persons_; ++i) {
        for (int j = 0; j < num_objects_; ++j) {
            if (!allowed(i, j)) continue;
            allowed_objects_[i].push_back(j);
            max_abs_benefit_ =
                std::max(max_abs_benefit_, std::abs(benefit(i, j)));
        }
        if (allowed_objects_[i].empty())
            throw IsolatedPerson("person " + std::to_string(i) +
                                 " has no allowed objects");
    }
    if (!trust_feasible && !has_perfect_matching(*this))
        throw Infeasible("mask admits no complete assignment");
}

namespace {

bool try_assign(const Assignment2DInstance& inst, int person,
                std::vector<char>& visited, std::vector<int>& object_owner) {
    for (int j : inst.allowed_objects(person)) {
        if (visited[j]) continue;
        visited[j] = 1;
        if (object_owner[j] < 0 ||
            try_assign(inst, object_owner[j], visited, object_owner)) {
            object_owner[j] = person;
            return true;
        }
    }
    return false;
}

} // namespace

bool has_perfect_matching(const Assignment2DInstance& instance) {
    std::vector<int> object_owner(instance.num_objects(), -1);
    for (int i = 0; i < instance.num_persons(); ++i) {
        std::vector<char> visited(instance.num_objects(), 0);
        if (!try_assign(instance, i, visited, object_owner)) return false;
    }
    return true;
}

void to_json(nlohmann::json& j, const Assignment2DInstance& instance) {
    j = nlohmann::json{{"persons", instance.num_persons()},
                       {"objects", instance.num_objects()},
                       {"benefits", instance.benefits()}};
    if (!instance.is_dense()) j["mask"] = instance.mask();
}

void from_json(const nlohmann::json& j, Assignment2DInstance& instance) {
    const int n = j.at("persons").get<int>();
    const int n_obj = j.at("objects").get<int>();
    auto benefits = j.at("benefits").get<std::vector<std::int64_t>>();
    if (j.contains("mask")) {
        auto mask = j.at("mask").get<std::vector<std::pair<int, int>>>();
        instance = Assignment2DInstance::masked(n, n_obj, std::move(benefits),
                                                std::move(mask));
    } else {
        instance =
            Assignment2DInstance::dense(n, n_obj, std::move(benefits));
    }
}

} // namespace rolloutkit
