#include "rolloutkit/multidim.hpp"

#include <algorithm>

#include <json.hpp>

#include "rolloutkit/errors.hpp"

namespace rolloutkit {

MultiAssignInstance MultiAssignInstance::create(
    int layers, int m, std::vector<std::int64_t> costs) {
    if (layers < 2 || m < 1) throw BadParams("need layers >= 2 and m >= 1");
    std::size_t cells = 1;
    for (int l = 0; l < layers; ++l) {
        cells *= static_cast<std::size_t>(m);
        if (cells > (std::size_t)100'000'000)
            throw BadParams("cost tensor too large");
    }
    if (costs.size() != cells) throw BadParams("cost tensor size mismatch");
    MultiAssignInstance inst;
    inst.layers_ = layers;
    inst.m_ = m;
    inst.costs_ = std::move(costs);
    for (std::int64_t c : inst.costs_)
        inst.max_abs_cost_ = std::max(inst.max_abs_cost_, std::abs(c));
    return inst;
}

std::int64_t MultiAssignInstance::cost(const std::vector<int>& tuple) const {
    if (tuple.size() != static_cast<std::size_t>(layers_))
        throw BadParams("tuple arity mismatch");
    std::size_t idx = 0;
    for (int l = 0; l < layers_; ++l) {
        if (tuple[l] < 0 || tuple[l] >= m_)
            throw BadParams("tuple index out of range");
        idx = idx * static_cast<std::size_t>(m_) + tuple[l];
    }
    return costs_[idx];
}

bool is_valid(const MultiAssignInstance& instance,
              const MultiAssignSolution& solution) {
    if (solution.maps.size() !=
        static_cast<std::size_t>(instance.layers() - 1))
        return false;
    for (const auto& map : solution.maps) {
        if (map.size() != static_cast<std::size_t>(instance.m()))
            return false;
        std::vector<char> seen(instance.m(), 0);
        for (int y : map) {
            if (y < 0 || y >= instance.m() || seen[y]) return false;
            seen[y] = 1;
        }
    }
    return true;
}

std::vector<int> solution_tuple(const MultiAssignInstance& instance,
                                const MultiAssignSolution& solution,
                                int job) {
    std::vector<int> tuple(instance.layers());
    tuple[0] = job;
    for (int l = 0; l + 1 < instance.layers(); ++l)
        tuple[l + 1] = solution.maps[l][tuple[l]];
    return tuple;
}

std::int64_t solution_cost(const MultiAssignInstance& instance,
                           const MultiAssignSolution& solution) {
    if (!is_valid(instance, solution))
        throw BadParams("solution is not a chain of permutations");
    std::int64_t total = 0;
    for (int j = 0; j < instance.m(); ++j)
        total += instance.cost(solution_tuple(instance, solution, j));
    return total;
}

void to_json(nlohmann::json& j, const MultiAssignInstance& instance) {
    j = nlohmann::json{{"layers", instance.layers()},
                       {"m", instance.m()},
                       {"costs", instance.costs()}};
}

void from_json(const nlohmann::json& j, MultiAssignInstance& instance) {
    instance = MultiAssignInstance::create(
        j.at("layers").get<int>(), j.at("m").get<int>(),
        j.at("costs").get<std::vector<std::int64_t>>());
}

void to_json(nlohmann::json& j, const MultiAssignSolution& solution) {
    j = nlohmann::json{{"maps", solution.maps}};
}

void from_json(const nlohmann::json& j, MultiAssignSolution& solution) {
    solution.maps = j.at("maps").get<std::vector<std::vector<int>>>();
}

} // namespace rolloutkit
