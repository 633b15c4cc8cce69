#pragma once

#include <cstdint>
#include <vector>

#include <json.hpp>

namespace rolloutkit {

// Multidimensional assignment instance: `layers` index sets of size m each
// (layer 0 is conventionally the jobs) and a cost tensor over full tuples,
// flattened row-major with the layer-0 index slowest.  A solution groups
// each job with one element per remaining layer, every element used once.
class MultiAssignInstance {
public:
    MultiAssignInstance() = default;

    static MultiAssignInstance create(int layers, int m,
                                      std::vector<std::int64_t> costs);

    int layers() const { return layers_; }
    int m() const { return m_; }
    const std::vector<std::int64_t>& costs() const { return costs_; }

    // tuple holds one index per layer
    std::int64_t cost(const std::vector<int>& tuple) const;
    std::int64_t max_abs_cost() const { return max_abs_cost_; }

private:
    int layers_ = 0;
    int m_ = 0;
    std::vector<std::int64_t> costs_;
    std::int64_t max_abs_cost_ = 0;
};

// Adjacent-layer maps: maps[p][x] is the layer p+1 element grouped with
// element x of layer p.  Each map is a permutation of 0..m-1; job j's tuple
// is obtained by chaining the maps from layer 0.
struct MultiAssignSolution {
    std::vector<std::vector<int>> maps;
};

bool is_valid(const MultiAssignInstance& instance,
              const MultiAssignSolution& solution);
std::vector<int> solution_tuple(const MultiAssignInstance& instance,
                                const MultiAssignSolution& solution, int job);
std::int64_t solution_cost(const MultiAssignInstance& instance,
                           const MultiAssignSolution& solution);

void to_json(nlohmann::json& j, const MultiAssignInstance& instance);
void from_json(const nlohmann::json& j, MultiAssignInstance& instance);
void to_json(nlohmann::json& j, const MultiAssignSolution& solution);
void from_json(const nlohmann::json& j, MultiAssignSolution& solution);

} // namespace rolloutkit
