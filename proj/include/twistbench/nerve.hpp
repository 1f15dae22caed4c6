#pragma once

#include <cstddef>
#include <vector>

#include "twistbench/groupoid.hpp"

namespace twistbench {

struct Limits {
    std::size_t nerve_cap = 20000;  // elements per nerve level
    int max_degree = 3;
};

// Defaults, with the nerve cap overridden by TWISTBENCH_CAP when set.
Limits default_limits();

// Composable k-tuples (γ1, ..., γk) with src(γi) = tgt(γi+1), in
// lexicographic order of morphism indices. Level 0 lists the objects.
class NerveLevel {
public:
    NerveLevel(const GradedGroupoid& g, int k, std::size_t cap);

    int level() const { return k_; }
    std::size_t size() const { return count_; }
    // pointer to the k entries of tuple i (for k = 0, one object index)
    const int* tuple(std::size_t i) const { return data_.data() + i * width(); }
    std::size_t index_of(const int* tuple) const;
    std::vector<int> tuple_vector(std::size_t i) const;

private:
    std::size_t width() const { return k_ == 0 ? 1 : static_cast<std::size_t>(k_); }

    const GradedGroupoid* g_;
    int k_;
    std::size_t count_ = 0;
    std::vector<int> data_;
    // chains_[r][x]: number of r-chains whose first morphism has target x
    std::vector<std::vector<std::size_t>> chains_;
    // offset_[r][γ]: number of r-chains starting with a morphism of the same
    // target as γ but smaller index
    std::vector<std::vector<std::size_t>> offset_same_target_;
    std::vector<std::vector<std::size_t>> offset_any_;
};

// Number of composable k-tuples, computed without enumeration.
std::size_t nerve_size(const GradedGroupoid& g, int k);

std::vector<std::vector<int>> nerve(const GradedGroupoid& g, int k, const Limits& limits = default_limits());

}  // namespace twistbench
