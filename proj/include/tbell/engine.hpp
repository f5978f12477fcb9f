#pragma once

#include <cstdint>
#include <utility>
#include <variant>
#include <vector>

#include "tbell/core.hpp"
#include "tbell/quantum.hpp"
#include "tbell/realist.hpp"
#include "tbell/rng.hpp"

namespace tbell::engine {

struct QuantumModel {
    quantum::QubitState state;
};

struct RealistModel {
    realist::RealityDist dist;
};

struct InvasiveModel {
    realist::RealityDist dist;
    realist::Disturbance disturbance;
};

using ModelSpec = std::variant<QuantumModel, RealistModel, InvasiveModel>;

struct ExperimentPlan {
    ModelSpec model;
    SettingTriple triple;
    std::uint64_t n_throws = 0;
    std::uint64_t seed = 0;

    void validate() const {
        if (n_throws == 0) throw InvalidConfigError("n_throws must be >= 1");
    }
};

/// Ordered setting pair, uniform over the 9 combinations (repeats included).
std::pair<Setting, Setting> choose_setting_pair(CounterRng& rng);

/// Runs the plan: each throw draws its pair and outcomes from a counter
/// stream derived from (seed, throw_id), and the quantum model starts every
/// throw from a fresh copy of the plan's state. The output is a pure
/// function of the plan; n_workers only shards the work.
std::vector<ThrowRecord> run_experiment(const ExperimentPlan& plan, unsigned n_workers = 1);

}  // namespace tbell::engine
