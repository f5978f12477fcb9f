#include "tbell/engine.hpp"

#include <algorithm>
#include <thread>

namespace tbell::engine {

namespace {

ThrowRecord run_throw(const ExperimentPlan& plan, std::uint64_t throw_id) {
    CounterRng rng(plan.seed, throw_id);
    const auto [s1, s2] = choose_setting_pair(rng);
    const Direction& d1 = plan.triple.direction(s1);
    const Direction& d2 = plan.triple.direction(s2);
    return std::visit(
        [&](const auto& model) -> ThrowRecord {
            using M = std::decay_t<decltype(model)>;
            if constexpr (std::is_same_v<M, QuantumModel>) {
                return quantum::sample_throw(model.state, {s1, d1}, {s2, d2}, rng, throw_id);
            } else if constexpr (std::is_same_v<M, RealistModel>) {
                return realist::sample_throw(model.dist, {s1, s2}, rng, throw_id);
            } else {
                return realist::invasive_sample_throw(model.dist, model.disturbance, {s1, s2},
                                                      rng, throw_id);
            }
        },
        plan.model);
}

}  // namespace

std::pair<Setting, Setting> choose_setting_pair(CounterRng& rng) {
    const std::uint32_t k = rng.uniform_below(9);
    return {static_cast<Setting>(k / 3), static_cast<Setting>(k % 3)};
}

std::vector<ThrowRecord> run_experiment(const ExperimentPlan& plan, unsigned n_workers) {
    plan.validate();
    const std::uint64_t n = plan.n_throws;
    std::vector<ThrowRecord> records(n);

    const unsigned workers = std::max(1u, std::min<unsigned>(n_workers, n));
    if (workers == 1) {
        for (std::uint64_t i = 0; i < n; ++i) records[i] = run_throw(plan, i);
        return records;
    }

    // Each throw's randomness comes from its own (seed, throw_id) stream, so
    // disjoint shards produce the same records as a serial run.
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::uint64_t chunk = (n + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        const std::uint64_t begin = w * chunk;
        const std::uint64_t end = std::min(n, begin + chunk);
        if (begin >= end) break;
        pool.emplace_back([&plan, &records, begin, end] {
            for (std::uint64_t i = begin; i < end; ++i) records[i] = run_throw(plan, i);
        });
    }
    for (auto& t : pool) t.join();
    return records;
}

}  // namespace tbell::engine
