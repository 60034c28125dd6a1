#include "superrep/scenario.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace superrep {

ScenarioSpace::ScenarioSpace(std::vector<std::string> names, std::vector<Rational> probabilities)
    : names_(std::move(names)), probabilities_(std::move(probabilities)) {
    if (names_.empty()) throw input_error("scenario space must be nonempty");
    if (probabilities_.size() != names_.size()) {
        throw input_error("one probability per scenario required");
    }
    std::set<std::string> seen;
    for (const auto& n : names_) {
        if (!seen.insert(n).second) throw input_error("duplicate scenario name '" + n + "'");
    }
    Rational total = 0;
    for (std::size_t i = 0; i < probabilities_.size(); ++i) {
        if (probabilities_[i] <= 0) {
            throw input_error("probability of '" + names_[i] + "' is not strictly positive");
        }
        total += probabilities_[i];
    }
    if (total != 1) {
        throw input_error("probabilities sum to " + to_string(total) + ", expected 1");
    }
}

std::size_t ScenarioSpace::index_of(const std::string& name) const {
    const auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) throw input_error("unknown scenario '" + name + "'");
    return static_cast<std::size_t>(it - names_.begin());
}

Partition::Partition(std::size_t scenario_count, std::vector<std::vector<std::size_t>> blocks)
    : scenario_count_(scenario_count), blocks_(std::move(blocks)) {
    block_of_.assign(scenario_count_, scenario_count_);
    std::size_t covered = 0;
    for (std::size_t k = 0; k < blocks_.size(); ++k) {
        auto& b = blocks_[k];
        if (b.empty()) throw input_error("partition block " + std::to_string(k) + " is empty");
        std::sort(b.begin(), b.end());
        for (std::size_t w : b) {
            if (w >= scenario_count_) throw input_error("scenario index out of range");
            if (block_of_[w] != scenario_count_) {
                throw input_error("partition blocks are not disjoint");
            }
            block_of_[w] = k;
            ++covered;
        }
    }
    if (covered != scenario_count_) {
        throw input_error("partition blocks do not cover the scenario set");
    }
}

Partition Partition::trivial(std::size_t scenario_count) {
    std::vector<std::size_t> all(scenario_count);
    for (std::size_t i = 0; i < scenario_count; ++i) all[i] = i;
    return Partition(scenario_count, {all});
}

Partition Partition::discrete(std::size_t scenario_count) {
    std::vector<std::vector<std::size_t>> blocks;
    for (std::size_t i = 0; i < scenario_count; ++i) blocks.push_back({i});
    return Partition(scenario_count, std::move(blocks));
}

std::size_t Partition::block_of(std::size_t scenario) const {
    if (scenario >= scenario_count_) throw input_error("scenario index out of range");
    return block_of_[scenario];
}

bool refines(const Partition& coarse, const Partition& fine) {
    if (coarse.scenario_count() != fine.scenario_count()) {
        throw input_error("partitions are over different scenario sets");
    }
    for (std::size_t k = 0; k < fine.block_count(); ++k) {
        const auto& b = fine.block(k);
        const std::size_t home = coarse.block_of(b.front());
        for (std::size_t w : b) {
            if (coarse.block_of(w) != home) return false;
        }
    }
    return true;
}

Filtration::Filtration(std::vector<Partition> partitions) : partitions_(std::move(partitions)) {
    if (partitions_.size() < 2) throw input_error("filtration needs at least times 0 and T");
    const std::size_t n = partitions_[0].scenario_count();
    for (const auto& p : partitions_) {
        if (p.scenario_count() != n) {
            throw input_error("filtration partitions are over different scenario sets");
        }
    }
    if (partitions_.front().block_count() != 1) {
        throw input_error("partition at time 0 must be trivial");
    }
    if (partitions_.back().block_count() != n) {
        throw input_error("partition at the terminal time must be discrete");
    }
    for (std::size_t t = 0; t + 1 < partitions_.size(); ++t) {
        if (!refines(partitions_[t], partitions_[t + 1])) {
            throw input_error("partition at time " + std::to_string(t + 1) +
                              " does not refine the one at time " + std::to_string(t));
        }
    }
}

void validate_process(const Process& p, std::size_t scenario_count) {
    if (p.values.size() != p.horizon + 1) {
        throw input_error("process must have one slice per time 0..T");
    }
    for (const auto& slice : p.values) {
        if (slice.size() != scenario_count) {
            throw input_error("process slice has wrong scenario count");
        }
    }
}

Filtration filtration_from_processes(std::size_t scenario_count,
                                     const std::vector<Process>& procs) {
    if (procs.empty()) throw input_error("need at least one process");
    const std::size_t horizon = procs.front().horizon;
    for (const auto& p : procs) {
        if (p.horizon != horizon) throw input_error("processes have different horizons");
        validate_process(p, scenario_count);
    }

    std::vector<Partition> parts;
    for (std::size_t t = 0; t <= horizon; ++t) {
        // group scenarios by the joint path (all processes, times 0..t)
        std::map<std::vector<Rational>, std::vector<std::size_t>> groups;
        for (std::size_t w = 0; w < scenario_count; ++w) {
            std::vector<Rational> key;
            for (std::size_t s = 0; s <= t; ++s) {
                for (const auto& p : procs) key.push_back(p.values[s][w]);
            }
            groups[key].push_back(w);
        }
        std::vector<std::vector<std::size_t>> blocks;
        for (auto& [key, b] : groups) blocks.push_back(std::move(b));
        std::sort(blocks.begin(), blocks.end());
        parts.emplace_back(scenario_count, std::move(blocks));
    }
    if (parts.front().block_count() != 1) {
        throw input_error("processes are not constant at time 0");
    }
    if (parts.back().block_count() != scenario_count) {
        throw input_error("terminal partition is not discrete: "
                          "the processes do not separate all scenarios at time T");
    }
    return Filtration(std::move(parts));
}

Measure::Measure(std::vector<Rational> weights) : weights_(std::move(weights)) {
    Rational total = 0;
    for (const auto& w : weights_) {
        if (w < 0) throw input_error("measure weights must be nonnegative");
        total += w;
    }
    if (total != 1) {
        throw input_error("measure weights sum to " + to_string(total) + ", expected 1");
    }
}

std::vector<Rational> conditional_expectation(const std::vector<Rational>& x,
                                              const Partition& partition, const Measure& q) {
    if (x.size() != partition.scenario_count() || q.size() != partition.scenario_count()) {
        throw input_error("conditional expectation inputs are over different scenario sets");
    }
    std::vector<Rational> out(x.size(), Rational(0));
    for (std::size_t k = 0; k < partition.block_count(); ++k) {
        const auto& block = partition.block(k);
        Rational mass = 0, acc = 0;
        for (std::size_t w : block) {
            mass += q.weight(w);
            acc += q.weight(w) * x[w];
        }
        const Rational value = mass == 0 ? Rational(0) : acc / mass;
        for (std::size_t w : block) out[w] = value;
    }
    return out;
}

}  // namespace superrep
