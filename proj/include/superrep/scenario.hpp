#pragma once

#include "superrep/rational.hpp"

#include <string>
#include <vector>

namespace superrep {

/// Finite scenario set with a strictly positive reference measure summing
/// to one. Scenarios are addressed by index; names are kept for reporting.
class ScenarioSpace {
public:
    ScenarioSpace(std::vector<std::string> names, std::vector<Rational> probabilities);

    std::size_t size() const { return names_.size(); }
    const std::vector<std::string>& names() const { return names_; }
    const std::vector<Rational>& probabilities() const { return probabilities_; }
    const Rational& probability(std::size_t scenario) const { return probabilities_[scenario]; }
    std::size_t index_of(const std::string& name) const;

private:
    std::vector<std::string> names_;
    std::vector<Rational> probabilities_;
};

/// Partition of {0..scenario_count-1} into nonempty disjoint blocks.
class Partition {
public:
    Partition(std::size_t scenario_count, std::vector<std::vector<std::size_t>> blocks);

    static Partition trivial(std::size_t scenario_count);
    static Partition discrete(std::size_t scenario_count);

    std::size_t scenario_count() const { return scenario_count_; }
    std::size_t block_count() const { return blocks_.size(); }
    const std::vector<std::size_t>& block(std::size_t k) const { return blocks_[k]; }
    const std::vector<std::vector<std::size_t>>& blocks() const { return blocks_; }

    /// Index of the unique block containing the scenario.
    std::size_t block_of(std::size_t scenario) const;

    bool operator==(const Partition& other) const {
        return scenario_count_ == other.scenario_count_ && blocks_ == other.blocks_;
    }

private:
    std::size_t scenario_count_;
    std::vector<std::vector<std::size_t>> blocks_;
    std::vector<std::size_t> block_of_;
};

/// True iff every block of `fine` is contained in some block of `coarse`.
bool refines(const Partition& coarse, const Partition& fine);

/// Partitions indexed t = 0..T with partitions[t+1] refining partitions[t],
/// partitions[0] trivial and partitions[T] discrete.
class Filtration {
public:
    explicit Filtration(std::vector<Partition> partitions);

    std::size_t horizon() const { return partitions_.size() - 1; }
    const Partition& at(std::size_t t) const { return partitions_[t]; }
    const std::vector<Partition>& partitions() const { return partitions_; }

    bool operator==(const Filtration& other) const { return partitions_ == other.partitions_; }

private:
    std::vector<Partition> partitions_;
};

/// values[t][scenario], defined for every 0 <= t <= horizon.
struct Process {
    std::size_t horizon = 0;
    std::vector<std::vector<Rational>> values;
};

void validate_process(const Process& p, std::size_t scenario_count);

/// The coarsest filtration making every listed process adapted: scenarios are
/// grouped by equality of the joint path up to each time. Throws if the
/// terminal partition is not discrete.
Filtration filtration_from_processes(std::size_t scenario_count, const std::vector<Process>& procs);

/// Probability vector: nonnegative weights summing to one.
class Measure {
public:
    explicit Measure(std::vector<Rational> weights);

    std::size_t size() const { return weights_.size(); }
    const std::vector<Rational>& weights() const { return weights_; }
    const Rational& weight(std::size_t scenario) const { return weights_[scenario]; }

    bool operator==(const Measure& other) const { return weights_ == other.weights_; }

private:
    std::vector<Rational> weights_;
};

/// Blockwise average of x under q. On blocks of q-mass zero the value is
/// exactly zero.
std::vector<Rational> conditional_expectation(const std::vector<Rational>& x,
                                              const Partition& partition, const Measure& q);

}  // namespace superrep
