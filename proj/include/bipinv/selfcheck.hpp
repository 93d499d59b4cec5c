#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bipinv/oracle.hpp"

namespace bipinv {

struct SelfcheckOptions {
    std::size_t pairs = 4;
    std::size_t count = 10;
    std::uint64_t seed = 0;
    unsigned threads = 0;     // 0: hardware concurrency
    std::string replay_dir;   // where the first inconsistent instance is written; empty: current directory
    std::optional<std::size_t> inject_fault;  // corrupt this instance's inverse on purpose
};

struct InstanceResult {
    oracle::CorpusRecord record;
    bool consistent = true;
    std::string status;  // nonnegative | odd_flower, or the first discrepancy
};

struct SelfcheckResult {
    std::vector<InstanceResult> instances;  // by instance index
    std::size_t consistent = 0;
    std::string replay_path;  // set when some instance failed

    bool ok() const noexcept { return consistent == instances.size(); }
    // One line per instance, then "<consistent>/<count> consistent".
    std::string log() const;
};

// Instance i is drawn with seed options.seed + i: every fourth one is a
// matched tree, the rest unique-PM graphs with density 0.25, 0.5 or 0.75,
// and all are relabelled by a random permutation. Each runs the full
// cross-validation battery against the brute-force oracles that fit within
// their bounds.
SelfcheckResult run_selfcheck(const SelfcheckOptions& options);

// The battery for one graph; empty string when consistent. `corrupt` flips
// the sign of one inverse weight before the oracle comparison.
std::string check_instance(const BipartiteGraph& g, bool corrupt = false, std::string* status = nullptr);

oracle::CorpusRecord selfcheck_record(const SelfcheckOptions& options, std::size_t index);

}  // namespace bipinv
