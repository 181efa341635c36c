#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rds/graph.hpp"
#include "rds/rng.hpp"

namespace rds {

struct RdsConfig {
    std::size_t num_seeds = 10;
    std::size_t coupons = 3;
    std::size_t target_size = 300;
    bool replenish_seeds = false;
};

/// One respondent. `id` is a vertex index (or, for samples read from disk,
/// an index into the file's id table).
struct Respondent {
    std::uint32_t id = 0;
    int degree = 0;
    int y = 0;
    bool is_seed = false;
    std::optional<std::uint32_t> recruiter;
    int wave = 0;
};

/// Respondents in recruitment order.
struct RdsSample {
    std::vector<Respondent> records;

    std::size_t size() const { return records.size(); }
    bool empty() const { return records.empty(); }
    std::size_t num_seeds() const;
};

/// Seeds drawn uniformly without replacement, then synchronous coupon-limited
/// waves. Within a wave recruiters act in shuffled order; each invites up to
/// `coupons` uniformly chosen neighbours that have not yet been reached.
/// Recruitment stops at exactly `target_size` or when a wave recruits no one
/// (unless replenish_seeds is set, in which case a fresh uniform seed among
/// the unsampled vertices restarts it). Throws std::domain_error if
/// num_seeds exceeds the vertex count or the target size.
RdsSample run_rds(const Graph& g, std::span<const std::uint8_t> traits, const RdsConfig& cfg, Rng& rng);

/// Same process from a caller-chosen seed set; cfg.num_seeds is ignored.
RdsSample run_rds_from_seeds(const Graph& g, std::span<const std::uint8_t> traits, const RdsConfig& cfg,
                             std::span<const Vertex> seeds, Rng& rng);

/// (#seed records) / (sample size). Throws std::domain_error when empty.
double seed_fraction(const RdsSample& s);

/// Returns an empty string when every structural invariant holds, otherwise a
/// description of the first violation: distinct ids, seed <=> no recruiter
/// <=> wave 0, recruiters earlier with wave one less, size cap.
std::string check_sample_invariants(const RdsSample& s, std::size_t target_size);

}  // namespace rds
