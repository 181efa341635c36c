#include "rds/rds_sim.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace rds {

std::size_t RdsSample::num_seeds() const {
    return static_cast<std::size_t>(
        std::count_if(records.begin(), records.end(), [](const Respondent& r) { return r.is_seed; }));
}

namespace {

class Recruitment {
public:
    Recruitment(const Graph& g, std::span<const std::uint8_t> traits, const RdsConfig& cfg, Rng& rng)
        : g_(g), traits_(traits), cfg_(cfg), rng_(rng), reached_(g.num_vertices(), 0) {
        if (traits.size() != g.num_vertices()) throw std::invalid_argument("trait vector length differs from graph size");
        if (cfg.coupons == 0) throw std::domain_error("coupons must be at least 1");
        if (cfg.target_size == 0) throw std::domain_error("target size must be positive");
        sample_.records.reserve(cfg.target_size);
    }

    bool full() const { return sample_.size() >= cfg_.target_size; }

    void add(Vertex v, std::optional<Vertex> recruiter, int wave) {
        reached_[v] = 1;
        ++reached_count_;
        sample_.records.push_back(Respondent{v, static_cast<int>(g_.degree(v)), traits_[v], !recruiter.has_value(),
                                             recruiter, wave});
    }

    RdsSample run(std::vector<Vertex> wave) {
        for (Vertex s : wave) {
            if (full()) break;
            if (reached_[s]) throw std::invalid_argument("duplicate seed vertex");
            add(s, std::nullopt, 0);
        }
        int depth = 0;
        std::vector<Vertex> next;
        std::vector<Vertex> eligible;
        while (!full()) {
            std::shuffle(wave.begin(), wave.end(), rng_);
            next.clear();
            for (Vertex r : wave) {
                eligible.clear();
                for (Vertex v : g_.neighbors(r))
                    if (!reached_[v]) eligible.push_back(v);
                const std::size_t k = std::min(cfg_.coupons, eligible.size());
                // Partial Fisher-Yates: the first k entries become a uniform k-subset in uniform order.
                for (std::size_t i = 0; i < k && !full(); ++i) {
                    std::uniform_int_distribution<std::size_t> pick(i, eligible.size() - 1);
                    std::swap(eligible[i], eligible[pick(rng_)]);
                    add(eligible[i], r, depth + 1);
                    next.push_back(eligible[i]);
                }
                if (full()) break;
            }
            ++depth;
            if (next.empty()) {
                if (!cfg_.replenish_seeds || reached_count_ == g_.num_vertices() || full()) break;
                const Vertex fresh = draw_unreached();
                add(fresh, std::nullopt, 0);
                next.push_back(fresh);
                depth = 0;
            }
            wave.swap(next);
        }
        return std::move(sample_);
    }

private:
    Vertex draw_unreached() {
        std::vector<Vertex> pool;
        pool.reserve(g_.num_vertices() - reached_count_);
        for (Vertex v = 0; v < g_.num_vertices(); ++v)
            if (!reached_[v]) pool.push_back(v);
        return pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng_)];
    }

    const Graph& g_;
    std::span<const std::uint8_t> traits_;
    const RdsConfig& cfg_;
    Rng& rng_;
    std::vector<std::uint8_t> reached_;
    std::size_t reached_count_ = 0;
    RdsSample sample_;
};

}  // namespace

RdsSample run_rds_from_seeds(const Graph& g, std::span<const std::uint8_t> traits, const RdsConfig& cfg,
                             std::span<const Vertex> seeds, Rng& rng) {
    if (seeds.size() > cfg.target_size) throw std::domain_error("more seeds than the target sample size");
    for (Vertex s : seeds)
        if (s >= g.num_vertices()) throw std::invalid_argument("seed vertex out of range");
    Recruitment rec(g, traits, cfg, rng);
    return rec.run(std::vector<Vertex>(seeds.begin(), seeds.end()));
}

RdsSample run_rds(const Graph& g, std::span<const std::uint8_t> traits, const RdsConfig& cfg, Rng& rng) {
    const std::size_t n = g.num_vertices();
    if (cfg.num_seeds == 0) throw std::domain_error("at least one seed is required");
    if (cfg.num_seeds > n) throw std::domain_error("more seeds than vertices");
    if (cfg.num_seeds > cfg.target_size) throw std::domain_error("more seeds than the target sample size");

    // Floyd's algorithm for a uniform m-subset, then a shuffle for uniform order.
    std::vector<Vertex> seeds;
    seeds.reserve(cfg.num_seeds);
    std::unordered_set<Vertex> chosen;
    for (std::size_t j = n - cfg.num_seeds; j < n; ++j) {
        const auto t = static_cast<Vertex>(std::uniform_int_distribution<std::size_t>(0, j)(rng));
        const Vertex pick = chosen.insert(t).second ? t : static_cast<Vertex>(j);
        if (pick != t) chosen.insert(pick);
        seeds.push_back(pick);
    }
    std::shuffle(seeds.begin(), seeds.end(), rng);
    return run_rds_from_seeds(g, traits, cfg, seeds, rng);
}

double seed_fraction(const RdsSample& s) {
    if (s.empty()) throw std::domain_error("seed fraction of an empty sample");
    return static_cast<double>(s.num_seeds()) / static_cast<double>(s.size());
}

std::string check_sample_invariants(const RdsSample& s, std::size_t target_size) {
    if (s.size() > target_size) return "sample exceeds target size";
    std::unordered_map<std::uint32_t, int> wave_of;
    wave_of.reserve(s.size());
    for (std::size_t i = 0; i < s.records.size(); ++i) {
        const Respondent& r = s.records[i];
        const std::string where = " (record " + std::to_string(i) + ")";
        if (r.is_seed != !r.recruiter.has_value()) return "seed flag disagrees with recruiter" + where;
        if (r.is_seed != (r.wave == 0)) return "seed flag disagrees with wave" + where;
        if (r.recruiter) {
            const auto it = wave_of.find(*r.recruiter);
            if (it == wave_of.end()) return "recruiter does not precede recruit" + where;
            if (it->second + 1 != r.wave) return "wave is not recruiter wave + 1" + where;
        }
        if (!wave_of.emplace(r.id, r.wave).second) return "duplicate respondent id" + where;
    }
    return {};
}

}  // namespace rds
