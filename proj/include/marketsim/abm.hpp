#pragma once

#include <cstdint>
#include <deque>
#include <random>
#include <vector>

#include "marketsim/metrics.hpp"
#include "marketsim/params.hpp"

namespace marketsim {

struct SimConfig {
    int n_human_creators = 50;
    int n_ai_creators = 40;
    int n_consumers = 400;
    long steps = 500;
    long introduce_ai_step = 100;
    double platform_fee = 0.10;      // fraction of gross revenue, [0, 1)
    double recommend_bias = 1.0;     // slate sampling weight exponent on quality
    double subsidy = 0.0;            // per-tick payment to each active human creator
    double price_sensitivity = 1.0;  // consumer price weight in the purchase score
    double overload_threshold = 10000.0;  // content count where overload kicks in
    int slate_size = 3;
    double learning_rate = 0.04;     // creator hill-climbing step size, (0, 1]
    int adjust_block = 5;            // ticks of profit pooled per hill-climb move
    long exit_window = 60;           // trailing ticks averaged for exit decisions
    double exit_threshold = -0.05;     // humans exit below this trailing mean profit
    double ai_quality_mean = 3.0;
    double ai_quality_growth = 0.002;  // per-tick AI quality drift
    double heterogeneity = 0.2;      // relative spread of consumer preference draws
    std::uint64_t seed = 1;
    ModelParams model_params{};

    void validate() const;  // throws std::invalid_argument naming the field
};

enum class CreatorKind { Human, AI };

struct CreatorState {
    int id = 0;
    CreatorKind kind = CreatorKind::Human;
    double quality = 1.0;  // > 0 while active
    double price = 1.0;    // >= 0
    double cumulative_revenue = 0.0;  // gross
    std::deque<double> trailing_profits;
    bool active = false;
    long content_count = 0;

    // Hill-climbing bookkeeping (humans only).
    int price_direction = 1;
    int quality_direction = 1;
    bool adjust_price_next = true;
    double last_profit = 0.0;
    double prev_profit = 0.0;
    // Profit accumulated since the last adjustment, compared against the
    // previous block so one noisy tick cannot flip the climb direction.
    double block_profit = 0.0;
    double prev_block_profit = 0.0;
    int block_fill = 0;

    bool operator==(const CreatorState&) const = default;
};

struct ConsumerState {
    int id = 0;
    double theta_u = 1.0;
    double delta_u = 1.0;
    double cumulative_utility = 0.0;

    bool operator==(const ConsumerState&) const = default;
};

struct PlatformLedger {
    double fees_collected = 0.0;
    double subsidies_paid = 0.0;
};

struct SimState {
    long tick = 0;
    std::vector<CreatorState> creators;   // humans first, then AI, ascending id
    std::vector<ConsumerState> consumers;
    PlatformLedger ledger;
    std::mt19937_64 rng;
    std::vector<MetricsRow> metrics_history;
    long total_content = 0;
    double consumer_surplus = 0.0;  // cumulative realized scores
    double producer_surplus = 0.0;  // cumulative net revenue + subsidy - cost
    double tick_revenue = 0.0;      // gross of the last executed tick
    double tick_avg_utility = 0.0;  // mean realized score of the last tick

    // Slate-weight cache, rebuilt once per tick (qualities are fixed during
    // the consumption phase).
    long weights_cache_tick = -1;
    std::vector<int> cached_candidates;
    std::vector<double> cached_weights;
};

struct PurchaseDecision {
    int creator_index = -1;  // -1 when no purchase
    double utility = 0.0;    // realized score, 0 when no purchase
};

SimState init_sim(const SimConfig& config);

// Advances one tick: AI activation, production, recommendation,
// consumption, settlement, adjustment, exit checks, metrics.
// Throws std::logic_error when stepping past config.steps.
void step(SimState& state, const SimConfig& config);

// Weighted slate sampling without replacement, probability proportional to
// quality^recommend_bias over active creators. Returns creator indices.
std::vector<int> recommend(SimState& state, const ConsumerState& consumer,
                           const SimConfig& config);

// Picks the slate item with the highest overload-adjusted surplus score;
// buys only when that score is positive.
PurchaseDecision consumer_choose(const ConsumerState& consumer,
                                 const std::vector<int>& slate,
                                 const std::vector<CreatorState>& creators,
                                 long total_content, const SimConfig& config);

// Derivative-free hill climbing over (price, quality), alternating which
// variable moves each call; keeps the last direction when profit improved.
void creator_adjust(CreatorState& creator, double last_profit, double prev_profit,
                    const SimConfig& config);

// Deactivates a human creator whose trailing-mean profit fell below
// exit_threshold. Permanent; AI creators never exit.
void exit_check(CreatorState& creator, const SimConfig& config);

MetricsRow record_tick(const SimState& state);

// init_sim plus steps ticks.
SimState run_sim(const SimConfig& config);

}  // namespace marketsim
