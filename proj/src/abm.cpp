#include "marketsim/abm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "marketsim/model.hpp"

namespace marketsim {

namespace {

constexpr double kQualityFloor = 1e-3;
// Initial creator (quality, price) draws use a small fixed spread; the
// heterogeneity knob is about consumer preference diversity.
constexpr double kCreatorSpread = 0.25;

void require(bool ok, const char* field, const char* constraint) {
    if (!ok) {
        throw std::invalid_argument(std::string("sim_config.") + field +
                                    " must be " + constraint);
    }
}

double uniform_around(std::mt19937_64& rng, double mean, double spread) {
    std::uniform_real_distribution<double> dist(mean * (1.0 - spread),
                                                mean * (1.0 + spread));
    return dist(rng);
}

}  // namespace

void SimConfig::validate() const {
    require(n_human_creators > 0, "n_human_creators", "> 0");
    require(n_ai_creators >= 0, "n_ai_creators", ">= 0");
    require(n_consumers > 0, "n_consumers", "> 0");
    require(steps > 0, "steps", "> 0");
    require(introduce_ai_step >= 0, "introduce_ai_step", ">= 0");
    require(introduce_ai_step <= steps, "introduce_ai_step", "<= steps");
    require(platform_fee >= 0.0 && platform_fee < 1.0, "platform_fee", "in [0, 1)");
    require(recommend_bias >= 0.0, "recommend_bias", ">= 0");
    require(subsidy >= 0.0, "subsidy", ">= 0");
    require(price_sensitivity > 0.0, "price_sensitivity", "> 0");
    require(overload_threshold > 0.0, "overload_threshold", "> 0");
    require(slate_size > 0, "slate_size", "> 0");
    require(learning_rate > 0.0 && learning_rate <= 1.0, "learning_rate", "in (0, 1]");
    require(exit_window > 0, "exit_window", "> 0");
    require(adjust_block > 0, "adjust_block", "> 0");
    require(ai_quality_mean > 0.0, "ai_quality_mean", "> 0");
    require(ai_quality_growth >= 0.0, "ai_quality_growth", ">= 0");
    require(heterogeneity >= 0.0 && heterogeneity < 1.0, "heterogeneity", "in [0, 1)");
    model_params.validate();
}

SimState init_sim(const SimConfig& config) {
    config.validate();
    const ModelParams& mp = config.model_params;

    SimState state;
    state.rng.seed(config.seed);

    // Creators start below the representative consumer optimum and climb
    // toward it; quality stays a good for consumers even under mild overload.
    const double q_anchor = 0.6 * optimal_quality(mp);
    // Start prices at half the representative choke price so the initial
    // market clears; hill climbing takes it from there.
    const double p_anchor =
        std::max(0.1, 0.5 * utility(q_anchor, mp) / config.price_sensitivity);

    state.creators.reserve(static_cast<std::size_t>(config.n_human_creators) +
                           static_cast<std::size_t>(config.n_ai_creators));
    int next_id = 0;
    for (int i = 0; i < config.n_human_creators; ++i) {
        CreatorState c;
        c.id = next_id++;
        c.kind = CreatorKind::Human;
        c.quality = std::max(kQualityFloor,
                             uniform_around(state.rng, q_anchor, kCreatorSpread));
        c.price = std::clamp(uniform_around(state.rng, p_anchor, kCreatorSpread),
                             mp.p_min, mp.p_max);
        c.active = true;
        state.creators.push_back(c);
    }
    for (int i = 0; i < config.n_ai_creators; ++i) {
        CreatorState c;
        c.id = next_id++;
        c.kind = CreatorKind::AI;
        c.quality = std::max(
            kQualityFloor,
            uniform_around(state.rng, config.ai_quality_mean, kCreatorSpread));
        // AI creators price at the representative consumer's standalone value
        // for their quality, ignoring crowding; most of the time that leaves
        // them shelf filler rather than sales.
        c.price = std::max(mp.c_ai, utility(c.quality, mp));
        c.active = false;
        state.creators.push_back(c);
    }
    state.consumers.reserve(static_cast<std::size_t>(config.n_consumers));
    for (int i = 0; i < config.n_consumers; ++i) {
        ConsumerState u;
        u.id = i;
        u.theta_u = uniform_around(state.rng, mp.theta_u, config.heterogeneity);
        u.delta_u = uniform_around(state.rng, mp.delta_u, config.heterogeneity);
        state.consumers.push_back(u);
    }
    return state;
}

// Whether a creator brings an item to market this tick. Mirrors the analytic
// AI supply rule: an AI creator sits out while its net-of-fee price is below
// marginal cost.
bool supplying(const CreatorState& c, const SimConfig& config) {
    if (!c.active) return false;
    if (c.kind == CreatorKind::AI &&
        c.price * (1.0 - config.platform_fee) < config.model_params.c_ai) {
        return false;
    }
    return true;
}

std::vector<int> recommend(SimState& state, const ConsumerState& consumer,
                           const SimConfig& config) {
    (void)consumer;  // slates depend on the shared RNG stream, not the consumer
    if (state.weights_cache_tick != state.tick) {
        state.cached_candidates.clear();
        state.cached_weights.clear();
        for (const CreatorState& c : state.creators) {
            if (!supplying(c, config)) continue;
            state.cached_candidates.push_back(static_cast<int>(&c - state.creators.data()));
            state.cached_weights.push_back(std::pow(c.quality, config.recommend_bias));
        }
        state.weights_cache_tick = state.tick;
    }
    std::vector<int> candidates = state.cached_candidates;
    std::vector<double> weights = state.cached_weights;
    std::vector<int> slate;
    const int slots = std::min<int>(config.slate_size, static_cast<int>(candidates.size()));
    slate.reserve(static_cast<std::size_t>(slots));
    for (int k = 0; k < slots; ++k) {
        double total = std::accumulate(weights.begin(), weights.end(), 0.0);
        std::size_t pick = 0;
        if (total > 0.0) {
            std::uniform_real_distribution<double> dist(0.0, total);
            const double u = dist(state.rng);
            double cum = 0.0;
            for (std::size_t i = 0; i < weights.size(); ++i) {
                cum += weights[i];
                if (u < cum) {
                    pick = i;
                    break;
                }
                pick = i;  // numeric slack lands on the last remaining item
            }
        }
        slate.push_back(candidates[pick]);
        candidates.erase(candidates.begin() + static_cast<std::ptrdiff_t>(pick));
        weights.erase(weights.begin() + static_cast<std::ptrdiff_t>(pick));
    }
    return slate;
}

PurchaseDecision consumer_choose(const ConsumerState& consumer,
                                 const std::vector<int>& slate,
                                 const std::vector<CreatorState>& creators,
                                 long total_content, const SimConfig& config) {
    const double excess =
        std::max(0.0, static_cast<double>(total_content) - config.overload_threshold);
    const double overload = 1.0 + excess / config.overload_threshold;

    PurchaseDecision decision;
    double best = -std::numeric_limits<double>::infinity();
    for (int idx : slate) {
        const CreatorState& c = creators[static_cast<std::size_t>(idx)];
        const double score = consumer.theta_u * std::log(c.quality) -
                             0.5 * consumer.delta_u * overload * c.quality * c.quality -
                             config.price_sensitivity * c.price;
        if (score > best) {
            best = score;
            decision.creator_index = idx;
        }
    }
    if (best > 0.0) {
        decision.utility = best;
    } else {
        decision.creator_index = -1;
        decision.utility = 0.0;
    }
    return decision;
}

void creator_adjust(CreatorState& creator, double last_profit, double prev_profit,
                    const SimConfig& config) {
    if (last_profit <= prev_profit) {
        // The variable moved last time is the one not up next.
        if (creator.adjust_price_next) {
            creator.quality_direction = -creator.quality_direction;
        } else {
            creator.price_direction = -creator.price_direction;
        }
    }
    if (creator.adjust_price_next) {
        creator.price += creator.price_direction * config.learning_rate * creator.price;
        creator.price = std::clamp(creator.price, config.model_params.p_min,
                                   config.model_params.p_max);
    } else {
        creator.quality +=
            creator.quality_direction * config.learning_rate * creator.quality;
        creator.quality = std::max(kQualityFloor, creator.quality);
    }
    creator.adjust_price_next = !creator.adjust_price_next;
}

void exit_check(CreatorState& creator, const SimConfig& config) {
    if (creator.kind != CreatorKind::Human || !creator.active) return;
    if (static_cast<long>(creator.trailing_profits.size()) < config.exit_window) return;
    const double mean =
        std::accumulate(creator.trailing_profits.begin(), creator.trailing_profits.end(),
                        0.0) /
        static_cast<double>(creator.trailing_profits.size());
    if (mean < config.exit_threshold) creator.active = false;
}

MetricsRow record_tick(const SimState& state) {
    MetricsRow row;
    row.tick = state.tick;
    row.total_content = state.total_content;
    row.total_revenue = state.tick_revenue;
    row.avg_consumer_utility = state.tick_avg_utility;
    row.consumer_surplus = state.consumer_surplus;
    row.producer_surplus = state.producer_surplus;
    row.social_welfare = state.consumer_surplus + state.producer_surplus;

    double quality_sum = 0.0, price_sum = 0.0;
    long active = 0;
    std::vector<double> incomes;
    incomes.reserve(state.creators.size());
    for (const CreatorState& c : state.creators) {
        if (c.active) {
            ++active;
            quality_sum += c.quality;
            price_sum += c.price;
            if (c.kind == CreatorKind::Human) ++row.n_human_active;
            else ++row.n_ai_active;
        }
        // Never-activated AI creators are not market participants yet.
        if (c.kind == CreatorKind::Human || c.active) {
            incomes.push_back(c.cumulative_revenue);
        }
    }
    if (active > 0) {
        row.avg_quality = quality_sum / static_cast<double>(active);
        row.avg_price = price_sum / static_cast<double>(active);
    }
    row.gini = incomes.empty() ? 0.0 : gini(incomes);
    return row;
}

void step(SimState& state, const SimConfig& config) {
    if (state.tick >= config.steps) {
        throw std::logic_error("step: simulation already ran its configured steps");
    }
    const ModelParams& mp = config.model_params;

    // 1. AI activation: staggered adoption, one AI creator per tick from
    // introduce_ai_step onward.
    if (state.tick >= config.introduce_ai_step) {
        int slots = state.tick - config.introduce_ai_step + 1;
        for (CreatorState& c : state.creators) {
            if (c.kind == CreatorKind::AI && slots > 0) {
                c.active = true;
                --slots;
            }
        }
    }

    // 2. Production: one item per supplying creator at its current
    // (quality, price).
    long produced = 0;
    for (CreatorState& c : state.creators) {
        if (!supplying(c, config)) continue;
        c.content_count += 1;
        ++produced;
        if (c.kind == CreatorKind::AI) c.quality += config.ai_quality_growth;
    }
    state.total_content += produced;

    // 3 + 4. Recommendation and consumption, consumers in ascending id order.
    std::vector<double> gross(state.creators.size(), 0.0);
    double tick_utility = 0.0;
    for (ConsumerState& consumer : state.consumers) {
        const std::vector<int> slate = recommend(state, consumer, config);
        if (slate.empty()) continue;
        const PurchaseDecision d =
            consumer_choose(consumer, slate, state.creators, state.total_content, config);
        if (d.creator_index >= 0) {
            gross[static_cast<std::size_t>(d.creator_index)] +=
                state.creators[static_cast<std::size_t>(d.creator_index)].price;
            consumer.cumulative_utility += d.utility;
            tick_utility += d.utility;
        }
    }

    // 5. Settlement.
    double tick_gross = 0.0;
    double ps_increment = 0.0;
    for (CreatorState& c : state.creators) {
        const double g = gross[static_cast<std::size_t>(c.id)];
        tick_gross += g;
        c.cumulative_revenue += g;
        state.ledger.fees_collected += g * config.platform_fee;
        if (!supplying(c, config)) continue;
        const double net = g * (1.0 - config.platform_fee);
        double profit;
        if (c.kind == CreatorKind::Human) {
            state.ledger.subsidies_paid += config.subsidy;
            profit = net + config.subsidy - human_cost(c.quality, mp);
        } else {
            profit = net - mp.c_ai;  // one item produced this tick
        }
        ps_increment += profit;
        c.trailing_profits.push_back(profit);
        while (static_cast<long>(c.trailing_profits.size()) > config.exit_window) {
            c.trailing_profits.pop_front();
        }
        c.prev_profit = c.last_profit;
        c.last_profit = profit;
        c.block_profit += profit;
        c.block_fill += 1;
    }
    state.consumer_surplus += tick_utility;
    state.producer_surplus += ps_increment;
    state.tick_revenue = tick_gross;
    state.tick_avg_utility = tick_utility / static_cast<double>(config.n_consumers);

    // 6. Adjustment (active humans only; AI prices stay at cost). A move is
    // judged on a block of ticks so slate randomness averages out.
    for (CreatorState& c : state.creators) {
        if (c.active && c.kind == CreatorKind::Human &&
            c.block_fill >= config.adjust_block) {
            creator_adjust(c, c.block_profit, c.prev_block_profit, config);
            c.prev_block_profit = c.block_profit;
            c.block_profit = 0.0;
            c.block_fill = 0;
        }
    }

    // 7. Exit checks.
    for (CreatorState& c : state.creators) exit_check(c, config);

    // 8. Metrics.
    state.metrics_history.push_back(record_tick(state));
    state.tick += 1;
}

SimState run_sim(const SimConfig& config) {
    SimState state = init_sim(config);
    for (long t = 0; t < config.steps; ++t) step(state, config);
    return state;
}

}  // namespace marketsim
