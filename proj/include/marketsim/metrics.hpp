#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace marketsim {

// Population Gini of nonnegative incomes; 0 when all incomes are zero.
// Throws std::domain_error on an empty list or a negative income.
double gini(std::span<const double> incomes);

// One simulation tick's observables. consumer_surplus / producer_surplus /
// social_welfare are cumulative since tick 0; total_revenue is this tick's
// gross. gini is over cumulative creator revenues.
struct MetricsRow {
    long tick = 0;
    long total_content = 0;
    double avg_quality = 0.0;
    double avg_price = 0.0;
    double avg_consumer_utility = 0.0;
    long n_human_active = 0;
    long n_ai_active = 0;
    double total_revenue = 0.0;
    double gini = 0.0;
    double consumer_surplus = 0.0;
    double producer_surplus = 0.0;
    double social_welfare = 0.0;

    bool operator==(const MetricsRow&) const = default;

    static constexpr std::size_t kColumns = 12;
    static const std::array<const char*, kColumns>& column_names();
    std::array<double, kColumns> to_array() const;
};

// Per-column means over the windows just before and just after the AI
// introduction tick, plus their differences.
struct ShockSummary {
    std::array<double, MetricsRow::kColumns> pre_means{};
    std::array<double, MetricsRow::kColumns> post_means{};
    std::array<double, MetricsRow::kColumns> deltas{};
};

// history[i] must be the row of tick i. Throws std::domain_error when the
// history does not cover both windows.
ShockSummary welfare_shock_summary(const std::vector<MetricsRow>& history,
                                   long introduce_ai_step, long window);

}  // namespace marketsim
