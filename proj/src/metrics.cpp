#include "marketsim/metrics.hpp"

#include <algorithm>
#include <stdexcept>

namespace marketsim {

double gini(std::span<const double> incomes) {
    if (incomes.empty()) throw std::domain_error("gini requires a nonempty list");
    std::vector<double> sorted(incomes.begin(), incomes.end());
    double total = 0.0;
    for (double x : sorted) {
        if (x < 0.0) throw std::domain_error("gini requires nonnegative incomes");
        total += x;
    }
    if (total == 0.0) return 0.0;
    std::sort(sorted.begin(), sorted.end());
    const double n = static_cast<double>(sorted.size());
    double weighted = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        weighted += (2.0 * static_cast<double>(i + 1) - n - 1.0) * sorted[i];
    }
    return weighted / (n * total);
}

const std::array<const char*, MetricsRow::kColumns>& MetricsRow::column_names() {
    static const std::array<const char*, kColumns> names = {
        "tick", "total_content", "avg_quality", "avg_price",
        "avg_consumer_utility", "n_human_active", "n_ai_active",
        "total_revenue", "gini", "consumer_surplus", "producer_surplus",
        "social_welfare"};
    return names;
}

std::array<double, MetricsRow::kColumns> MetricsRow::to_array() const {
    return {static_cast<double>(tick), static_cast<double>(total_content),
            avg_quality, avg_price, avg_consumer_utility,
            static_cast<double>(n_human_active), static_cast<double>(n_ai_active),
            total_revenue, gini, consumer_surplus, producer_surplus,
            social_welfare};
}

ShockSummary welfare_shock_summary(const std::vector<MetricsRow>& history,
                                   long introduce_ai_step, long window) {
    if (window <= 0) throw std::domain_error("welfare_shock_summary requires window > 0");
    const long n = static_cast<long>(history.size());
    if (introduce_ai_step - window < 0 || introduce_ai_step + window > n) {
        throw std::domain_error("welfare_shock_summary: history does not span both windows");
    }
    ShockSummary summary;
    auto mean_over = [&](long begin, long end) {
        std::array<double, MetricsRow::kColumns> sums{};
        for (long t = begin; t < end; ++t) {
            const auto row = history[static_cast<std::size_t>(t)].to_array();
            for (std::size_t c = 0; c < row.size(); ++c) sums[c] += row[c];
        }
        for (double& s : sums) s /= static_cast<double>(end - begin);
        return sums;
    };
    summary.pre_means = mean_over(introduce_ai_step - window, introduce_ai_step);
    summary.post_means = mean_over(introduce_ai_step, introduce_ai_step + window);
    for (std::size_t c = 0; c < MetricsRow::kColumns; ++c) {
        summary.deltas[c] = summary.post_means[c] - summary.pre_means[c];
    }
    return summary;
}

}  // namespace marketsim
