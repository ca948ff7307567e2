#pragma once

#include <chrono>
#include <compare>
#include <string>
#include <string_view>
#include <vector>

namespace textnet {

enum class PeriodKind { quarter, month, year, full_span };

/// A calendar aggregation bucket. `ordinal` is the quarter (1-4) or month
/// (1-12); it is fixed at 1 for years and for the full span.
struct Period {
    PeriodKind kind = PeriodKind::quarter;
    int year = 0;
    int ordinal = 1;

    friend bool operator==(const Period&, const Period&) = default;
    friend auto operator<=>(const Period&, const Period&) = default;
};

PeriodKind parse_period_kind(std::string_view name);
std::string_view to_string(PeriodKind kind);

/// "2007Q1", "2007-01", "2007" or "all".
std::string to_label(const Period& p);
/// Inverse of to_label; the kind is inferred from the label shape.
Period parse_period(std::string_view label);

Period assign_period(std::chrono::year_month_day date, PeriodKind kind);

/// Months since 0000-01 of the first month covered by the period.
int start_month_index(const Period& p);

Period next_period(const Period& p);

/// Every period from `first` to `last` inclusive, in order.
std::vector<Period> period_range(const Period& first, const Period& last);

} // namespace textnet
