#include "textnet/period.hpp"

#include <charconv>

#include "textnet/error.hpp"

namespace textnet {

namespace {

int parse_int(std::string_view s, std::string_view whole) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
        throw InputError("invalid period label '" + std::string(whole) + "'");
    return v;
}

void check(const Period& p) {
    const int hi = p.kind == PeriodKind::quarter ? 4 : p.kind == PeriodKind::month ? 12 : 1;
    if (p.ordinal < 1 || p.ordinal > hi)
        throw InputError("period ordinal out of range: " + std::to_string(p.ordinal));
}

} // namespace

PeriodKind parse_period_kind(std::string_view name) {
    if (name == "quarter") return PeriodKind::quarter;
    if (name == "month") return PeriodKind::month;
    if (name == "year") return PeriodKind::year;
    if (name == "full-span" || name == "full" || name == "all") return PeriodKind::full_span;
    throw InputError("unknown period kind '" + std::string(name) + "'");
}

std::string_view to_string(PeriodKind kind) {
    switch (kind) {
    case PeriodKind::quarter: return "quarter";
    case PeriodKind::month: return "month";
    case PeriodKind::year: return "year";
    case PeriodKind::full_span: return "full-span";
    }
    return "?";
}

std::string to_label(const Period& p) {
    switch (p.kind) {
    case PeriodKind::quarter:
        return std::to_string(p.year) + "Q" + std::to_string(p.ordinal);
    case PeriodKind::month: {
        std::string m = std::to_string(p.ordinal);
        return std::to_string(p.year) + "-" + (m.size() == 1 ? "0" + m : m);
    }
    case PeriodKind::year:
        return std::to_string(p.year);
    case PeriodKind::full_span:
        return "all";
    }
    return {};
}

Period parse_period(std::string_view label) {
    if (label == "all") return {PeriodKind::full_span, 0, 1};
    Period p;
    if (auto q = label.find('Q'); q != std::string_view::npos) {
        p = {PeriodKind::quarter, parse_int(label.substr(0, q), label),
             parse_int(label.substr(q + 1), label)};
    } else if (auto d = label.find('-'); d != std::string_view::npos) {
        p = {PeriodKind::month, parse_int(label.substr(0, d), label),
             parse_int(label.substr(d + 1), label)};
    } else {
        p = {PeriodKind::year, parse_int(label, label), 1};
    }
    check(p);
    return p;
}

Period assign_period(std::chrono::year_month_day date, PeriodKind kind) {
    if (!date.ok()) throw InputError("invalid calendar date");
    const int y = static_cast<int>(date.year());
    const int m = static_cast<int>(static_cast<unsigned>(date.month()));
    switch (kind) {
    case PeriodKind::quarter: return {kind, y, (m - 1) / 3 + 1};
    case PeriodKind::month: return {kind, y, m};
    case PeriodKind::year: return {kind, y, 1};
    case PeriodKind::full_span: return {kind, 0, 1};
    }
    return {};
}

int start_month_index(const Period& p) {
    switch (p.kind) {
    case PeriodKind::quarter: return p.year * 12 + (p.ordinal - 1) * 3;
    case PeriodKind::month: return p.year * 12 + p.ordinal - 1;
    case PeriodKind::year: return p.year * 12;
    case PeriodKind::full_span: return 0;
    }
    return 0;
}

Period next_period(const Period& p) {
    switch (p.kind) {
    case PeriodKind::quarter:
        return p.ordinal == 4 ? Period{p.kind, p.year + 1, 1} : Period{p.kind, p.year, p.ordinal + 1};
    case PeriodKind::month:
        return p.ordinal == 12 ? Period{p.kind, p.year + 1, 1} : Period{p.kind, p.year, p.ordinal + 1};
    case PeriodKind::year:
        return {p.kind, p.year + 1, 1};
    case PeriodKind::full_span:
        break;
    }
    throw Error("the full span has no successor period");
}

std::vector<Period> period_range(const Period& first, const Period& last) {
    if (first.kind != last.kind) throw Error("period_range: mixed period kinds");
    std::vector<Period> out;
    if (last < first) return out;
    if (first.kind == PeriodKind::full_span) return {first};
    for (Period p = first;; p = next_period(p)) {
        out.push_back(p);
        if (p == last) break;
    }
    return out;
}

} // namespace textnet
