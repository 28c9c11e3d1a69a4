#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace forensics {

// Calendar date, no timezone semantics. Stored as days since 1970-01-01
// so that date differences are exact integer day counts.
struct Date {
    std::int64_t days_since_epoch = 0;

    friend auto operator<=>(const Date&, const Date&) = default;
};

// days_from_civil / civil_from_days follow the standard proleptic
// Gregorian conversion (Hinnant's algorithm).
inline std::int64_t days_from_civil(int y, int m, int d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153u * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

inline void civil_from_days(std::int64_t z, int& y, int& m, int& d) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    y = static_cast<int>(yoe) + static_cast<int>(era) * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    d = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
    m = static_cast<int>(mp + (mp < 10 ? 3 : -9));
    y += m <= 2;
}

// Parses strict ISO-8601 calendar dates (YYYY-MM-DD).
Date parse_date(const std::string& iso);

std::string format_date(const Date& d);

inline int date_year(const Date& d) {
    int y, m, day;
    civil_from_days(d.days_since_epoch, y, m, day);
    return y;
}

inline std::int64_t days_between(const Date& from, const Date& to) {
    return to.days_since_epoch - from.days_since_epoch;
}

}  // namespace forensics
