#pragma once

#include "solarcast/core/errors.hpp"

namespace solarcast::data {

// Half-open day range [begin, end).
struct DayRange {
    int begin = 0;
    int end = 0;

    int n_days() const { return end - begin; }
    bool empty() const { return end <= begin; }
    bool contains(int day) const { return day >= begin && day < end; }

    bool operator==(const DayRange&) const = default;
};

struct SplitDays {
    DayRange train;
    DayRange test;
};

// Chronological split: the final test_days days are the test view, the rest
// the training view. The views partition the dataset's days.
inline SplitDays train_test_split(int total_days, int test_days) {
    if (test_days < 0)
        throw ConfigError("train_test_split: test_days must be >= 0");
    if (test_days >= total_days)
        throw ConfigError("train_test_split: test_days (" +
                          std::to_string(test_days) +
                          ") must be smaller than the dataset (" +
                          std::to_string(total_days) + " days)");
    return {{0, total_days - test_days}, {total_days - test_days, total_days}};
}

} // namespace solarcast::data
