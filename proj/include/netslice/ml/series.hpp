#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace netslice::ml {

// Contiguous slice of a univariate hourly series (kWh).
struct SeriesWindow {
    std::vector<double> values;
    std::uint64_t start_index = 0;
    double sampling_interval_hours = 1.0;
    bool operator==(const SeriesWindow&) const = default;
};

// Min-max mapping into [0,1]. A constant series maps to 0.5 everywhere
// (and denormalizes back to the constant).
struct SeriesScaler {
    double min = 0.0;
    double max = 0.0;
    bool operator==(const SeriesScaler&) const = default;

    double normalize(double v) const {
        return max > min ? (v - min) / (max - min) : 0.5;
    }
    double denormalize(double u) const {
        return max > min ? min + u * (max - min) : min;
    }
};

SeriesScaler fit_scaler(const std::vector<double>& values);

// Mean squared element-wise difference. Throws usage_error on unequal or
// empty lengths.
double mse(const std::vector<double>& predicted, const std::vector<double>& actual);

// Energy trace file: `timestamp,kwh` with header, one row per hour.
SeriesWindow parse_energy_csv(const std::string& text, const std::string& origin);
SeriesWindow load_energy_csv(const std::string& path);
std::string format_energy_csv(const SeriesWindow& series);

} // namespace netslice::ml
