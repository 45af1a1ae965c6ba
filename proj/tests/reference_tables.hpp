#pragma once

// Reference grids as printed: 3-decimal MSPEs and bounds, 2-decimal widths
// in the nested comparisons, whole percentages for thresholds and width
// reductions. Shared by the planner tests and the acceptance suite.

#include <array>

namespace tep::test {

struct SingleModelRow {
    int n, p;
    double tau2, mspe, width, lower, upper;
};

struct ThresholdPctRow {
    int n, p;
    double tau2;
    int pct;
};

struct ComparisonPrinted {
    int p, n;
    double rtau2, tau2, mspe_p, mspe_2p, width_p, width_2p;
    int pct;
};

inline constexpr std::array<SingleModelRow, 18> kSingleModel{{
    {40, 1, 0.01, 0.018, 0.438, 0.001, 0.439},
    {40, 1, 0.0625, 0.071, 0.878, -0.219, 0.659},
    {40, 1, 0.25, 0.262, 1.685, -0.622, 1.062},
    {40, 3, 0.01, 0.023, 0.497, -0.028, 0.468},
    {40, 3, 0.0625, 0.077, 0.913, -0.236, 0.676},
    {40, 3, 0.25, 0.27, 1.711, -0.635, 1.075},
    {100, 1, 0.01, 0.013, 0.376, 0.032, 0.408},
    {100, 1, 0.0625, 0.066, 0.845, -0.203, 0.643},
    {100, 1, 0.25, 0.255, 1.661, -0.61, 1.05},
    {100, 3, 0.01, 0.015, 0.405, 0.018, 0.422},
    {100, 3, 0.0625, 0.068, 0.86, -0.21, 0.65},
    {100, 3, 0.25, 0.258, 1.672, -0.616, 1.056},
    {500, 1, 0.01, 0.011, 0.339, 0.051, 0.389},
    {500, 1, 0.0625, 0.063, 0.827, -0.194, 0.634},
    {500, 1, 0.25, 0.251, 1.648, -0.604, 1.044},
    {500, 3, 0.01, 0.011, 0.345, 0.047, 0.393},
    {500, 3, 0.0625, 0.064, 0.83, -0.195, 0.635},
    {500, 3, 0.25, 0.252, 1.65, -0.605, 1.045},
}};

inline constexpr std::array<ThresholdPctRow, 18> kThresholdPct{{
    {40, 1, 0.01, 100},
    {40, 1, 0.0625, 22},
    {40, 1, 0.25, 8},
    {40, 3, 0.01, 100},
    {40, 3, 0.0625, 46},
    {40, 3, 0.25, 16},
    {100, 1, 0.01, 50},
    {100, 1, 0.0625, 9},
    {100, 1, 0.25, 3},
    {100, 3, 0.01, 100},
    {100, 3, 0.0625, 20},
    {100, 3, 0.25, 7},
    {500, 1, 0.01, 10},
    {500, 1, 0.0625, 2},
    {500, 1, 0.25, 1},
    {500, 3, 0.01, 22},
    {500, 3, 0.0625, 4},
    {500, 3, 0.25, 1},
}};

inline constexpr std::array<ComparisonPrinted, 37> kComparisonP1{{
    {1, 40, 0.4, 0.0625, 0.071, 0.059, 0.88, 0.8, 9},
    {1, 40, 0.6, 0.0625, 0.071, 0.046, 0.88, 0.71, 19},
    {1, 40, 0.8, 0.0625, 0.071, 0.033, 0.88, 0.6, 32},
    {1, 40, 1.0, 0.0625, 0.071, 0.02, 0.88, 0.47, 47},
    {1, 40, 0.2, 0.25, 0.262, 0.23, 1.68, 1.58, 6},
    {1, 40, 0.4, 0.25, 0.262, 0.178, 1.68, 1.39, 18},
    {1, 40, 0.6, 0.25, 0.262, 0.125, 1.68, 1.16, 31},
    {1, 40, 0.8, 0.25, 0.262, 0.073, 1.68, 0.89, 47},
    {1, 40, 1.0, 0.25, 0.262, 0.02, 1.68, 0.47, 72},
    {1, 100, 0.6, 0.01, 0.013, 0.012, 0.38, 0.36, 4},
    {1, 100, 0.8, 0.01, 0.013, 0.01, 0.38, 0.33, 12},
    {1, 100, 1.0, 0.01, 0.013, 0.008, 0.38, 0.29, 22},
    {1, 100, 0.2, 0.0625, 0.066, 0.059, 0.85, 0.8, 5},
    {1, 100, 0.4, 0.0625, 0.066, 0.046, 0.85, 0.71, 16},
    {1, 100, 0.6, 0.0625, 0.066, 0.034, 0.85, 0.6, 29},
    {1, 100, 0.8, 0.0625, 0.066, 0.021, 0.85, 0.47, 44},
    {1, 100, 1.0, 0.0625, 0.066, 0.008, 0.85, 0.29, 65},
    {1, 100, 0.2, 0.25, 0.255, 0.212, 1.66, 1.51, 9},
    {1, 100, 0.4, 0.25, 0.255, 0.161, 1.66, 1.32, 21},
    {1, 100, 0.6, 0.25, 0.255, 0.11, 1.66, 1.09, 34},
    {1, 100, 0.8, 0.25, 0.255, 0.059, 1.66, 0.8, 52},
    {1, 100, 1.0, 0.25, 0.255, 0.008, 1.66, 0.29, 82},
    {1, 500, 0.2, 0.01, 0.011, 0.01, 0.34, 0.32, 5},
    {1, 500, 0.4, 0.01, 0.011, 0.008, 0.34, 0.29, 15},
    {1, 500, 0.6, 0.01, 0.011, 0.006, 0.34, 0.25, 27},
    {1, 500, 0.8, 0.01, 0.011, 0.004, 0.34, 0.2, 42},
    {1, 500, 1.0, 0.01, 0.011, 0.002, 0.34, 0.13, 61},
    {1, 500, 0.2, 0.0625, 0.063, 0.052, 0.83, 0.75, 9},
    {1, 500, 0.4, 0.0625, 0.063, 0.039, 0.83, 0.65, 21},
    {1, 500, 0.6, 0.0625, 0.063, 0.027, 0.83, 0.54, 35},
    {1, 500, 0.8, 0.0625, 0.063, 0.014, 0.83, 0.39, 53},
    {1, 500, 1.0, 0.0625, 0.063, 0.002, 0.83, 0.13, 84},
    {1, 500, 0.2, 0.25, 0.251, 0.202, 1.65, 1.48, 10},
    {1, 500, 0.4, 0.25, 0.251, 0.152, 1.65, 1.28, 22},
    {1, 500, 0.6, 0.25, 0.251, 0.102, 1.65, 1.05, 36},
    {1, 500, 0.8, 0.25, 0.251, 0.052, 1.65, 0.75, 55},
    {1, 500, 1.0, 0.25, 0.251, 0.002, 1.65, 0.13, 92},
}};

inline constexpr std::array<ComparisonPrinted, 32> kComparisonP3{{
    {3, 40, 0.6, 0.0625, 0.077, 0.068, 0.91, 0.85, 6},
    {3, 40, 0.8, 0.0625, 0.077, 0.054, 0.91, 0.76, 16},
    {3, 40, 1.0, 0.0625, 0.077, 0.04, 0.91, 0.66, 28},
    {3, 40, 0.2, 0.25, 0.27, 0.26, 1.71, 1.68, 2},
    {3, 40, 0.4, 0.25, 0.27, 0.205, 1.71, 1.49, 13},
    {3, 40, 0.6, 0.25, 0.27, 0.15, 1.71, 1.27, 26},
    {3, 40, 0.8, 0.25, 0.27, 0.095, 1.71, 1.01, 41},
    {3, 40, 1.0, 0.25, 0.27, 0.04, 1.71, 0.66, 62},
    {3, 100, 0.2, 0.0625, 0.068, 0.068, 0.86, 0.86, 0},
    {3, 100, 0.4, 0.0625, 0.068, 0.055, 0.86, 0.77, 10},
    {3, 100, 0.6, 0.0625, 0.068, 0.042, 0.86, 0.67, 22},
    {3, 100, 0.8, 0.0625, 0.068, 0.029, 0.86, 0.56, 35},
    {3, 100, 1.0, 0.0625, 0.068, 0.016, 0.86, 0.42, 52},
    {3, 100, 0.2, 0.25, 0.258, 0.224, 1.67, 1.56, 7},
    {3, 100, 0.4, 0.25, 0.258, 0.172, 1.67, 1.36, 18},
    {3, 100, 0.6, 0.25, 0.258, 0.12, 1.67, 1.14, 32},
    {3, 100, 0.8, 0.25, 0.258, 0.068, 1.67, 0.86, 49},
    {3, 100, 1.0, 0.25, 0.258, 0.016, 1.67, 0.42, 75},
    {3, 500, 0.4, 0.01, 0.011, 0.009, 0.35, 0.32, 8},
    {3, 500, 0.6, 0.01, 0.011, 0.007, 0.35, 0.28, 19},
    {3, 500, 0.8, 0.01, 0.011, 0.005, 0.35, 0.24, 31},
    {3, 500, 1.0, 0.01, 0.011, 0.003, 0.35, 0.19, 46},
    {3, 500, 0.2, 0.0625, 0.064, 0.054, 0.83, 0.76, 8},
    {3, 500, 0.4, 0.0625, 0.064, 0.041, 0.83, 0.67, 20},
    {3, 500, 0.6, 0.0625, 0.064, 0.028, 0.83, 0.55, 33},
    {3, 500, 0.8, 0.0625, 0.064, 0.016, 0.83, 0.41, 50},
    {3, 500, 1.0, 0.0625, 0.064, 0.003, 0.83, 0.19, 78},
    {3, 500, 0.2, 0.25, 0.252, 0.205, 1.65, 1.49, 10},
    {3, 500, 0.4, 0.25, 0.252, 0.154, 1.65, 1.29, 22},
    {3, 500, 0.6, 0.25, 0.252, 0.104, 1.65, 1.06, 36},
    {3, 500, 0.8, 0.25, 0.252, 0.054, 1.65, 0.76, 54},
    {3, 500, 1.0, 0.25, 0.252, 0.003, 1.65, 0.19, 89},
}};

} // namespace tep::test
