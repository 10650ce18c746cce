#pragma once

// Adaptive piecewise-polynomial time series segmentation: O(1) range fits
// from prefix moments, an exact dynamic-programming segmenter, linear-time
// top-down heuristics, and evaluation / synthetic-data utilities.

#include "adaptseg/csv.hpp"
#include "adaptseg/dp.hpp"
#include "adaptseg/evaluate.hpp"
#include "adaptseg/io.hpp"
#include "adaptseg/method.hpp"
#include "adaptseg/polyfit.hpp"
#include "adaptseg/prefix_moments.hpp"
#include "adaptseg/series.hpp"
#include "adaptseg/synthetic.hpp"
#include "adaptseg/topdown.hpp"
