#pragma once

// Umbrella header for the solarcast library: hierarchical regional solar
// forecasting with HTCNNs, classical baselines, a synthetic data generator,
// and the evaluation harness.

#include "solarcast/core/csv.hpp"
#include "solarcast/core/errors.hpp"
#include "solarcast/core/kvconfig.hpp"
#include "solarcast/core/rng.hpp"
#include "solarcast/data/dataset.hpp"
#include "solarcast/data/dataset_io.hpp"
#include "solarcast/data/features.hpp"
#include "solarcast/data/kmeans.hpp"
#include "solarcast/data/scaler.hpp"
#include "solarcast/data/series.hpp"
#include "solarcast/data/split.hpp"
#include "solarcast/data/synthetic.hpp"
#include "solarcast/eval/mannwhitney.hpp"
#include "solarcast/eval/metrics.hpp"
#include "solarcast/eval/report.hpp"
#include "solarcast/forecast/artifacts.hpp"
#include "solarcast/forecast/linear_ar.hpp"
#include "solarcast/forecast/seasonal_naive.hpp"
#include "solarcast/forecast/strategies.hpp"
#include "solarcast/nn/adam.hpp"
#include "solarcast/nn/builders.hpp"
#include "solarcast/nn/conv.hpp"
#include "solarcast/nn/gradcheck.hpp"
#include "solarcast/nn/init.hpp"
#include "solarcast/nn/layer.hpp"
#include "solarcast/nn/loss.hpp"
#include "solarcast/nn/lstm.hpp"
#include "solarcast/nn/network.hpp"
#include "solarcast/nn/params_io.hpp"
#include "solarcast/nn/tensor.hpp"
#include "solarcast/nn/train.hpp"
