#pragma once

// Umbrella header for the loadcast short-term load forecasting toolkit.

#include "loadcast/data.hpp"
#include "loadcast/domain.hpp"
#include "loadcast/elman.hpp"
#include "loadcast/errors.hpp"
#include "loadcast/eval.hpp"
#include "loadcast/features.hpp"
#include "loadcast/fis.hpp"
#include "loadcast/fnn.hpp"
#include "loadcast/forecaster.hpp"
#include "loadcast/fuzzy.hpp"
#include "loadcast/hopfield.hpp"
#include "loadcast/mlp.hpp"
#include "loadcast/model_io.hpp"
#include "loadcast/rbf.hpp"
#include "loadcast/rng.hpp"
#include "loadcast/timeutil.hpp"
#include "loadcast/train.hpp"
