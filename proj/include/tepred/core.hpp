#pragma once

#include <tepred/core/distributions.hpp>
#include <tepred/core/effects.hpp>
#include <tepred/core/linalg.hpp>
#include <tepred/core/population.hpp>
#include <tepred/core/prediction_model.hpp>
#include <tepred/core/regression.hpp>
#include <tepred/core/specs.hpp>
#include <tepred/error.hpp>
