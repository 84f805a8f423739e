// SPDX-License-Identifier: Apache-2.0
//
// Umbrella header for the qnt-star toolkit.
#pragma once

#include "qnt/database.hpp"
#include "qnt/distribution.hpp"
#include "qnt/dm_oracle.hpp"
#include "qnt/error.hpp"
#include "qnt/estimators.hpp"
#include "qnt/experiments.hpp"
#include "qnt/fisher.hpp"
#include "qnt/format.hpp"
#include "qnt/io.hpp"
#include "qnt/moments.hpp"
#include "qnt/network.hpp"
#include "qnt/rng.hpp"
#include "qnt/version.hpp"
