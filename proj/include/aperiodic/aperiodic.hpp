// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "aperiodic/condition.hpp"
#include "aperiodic/construct.hpp"
#include "aperiodic/continued_fraction.hpp"
#include "aperiodic/conversions.hpp"
#include "aperiodic/counting.hpp"
#include "aperiodic/error.hpp"
#include "aperiodic/hyperbolic.hpp"
#include "aperiodic/interval.hpp"
#include "aperiodic/morse_thue.hpp"
#include "aperiodic/numeric.hpp"
#include "aperiodic/profile.hpp"
#include "aperiodic/recurrence.hpp"
#include "aperiodic/verify.hpp"
#include "aperiodic/word.hpp"
