#pragma once

#include "kclosure/errors.hpp"
#include "kclosure/intmath.hpp"
#include "kclosure/gfarith.hpp"
#include "kclosure/curve.hpp"
#include "kclosure/autgroup.hpp"
#include "kclosure/action.hpp"
#include "kclosure/invariants.hpp"
#include "kclosure/subcover.hpp"
#include "kclosure/report.hpp"
