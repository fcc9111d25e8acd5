#pragma once

// Everything in one include.

#include "tidd/value.hpp"
#include "tidd/errors.hpp"
#include "tidd/core.hpp"
#include "tidd/reduce.hpp"
#include "tidd/constant.hpp"
#include "tidd/ops.hpp"
#include "tidd/builders.hpp"
#include "tidd/linalg.hpp"
#include "tidd/analysis.hpp"
#include "tidd/oracle.hpp"
#include "tidd/expr.hpp"
#include "tidd/quantum.hpp"
