#pragma once

#include "b2toda/algebra.hpp"
#include "b2toda/cascade.hpp"
#include "b2toda/closedform.hpp"
#include "b2toda/error.hpp"
#include "b2toda/numeric.hpp"
#include "b2toda/orbit.hpp"
#include "b2toda/sinh.hpp"
#include "b2toda/weyl2.hpp"
