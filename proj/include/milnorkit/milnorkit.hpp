#pragma once

#include "milnorkit/error.hpp"
#include "milnorkit/field.hpp"
#include "milnorkit/series.hpp"
#include "milnorkit/forms.hpp"
#include "milnorkit/milnor.hpp"
#include "milnorkit/cycles.hpp"
#include "milnorkit/expr.hpp"
#include "milnorkit/random.hpp"
#include "milnorkit/verify.hpp"
#include "milnorkit/json_io.hpp"
