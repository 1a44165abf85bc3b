#pragma once

#include "wnc/circle.hpp"
#include "wnc/donsker.hpp"
#include "wnc/errors.hpp"
#include "wnc/function_element.hpp"
#include "wnc/hermite.hpp"
#include "wnc/local_time.hpp"
#include "wnc/mc.hpp"
#include "wnc/product.hpp"
#include "wnc/quadrature.hpp"
#include "wnc/rng.hpp"
#include "wnc/series.hpp"
#include "wnc/ufunctional.hpp"
