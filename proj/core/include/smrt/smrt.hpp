#pragma once

#include "smrt/config.hpp"
#include "smrt/error.hpp"
#include "smrt/forward.hpp"
#include "smrt/invert.hpp"
#include "smrt/phantom.hpp"
#include "smrt/polynomial.hpp"
#include "smrt/quadrature.hpp"
#include "smrt/range.hpp"
#include "smrt/smrt_file.hpp"
#include "smrt/specfun.hpp"
#include "smrt/transforms.hpp"
