#pragma once

#include "expofuse/diffusion.hpp"
#include "expofuse/errors.hpp"
#include "expofuse/fusion.hpp"
#include "expofuse/image.hpp"
#include "expofuse/metrics.hpp"
#include "expofuse/parallel.hpp"
#include "expofuse/pnm.hpp"
#include "expofuse/pyramid.hpp"
#include "expofuse/weights.hpp"
