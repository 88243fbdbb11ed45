#pragma once

#include "nsbounds/pair.hpp"
#include "nsbounds/means.hpp"
#include "nsbounds/coefficients.hpp"
#include "nsbounds/kernels.hpp"
#include "nsbounds/constants.hpp"
#include "nsbounds/verify.hpp"
#include "nsbounds/report.hpp"
#include "nsbounds/version.hpp"
