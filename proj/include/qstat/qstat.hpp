#pragma once

// Umbrella header for the qstat library.

#include "qstat/coupling.hpp"
#include "qstat/dataset.hpp"
#include "qstat/errors.hpp"
#include "qstat/escort.hpp"
#include "qstat/figures.hpp"
#include "qstat/fit.hpp"
#include "qstat/line_integral.hpp"
#include "qstat/maps.hpp"
#include "qstat/qcore.hpp"
#include "qstat/qft.hpp"
#include "qstat/qgaussian.hpp"
#include "qstat/qseq.hpp"
#include "qstat/quadrature.hpp"
#include "qstat/sampling.hpp"
#include "qstat/sde.hpp"
#include "qstat/selfcheck.hpp"
