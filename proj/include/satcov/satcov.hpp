#pragma once

// Coverage and outage analysis for a dual-hop satellite -> cluster-head (FSO)
// -> UAV (RF) network over 3D hard-core deployments: closed-form engines plus
// an independent Monte-Carlo validator.

#include "satcov/common.hpp"
#include "satcov/config.hpp"
#include "satcov/curve.hpp"
#include "satcov/distance_dist.hpp"
#include "satcov/e2e.hpp"
#include "satcov/fso_channel.hpp"
#include "satcov/fso_coverage.hpp"
#include "satcov/geometry.hpp"
#include "satcov/io.hpp"
#include "satcov/mc.hpp"
#include "satcov/point_process.hpp"
#include "satcov/quadrature.hpp"
#include "satcov/rf_channel.hpp"
#include "satcov/rf_coverage.hpp"
#include "satcov/rng.hpp"
#include "satcov/specfun/bell.hpp"
#include "satcov/specfun/gamma.hpp"
#include "satcov/specfun/hyp2f1.hpp"
#include "satcov/specfun/meijer_fso.hpp"
#include "satcov/stats.hpp"
