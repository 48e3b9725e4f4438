#pragma once

#include <hurwitzkit/complex_geometry.hpp>
#include <hurwitzkit/contraction.hpp>
#include <hurwitzkit/covering_maps.hpp>
#include <hurwitzkit/density_engine.hpp>
#include <hurwitzkit/domain_catalog.hpp>
#include <hurwitzkit/error.hpp>
#include <hurwitzkit/extremal_bounds.hpp>
#include <hurwitzkit/geodesic_solver.hpp>
#include <hurwitzkit/verify.hpp>
