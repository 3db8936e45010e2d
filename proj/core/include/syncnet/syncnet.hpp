#pragma once

#include "syncnet/diagnostics.hpp"
#include "syncnet/dynamics.hpp"
#include "syncnet/error.hpp"
#include "syncnet/graph.hpp"
#include "syncnet/matrix.hpp"
#include "syncnet/netsim.hpp"
#include "syncnet/parallel.hpp"
#include "syncnet/stability.hpp"
