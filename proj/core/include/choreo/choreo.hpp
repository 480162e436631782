#pragma once

// Umbrella header: the whole library.

#include "choreo/backend_http.hpp"
#include "choreo/backend_local.hpp"
#include "choreo/choreography.hpp"
#include "choreo/effect_program.hpp"
#include "choreo/errors.hpp"
#include "choreo/location.hpp"
#include "choreo/network.hpp"
#include "choreo/projection.hpp"
#include "choreo/wire.hpp"
