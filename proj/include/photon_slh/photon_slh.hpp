#pragma once

#include "photon_slh/analytic.hpp"
#include "photon_slh/errors.hpp"
#include "photon_slh/io.hpp"
#include "photon_slh/operator.hpp"
#include "photon_slh/photon_transfer.hpp"
#include "photon_slh/pulse.hpp"
#include "photon_slh/slh_model.hpp"
