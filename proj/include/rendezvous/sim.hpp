#pragma once

#include "rendezvous/sim/scenario.hpp"
#include "rendezvous/sim/run.hpp"
#include "rendezvous/sim/io.hpp"
#include "rendezvous/sim/sweep.hpp"
