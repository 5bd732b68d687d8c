#pragma once

#include "rendezvous/geometry.hpp"
#include "rendezvous/proxgraph.hpp"
#include "rendezvous/netcore.hpp"
#include "rendezvous/consensus.hpp"
#include "rendezvous/control.hpp"
