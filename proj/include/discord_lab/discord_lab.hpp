#pragma once

#include "discord_lab/linalg.hpp"
#include "discord_lab/states.hpp"
#include "discord_lab/measures.hpp"
#include "discord_lab/dynamics.hpp"
#include "discord_lab/experiments.hpp"
#include "discord_lab/state_io.hpp"
