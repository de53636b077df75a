#pragma once

#include "kpc/bitset.hpp"
#include "kpc/bounds.hpp"
#include "kpc/campaign.hpp"
#include "kpc/core.hpp"
#include "kpc/error.hpp"
#include "kpc/generator.hpp"
#include "kpc/heuristics.hpp"
#include "kpc/io.hpp"
#include "kpc/lp_writer.hpp"
#include "kpc/solver.hpp"
