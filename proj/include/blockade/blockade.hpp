#pragma once

#include "blockade/core.hpp"
#include "blockade/correlations.hpp"
#include "blockade/entanglement.hpp"
#include "blockade/errors.hpp"
#include "blockade/evolution.hpp"
#include "blockade/liouville.hpp"
#include "blockade/observables.hpp"
#include "blockade/steady.hpp"
