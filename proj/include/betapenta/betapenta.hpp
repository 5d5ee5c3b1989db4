#pragma once
// Umbrella header.

#include "betapenta/automorphic.hpp"
#include "betapenta/faddeev.hpp"
#include "betapenta/family.hpp"
#include "betapenta/lca.hpp"
#include "betapenta/pentagon.hpp"
#include "betapenta/qdilog.hpp"
#include "betapenta/quad.hpp"
#include "betapenta/simplicial.hpp"
#include "betapenta/special.hpp"
#include "betapenta/suite.hpp"
