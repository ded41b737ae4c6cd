#pragma once

// Umbrella header: the full exact-invariant toolkit.

#include "hkinv/bigint.hpp"
#include "hkinv/rational.hpp"
#include "hkinv/polynomial.hpp"
#include "hkinv/series.hpp"
#include "hkinv/cyclotomic.hpp"
#include "hkinv/chern.hpp"
#include "hkinv/genus.hpp"
#include "hkinv/fujiki.hpp"
#include "hkinv/orbifold.hpp"
#include "hkinv/catalog.hpp"
#include "hkinv/graphs.hpp"
#include "hkinv/report.hpp"
#include "hkinv/reproduce.hpp"
