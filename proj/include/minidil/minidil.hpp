#pragma once

#include "minidil/classes.hpp"
#include "minidil/errors.hpp"
#include "minidil/intpoly.hpp"
#include "minidil/parallel.hpp"
#include "minidil/polyalgo.hpp"
#include "minidil/rational.hpp"
#include "minidil/roots.hpp"
#include "minidil/search.hpp"
#include "minidil/specmat.hpp"
#include "minidil/verify.hpp"
