#ifndef EAMATCH_EAMATCH_HPP
#define EAMATCH_EAMATCH_HPP

#include "eamatch/alignment.hpp"
#include "eamatch/assign.hpp"
#include "eamatch/bench.hpp"
#include "eamatch/catalog.hpp"
#include "eamatch/error.hpp"
#include "eamatch/eval.hpp"
#include "eamatch/io.hpp"
#include "eamatch/similarity.hpp"
#include "eamatch/simmatrix.hpp"
#include "eamatch/stable.hpp"

#endif
