#ifndef BSIDEAL_BSIDEAL_HPP
#define BSIDEAL_BSIDEAL_HPP

#include "bsideal/error.hpp"
#include "bsideal/germ.hpp"
#include "bsideal/ideal_geometry.hpp"
#include "bsideal/io.hpp"
#include "bsideal/linsolve.hpp"
#include "bsideal/parser.hpp"
#include "bsideal/pipeline.hpp"
#include "bsideal/polynomial.hpp"
#include "bsideal/snc.hpp"
#include "bsideal/solver.hpp"
#include "bsideal/torus.hpp"
#include "bsideal/univariate.hpp"
#include "bsideal/weyl.hpp"

#endif  // BSIDEAL_BSIDEAL_HPP
