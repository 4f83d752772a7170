#ifndef NCGERM_NCGERM_HPP
#define NCGERM_NCGERM_HPP

#include "ncgerm/error.hpp"
#include "ncgerm/scalar.hpp"
#include "ncgerm/matrix.hpp"
#include "ncgerm/linalg.hpp"
#include "ncgerm/parallel.hpp"
#include "ncgerm/freealg.hpp"
#include "ncgerm/multimap.hpp"
#include "ncgerm/jet.hpp"
#include "ncgerm/structure.hpp"
#include "ncgerm/lac.hpp"
#include "ncgerm/hermite.hpp"
#include "ncgerm/propagate.hpp"
#include "ncgerm/generic.hpp"
#include "ncgerm/mero.hpp"

#endif // NCGERM_NCGERM_HPP
