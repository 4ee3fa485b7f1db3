#ifndef OSCGAUSS_OSCGAUSS_HPP
#define OSCGAUSS_OSCGAUSS_HPP

#include "asymptotics.hpp"
#include "complex.hpp"
#include "errors.hpp"
#include "io.hpp"
#include "orthopoly.hpp"
#include "potential.hpp"
#include "precision.hpp"
#include "scurve.hpp"
#include "special.hpp"
#include "verify.hpp"

#endif  // OSCGAUSS_OSCGAUSS_HPP
