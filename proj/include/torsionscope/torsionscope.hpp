#pragma once

// Umbrella header: filtration construction under Euclidean and Finsler
// metrics, exact integer homology via Smith Normal Form, bad-prime
// certification and field persistence.

#include "torsionscope/build.hpp"
#include "torsionscope/complex.hpp"
#include "torsionscope/datasets.hpp"
#include "torsionscope/enclosing.hpp"
#include "torsionscope/errors.hpp"
#include "torsionscope/field.hpp"
#include "torsionscope/homology.hpp"
#include "torsionscope/integers.hpp"
#include "torsionscope/io.hpp"
#include "torsionscope/metric.hpp"
#include "torsionscope/obstruction.hpp"
#include "torsionscope/parallel.hpp"
#include "torsionscope/persistence.hpp"
#include "torsionscope/prime_guard.hpp"
#include "torsionscope/snf.hpp"
