#pragma once

#include "analysis.hpp"
#include "csv.hpp"
#include "determinant.hpp"
#include "eigen.hpp"
#include "error.hpp"
#include "hamiltonian.hpp"
#include "matrix.hpp"
#include "params.hpp"
#include "perturbation.hpp"
#include "spectrum.hpp"
#include "spin.hpp"
#include "validate.hpp"
