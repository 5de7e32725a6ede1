#pragma once

#include "asfem/assembly.hpp"
#include "asfem/elements.hpp"
#include "asfem/errors.hpp"
#include "asfem/geometry.hpp"
#include "asfem/mesh.hpp"
#include "asfem/potentials.hpp"
#include "asfem/quadrature.hpp"
#include "asfem/reference.hpp"
#include "asfem/solver.hpp"
