// Everything at once.
#pragma once

#include "cslab/abelian.hpp"
#include "cslab/cohomology.hpp"
#include "cslab/dynamical.hpp"
#include "cslab/extension.hpp"
#include "cslab/io.hpp"
#include "cslab/structures.hpp"
#include "cslab/wells.hpp"
