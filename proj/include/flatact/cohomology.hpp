#pragma once

#include "flatact/cohomology/bar.hpp"
#include "flatact/cohomology/cyclic.hpp"
#include "flatact/cohomology/extension.hpp"
#include "flatact/cohomology/maps.hpp"
#include "flatact/cohomology/module.hpp"
#include "flatact/cohomology/torsion.hpp"
