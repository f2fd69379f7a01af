#pragma once

#include "flatact/screening/a9_chain.hpp"
#include "flatact/screening/catalog.hpp"
#include "flatact/screening/coset_table.hpp"
#include "flatact/screening/epimorphism.hpp"
#include "flatact/screening/fp_group.hpp"
#include "flatact/screening/low_index.hpp"
#include "flatact/screening/partitions.hpp"
#include "flatact/screening/rewriting.hpp"
