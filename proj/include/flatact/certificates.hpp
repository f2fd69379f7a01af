#pragma once

#include "flatact/certificates/a4.hpp"
#include "flatact/certificates/crystal.hpp"
#include "flatact/certificates/flat.hpp"
#include "flatact/certificates/jordan.hpp"
#include "flatact/certificates/json_io.hpp"
#include "flatact/certificates/report.hpp"
#include "flatact/certificates/torus.hpp"
