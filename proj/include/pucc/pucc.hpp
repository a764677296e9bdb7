#pragma once

#include "pucc/core.hpp"
#include "pucc/driver.hpp"
#include "pucc/energy.hpp"
#include "pucc/io.hpp"
#include "pucc/its.hpp"
#include "pucc/optimizer.hpp"
#include "pucc/params.hpp"
#include "pucc/tabu.hpp"
