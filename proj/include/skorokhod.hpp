#ifndef SKOROKHOD_HPP
#define SKOROKHOD_HPP

#include "skorokhod/piecewise.hpp"
#include "skorokhod/turbo.hpp"
#include "skorokhod/free_space.hpp"
#include "skorokhod/metric.hpp"
#include "skorokhod/equivalence.hpp"
#include "skorokhod/completion.hpp"
#include "skorokhod/document.hpp"
#include "skorokhod/render.hpp"

#endif  // SKOROKHOD_HPP
