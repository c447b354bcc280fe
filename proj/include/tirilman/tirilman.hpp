#ifndef TIRILMAN_TIRILMAN_HPP
#define TIRILMAN_TIRILMAN_HPP

#include "tirilman/block.hpp"
#include "tirilman/cache.hpp"
#include "tirilman/checks.hpp"
#include "tirilman/config.hpp"
#include "tirilman/dual.hpp"
#include "tirilman/error.hpp"
#include "tirilman/io.hpp"
#include "tirilman/lp.hpp"
#include "tirilman/norm.hpp"
#include "tirilman/params.hpp"
#include "tirilman/prop9.hpp"
#include "tirilman/report.hpp"
#include "tirilman/rng.hpp"
#include "tirilman/sampling.hpp"
#include "tirilman/suites.hpp"
#include "tirilman/tree.hpp"
#include "tirilman/vector.hpp"
#include "tirilman/witness.hpp"

#endif  // TIRILMAN_TIRILMAN_HPP
