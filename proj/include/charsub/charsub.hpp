#pragma once

#include "charsub/bigint.hpp"
#include "charsub/density.hpp"
#include "charsub/dyadic.hpp"
#include "charsub/errors.hpp"
#include "charsub/experiments.hpp"
#include "charsub/lemma_lab.hpp"
#include "charsub/membership.hpp"
#include "charsub/parallel.hpp"
#include "charsub/rational.hpp"
#include "charsub/rng.hpp"
#include "charsub/selftest.hpp"
#include "charsub/seminorm.hpp"
#include "charsub/sequences.hpp"
#include "charsub/serialize.hpp"
