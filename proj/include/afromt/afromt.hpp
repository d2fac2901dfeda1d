#ifndef AFROMT_AFROMT_HPP
#define AFROMT_AFROMT_HPP

#include "afromt/benchmark.hpp"
#include "afromt/corpus.hpp"
#include "afromt/error.hpp"
#include "afromt/eval_harness.hpp"
#include "afromt/fixtures.hpp"
#include "afromt/lang_registry.hpp"
#include "afromt/metrics.hpp"
#include "afromt/rng.hpp"
#include "afromt/subword.hpp"
#include "afromt/validate.hpp"
#include "afromt/version.hpp"

#endif  // AFROMT_AFROMT_HPP
