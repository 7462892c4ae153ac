#ifndef NEIGHBOR2VEC_NEIGHBOR2VEC_HPP
#define NEIGHBOR2VEC_NEIGHBOR2VEC_HPP

#include "embedding.hpp"
#include "error.hpp"
#include "evaluation.hpp"
#include "generators.hpp"
#include "graph.hpp"
#include "metrics.hpp"
#include "mlp.hpp"
#include "pipeline.hpp"
#include "propagation.hpp"
#include "random.hpp"
#include "sampler.hpp"
#include "sgns.hpp"

#endif
