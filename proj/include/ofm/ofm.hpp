#ifndef OFM_OFM_HPP
#define OFM_OFM_HPP

#include "ofm/adjacency.hpp"
#include "ofm/counting.hpp"
#include "ofm/ensemble.hpp"
#include "ofm/error.hpp"
#include "ofm/gluing.hpp"
#include "ofm/random.hpp"
#include "ofm/samplers.hpp"
#include "ofm/spectra.hpp"
#include "ofm/statistics.hpp"
#include "ofm/topology.hpp"

#endif // OFM_OFM_HPP
