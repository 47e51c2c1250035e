#pragma once

#include "csv.hpp"
#include "eigensolve.hpp"
#include "error.hpp"
#include "extension.hpp"
#include "graph.hpp"
#include "hotspots.hpp"
#include "identities.hpp"
#include "report.hpp"
#include "spectral.hpp"
#include "svg.hpp"
#include "words.hpp"
#include "verify.hpp"
