#pragma once

#include "casorati/errors.hpp"
#include "casorati/frame_core.hpp"
#include "casorati/invariants.hpp"
#include "casorati/sampling.hpp"
#include "casorati/hyperplane.hpp"
#include "casorati/oracle.hpp"
#include "casorati/extremizer.hpp"
#include "casorati/delta_casorati.hpp"
#include "casorati/quadratic_lemma.hpp"
#include "casorati/inequality_lab.hpp"
#include "casorati/gallery.hpp"
#include "casorati/report.hpp"
