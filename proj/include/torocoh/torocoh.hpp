#pragma once

#include "torocoh/scalars.hpp"
#include "torocoh/torus.hpp"
#include "torocoh/bundle.hpp"
#include "torocoh/spectral.hpp"
#include "torocoh/diophantine.hpp"
#include "torocoh/dbar.hpp"
#include "torocoh/classify.hpp"
