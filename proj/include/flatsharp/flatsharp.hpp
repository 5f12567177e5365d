#ifndef FLATSHARP_FLATSHARP_HPP
#define FLATSHARP_FLATSHARP_HPP

#include "flatsharp/surfaces.hpp"
#include "flatsharp/spectrum.hpp"
#include "flatsharp/pleijel.hpp"
#include "flatsharp/eigenfunctions.hpp"
#include "flatsharp/nodal.hpp"
#include "flatsharp/verdict.hpp"
#include "flatsharp/report.hpp"

#endif  // FLATSHARP_FLATSHARP_HPP
