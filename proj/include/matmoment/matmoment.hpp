#pragma once

// Umbrella header for the truncated matrix moment problem toolkit:
// block Hankel positivity tests (Hamburger / Stieltjes / Hausdorff),
// minimal polynomials of matrix recurrences, and recovery of finite
// atomic representing matrix measures.

#include "matmoment/errors.hpp"
#include "matmoment/matrix.hpp"
#include "matmoment/sequence.hpp"
#include "matmoment/hankel.hpp"
#include "matmoment/polynomial.hpp"
#include "matmoment/vandermonde.hpp"
#include "matmoment/recurrence.hpp"
#include "matmoment/measure.hpp"
#include "matmoment/io.hpp"
